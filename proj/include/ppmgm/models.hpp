#pragma once

#include <cstddef>
#include <variant>

#include "ppmgm/permutation.hpp"
#include "ppmgm/rng.hpp"
#include "ppmgm/symmetric_matrix.hpp"

namespace ppmgm {

// Correlated Gaussian Wigner model W(n, sigma, x*).
struct CgwModel {
  double sigma = 0.0;
};

// Correlated Erdos-Renyi model G(n, q, s, x*).
struct CerModel {
  double q = 0.5;
  double s = 1.0;
};

using NoiseModel = std::variant<CgwModel, CerModel>;

// Throws kInvalidParameter when the model parameters are out of range.
void validate(const NoiseModel& model);

struct CorrelatedPair {
  SymmetricMatrix a;
  SymmetricMatrix b;
  Permutation ground_truth;
  NoiseModel model;
};

// GOE sample: off-diagonal N(0, 1/n), diagonal N(0, 2/n).
SymmetricMatrix sample_goe(std::size_t n, RngStream& rng);

// B[x*(i)][x*(j)] = sqrt(1 - sigma^2) A_ij + sigma Z_ij with Z an independent
// GOE sample. A is drawn from `a_rng`, Z from `noise_rng`.
CorrelatedPair sample_cgw(std::size_t n, double sigma, const Permutation& xstar,
                          RngStream& a_rng, RngStream& noise_rng);
CorrelatedPair sample_cgw(std::size_t n, double sigma, const Permutation& xstar,
                          RngStream& rng);

// A ~ G(n, q) with zero diagonal; conditionally on A, B[x*(i)][x*(j)] is
// Bern(s) where A_ij = 1 and Bern(q (1 - s) / (1 - q)) where A_ij = 0.
CorrelatedPair sample_cer(std::size_t n, double q, double s, const Permutation& xstar,
                          RngStream& rng);

// Fisher-Yates.
Permutation sample_permutation_uniform(std::size_t n, RngStream& rng);

// Uniform among permutations y with exactly m indices where y(i) == xstar(i):
// an m-subset is kept, the complement gets a uniform derangement relative to
// xstar. m == n - 1 is infeasible.
Permutation sample_seed_with_overlap(const Permutation& xstar, std::size_t m, RngStream& rng);

}  // namespace ppmgm
