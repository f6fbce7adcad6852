#pragma once

#include <cstddef>
#include <variant>

#include "ppmgm/symmetric_matrix.hpp"

namespace ppmgm {

// 1{|M_ij| >= tau}.
struct Binarize {
  double tau = 0.0;
};

// M_ij 1{|M_ij| >= tau}.
struct HardThreshold {
  double tau = 0.0;
};

// M_ij kept when |M_ij| is among the k largest magnitudes of row i or of
// row j (ties to the smaller column index).
struct TopK {
  std::size_t k = 1;
};

using SparsifyScheme = std::variant<Binarize, HardThreshold, TopK>;

SymmetricMatrix apply_scheme(const SymmetricMatrix& m, const SparsifyScheme& scheme);

// Default neighbourhood size ceil(log n).
std::size_t default_top_k(std::size_t n);

// Threshold tau with 2 Phi(-tau sqrt(n)) = p, i.e. the level at which a GOE
// off-diagonal entry has P(|A_ij| >= tau) = p. Requires 0 < p <= 1.
double tau_for_density(double p, std::size_t n);

struct DensityRange {
  double lo = 0.0;
  double hi = 0.0;
  bool feasible = false;
};

// [(1 + eps) log n / n, n^(1 / (R log log n) - 1)]. Requires n >= 3.
DensityRange density_range(std::size_t n, double epsilon, double r_const = 1.0);

// Standard normal CDF and quantile.
double normal_cdf(double x);
double normal_quantile(double p);

}  // namespace ppmgm
