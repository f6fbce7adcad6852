#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ppmgm/permutation.hpp"
#include "ppmgm/symmetric_matrix.hpp"

namespace ppmgm {

/// Greedy maximum weight matching (the projection tau onto permutations).
///
/// Repeatedly picks the largest entry (i, j) among unmatched rows and columns
/// and sets pi(i) = j. Ties go to the smallest row index, then the smallest
/// column index. Runs in O(n^2 log n): each row keeps its columns sorted and a
/// heap over rows holds each row's best remaining candidate.
///
/// Throws kInvalidInput for non-square or non-finite input.
Permutation gmwm(const Eigen::MatrixXd& c);

/// C = A X B for the matrix form X of x. A X is formed by moving columns, so
/// only one dense product is performed; B (x) A is never built.
Eigen::MatrixXd power_step(const SymmetricMatrix& a, const SymmetricMatrix& b, const Permutation& x);

SymmetricMatrix remove_diagonal(const SymmetricMatrix& m);

/// sum_ij A_ij B_x(i)x(j).
double qap_objective(const SymmetricMatrix& a, const SymmetricMatrix& b, const Permutation& x);

/// Exhaustive maximiser of qap_objective; ties resolve to the
/// lexicographically smallest permutation. Limited to n <= 9.
Permutation brute_force_qap(const SymmetricMatrix& a, const SymmetricMatrix& b);

inline constexpr std::size_t kBruteForceMaxN = 9;

struct PpmOptions {
  std::size_t max_iterations = 1;
  bool remove_diagonal = false;
  bool early_stop_on_fixpoint = false;
};

struct MatchResult {
  Permutation estimate;
  std::size_t iterations_run = 0;
  // Overlap with the ground truth after each iteration; empty without one.
  std::vector<double> trace;
  bool converged_early = false;
};

/// Projected power method: x_{k+1} = gmwm(A' X_k B'), k = 0..N-1, where A', B'
/// have their diagonals zeroed iff opts.remove_diagonal.
MatchResult ppmgm(const SymmetricMatrix& a, const SymmetricMatrix& b, const Permutation& x0,
                  const PpmOptions& opts,
                  const std::optional<Permutation>& ground_truth = std::nullopt);

}  // namespace ppmgm
