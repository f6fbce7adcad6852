#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "ppmgm/permutation.hpp"

namespace ppmgm {

// Fraction of indices on which x and y agree.
double overlap(const Permutation& x, const Permutation& y);

// ||X - Y||_F, computed from the agreement count: sqrt(2 (n - agreements)).
double frobenius_seed_distance(const Permutation& x, const Permutation& y);

// (1/384) (1 - s^2) / (1 + 2 s sqrt(1 - s^2)), sigma in [0, 1).
double c_sigma(double sigma);

// (9/410)^2 (1 - sigma^2), sigma in [0, 1).
double kappa(double sigma);

struct BoundReport {
  double theta = 0.0;
  double sigma = 0.0;
  std::size_t n = 0;
  double raw = 0.0;      // may be negative (vacuous bound)
  double clamped = 0.0;  // raw clipped to [0, 1]
};

// Largest seed radius theta = sqrt(2 (1 - 10/n)) covered by the one-step bounds.
double max_theta(std::size_t n);

// 1 - 5 n^2 exp(-c(sigma) (1 - theta^2/2)^2 n). Needs n >= 10 and
// 0 <= theta <= max_theta(n); throws kDomain otherwise.
BoundReport one_iteration_bound(std::size_t n, double theta, double sigma);

// 1 - 16 r n exp(-c(sigma) (1 - theta^2/2)^2 n), 1 <= r <= n.
BoundReport partial_recovery_bound(std::size_t n, double theta, double sigma, std::size_t r);

// C_ii > C_ij for every j != i, in every row.
bool is_diag_dominant(const Eigen::MatrixXd& c);

// C_ii strictly exceeds every other entry of row i and of column i.
bool is_row_col_dominant(const Eigen::MatrixXd& c, std::size_t i);

// E[C_ij] for C = A X A with A a GOE matrix:
// s_x + 1{x(i) = i}/n on the diagonal, 1{x(j) = i}/n off it.
double expected_power_step_entry(const Permutation& x, std::size_t i, std::size_t j);

}  // namespace ppmgm
