#include "ppmgm/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppmgm/error.hpp"

namespace ppmgm {
namespace {

void check_sigma(double sigma) {
  if (!(sigma >= 0.0 && sigma < 1.0)) {
    throw Error(ErrorCode::kDomain, "sigma must lie in [0, 1), got " + std::to_string(sigma));
  }
}

void check_square(const Eigen::MatrixXd& c) {
  if (c.rows() != c.cols()) throw Error(ErrorCode::kInvalidInput, "matrix is not square");
}

double decay(std::size_t n, double theta, double sigma) {
  const double gap = 1.0 - theta * theta / 2.0;
  return std::exp(-c_sigma(sigma) * gap * gap * static_cast<double>(n));
}

void check_one_step_hypotheses(std::size_t n, double theta, double sigma) {
  check_sigma(sigma);
  if (n < 10) throw Error(ErrorCode::kDomain, "the one-step bounds need n >= 10");
  if (!(theta >= 0.0 && theta <= max_theta(n))) {
    throw Error(ErrorCode::kDomain, "theta must lie in [0, sqrt(2 (1 - 10/n))]");
  }
}

BoundReport make_report(std::size_t n, double theta, double sigma, double raw) {
  return BoundReport{theta, sigma, n, raw, std::clamp(raw, 0.0, 1.0)};
}

}  // namespace

double overlap(const Permutation& x, const Permutation& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kInvalidDimension, "overlap: permutations have different sizes");
  }
  if (x.size() == 0) return 1.0;
  return static_cast<double>(agreements(x, y)) / static_cast<double>(x.size());
}

double frobenius_seed_distance(const Permutation& x, const Permutation& y) {
  const std::size_t same = agreements(x, y);
  return std::sqrt(2.0 * static_cast<double>(x.size() - same));
}

double c_sigma(double sigma) {
  check_sigma(sigma);
  const double rest = 1.0 - sigma * sigma;
  return rest / (1.0 + 2.0 * sigma * std::sqrt(rest)) / 384.0;
}

double kappa(double sigma) {
  check_sigma(sigma);
  const double ratio = 9.0 / 410.0;
  return ratio * ratio * (1.0 - sigma * sigma);
}

double max_theta(std::size_t n) {
  return std::sqrt(2.0 * (1.0 - 10.0 / static_cast<double>(n)));
}

BoundReport one_iteration_bound(std::size_t n, double theta, double sigma) {
  check_one_step_hypotheses(n, theta, sigma);
  const double nn = static_cast<double>(n);
  return make_report(n, theta, sigma, 1.0 - 5.0 * nn * nn * decay(n, theta, sigma));
}

BoundReport partial_recovery_bound(std::size_t n, double theta, double sigma, std::size_t r) {
  check_one_step_hypotheses(n, theta, sigma);
  if (r < 1 || r > n) throw Error(ErrorCode::kDomain, "r must lie in [1, n]");
  const double raw =
      1.0 - 16.0 * static_cast<double>(r) * static_cast<double>(n) * decay(n, theta, sigma);
  return make_report(n, theta, sigma, raw);
}

bool is_diag_dominant(const Eigen::MatrixXd& c) {
  check_square(c);
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      if (j != i && !(c(i, i) > c(i, j))) return false;
    }
  }
  return true;
}

bool is_row_col_dominant(const Eigen::MatrixXd& c, std::size_t i) {
  check_square(c);
  if (i >= static_cast<std::size_t>(c.rows())) {
    throw Error(ErrorCode::kIndexOutOfRange, "index " + std::to_string(i) + " out of range");
  }
  const auto d = static_cast<Eigen::Index>(i);
  for (Eigen::Index k = 0; k < c.rows(); ++k) {
    if (k == d) continue;
    if (!(c(d, d) > c(d, k)) || !(c(d, d) > c(k, d))) return false;
  }
  return true;
}

double expected_power_step_entry(const Permutation& x, std::size_t i, std::size_t j) {
  const std::size_t n = x.size();
  if (i >= n || j >= n) {
    throw Error(ErrorCode::kIndexOutOfRange, "index out of range for n = " + std::to_string(n));
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  if (i == j) {
    const double s_x = static_cast<double>(x.fixed_points()) * inv_n;
    return s_x + (x(i) == i ? inv_n : 0.0);
  }
  return x(j) == i ? inv_n : 0.0;
}

}  // namespace ppmgm
