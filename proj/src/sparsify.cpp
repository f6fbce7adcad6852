#include "ppmgm/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "ppmgm/error.hpp"

namespace ppmgm {
namespace {

void check_tau(double tau) {
  if (!(tau >= 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "tau must be non-negative");
  }
}

SymmetricMatrix threshold(const SymmetricMatrix& m, double tau, bool binary) {
  check_tau(tau);
  Eigen::MatrixXd out = m.dense();
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      const bool keep = std::abs(out(i, j)) >= tau;
      out(i, j) = keep ? (binary ? 1.0 : out(i, j)) : 0.0;
    }
  }
  return SymmetricMatrix::from_dense(std::move(out));
}

SymmetricMatrix top_k(const SymmetricMatrix& m, std::size_t k) {
  const std::size_t n = m.size();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidParameter,
                "k must lie in [1, n], got k = " + std::to_string(k) + ", n = " + std::to_string(n));
  }
  std::vector<bool> keep(n * n, false);  // keep[i * n + j]: j is top-k in row i
  std::vector<std::uint32_t> cols(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::iota(cols.begin(), cols.end(), std::uint32_t{0});
    auto magnitude = [&](std::uint32_t j) { return std::abs(m(i, j)); };
    std::partial_sort(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(k), cols.end(),
                      [&](std::uint32_t a, std::uint32_t b) {
                        const double ma = magnitude(a), mb = magnitude(b);
                        if (ma != mb) return ma > mb;
                        return a < b;
                      });
    for (std::size_t t = 0; t < k; ++t) keep[i * n + cols[t]] = true;
  }
  SymmetricMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (keep[i * n + j] || keep[j * n + i]) out.set(i, j, m(i, j));
    }
  }
  return out;
}

}  // namespace

SymmetricMatrix apply_scheme(const SymmetricMatrix& m, const SparsifyScheme& scheme) {
  if (const auto* b = std::get_if<Binarize>(&scheme)) return threshold(m, b->tau, true);
  if (const auto* h = std::get_if<HardThreshold>(&scheme)) return threshold(m, h->tau, false);
  return top_k(m, std::get<TopK>(scheme).k);
}

std::size_t default_top_k(std::size_t n) {
  if (n == 0) return 0;
  const auto k = static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n))));
  return std::clamp<std::size_t>(k, 1, n);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Acklam's rational approximation (relative error about 1e-9) followed by one
// Halley step against erfc, which brings it to full double precision.
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -HUGE_VAL;
    if (p == 1.0) return HUGE_VAL;
    throw Error(ErrorCode::kInvalidParameter, "quantile needs p in [0, 1]");
  }
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

double tau_for_density(double p, std::size_t n) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "density p must lie in (0, 1]");
  }
  if (n == 0) throw Error(ErrorCode::kInvalidParameter, "n must be positive");
  // Phi^{-1}(p / 2) <= 0 for p <= 1.
  return std::fabs(normal_quantile(p / 2.0)) / std::sqrt(static_cast<double>(n));
}

DensityRange density_range(std::size_t n, double epsilon, double r_const) {
  if (n < 3) throw Error(ErrorCode::kInvalidParameter, "density range needs n >= 3");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::kInvalidParameter, "epsilon must be positive");
  if (!(r_const > 0.0)) throw Error(ErrorCode::kInvalidParameter, "R must be positive");
  const double nn = static_cast<double>(n);
  const double log_n = std::log(nn);
  DensityRange range;
  range.lo = (1.0 + epsilon) * log_n / nn;
  range.hi = std::pow(nn, 1.0 / (r_const * std::log(log_n)) - 1.0);
  range.feasible = range.lo < range.hi;
  return range;
}

}  // namespace ppmgm
