#include "ppmgm/models.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ppmgm/error.hpp"

namespace ppmgm {
namespace {

void check_sigma(double sigma) {
  if (!(sigma >= 0.0 && sigma < 1.0)) {
    throw Error(ErrorCode::kInvalidParameter,
                "sigma must lie in [0, 1), got " + std::to_string(sigma));
  }
}

void check_ground_truth(std::size_t n, const Permutation& xstar) {
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "n must be positive");
  if (xstar.size() != n) {
    throw Error(ErrorCode::kInvalidDimension, "ground truth has size " +
                                                  std::to_string(xstar.size()) + ", expected " +
                                                  std::to_string(n));
  }
}

}  // namespace

void validate(const NoiseModel& model) {
  if (const auto* cgw = std::get_if<CgwModel>(&model)) {
    check_sigma(cgw->sigma);
    return;
  }
  const auto& cer = std::get<CerModel>(model);
  if (!(cer.q > 0.0 && cer.q < 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "q must lie in (0, 1)");
  }
  if (!(cer.s >= 0.0 && cer.s <= 1.0)) {
    throw Error(ErrorCode::kInvalidParameter, "s must lie in [0, 1]");
  }
  if (cer.q * (1.0 - cer.s) > 1.0 - cer.q) {
    throw Error(ErrorCode::kInvalidParameter, "q (1 - s) / (1 - q) exceeds 1");
  }
}

SymmetricMatrix sample_goe(std::size_t n, RngStream& rng) {
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "n must be positive");
  const double off = std::sqrt(1.0 / static_cast<double>(n));
  const double diag = std::sqrt(2.0 / static_cast<double>(n));
  const auto k = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    m(i, i) = rng.normal(diag);
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const double v = rng.normal(off);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return SymmetricMatrix::from_dense(std::move(m));
}

CorrelatedPair sample_cgw(std::size_t n, double sigma, const Permutation& xstar,
                          RngStream& a_rng, RngStream& noise_rng) {
  check_sigma(sigma);
  check_ground_truth(n, xstar);
  SymmetricMatrix a = sample_goe(n, a_rng);
  const SymmetricMatrix z = sample_goe(n, noise_rng);
  const double keep = std::sqrt(1.0 - sigma * sigma);

  const auto k = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd b(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto bj = static_cast<Eigen::Index>(xstar(static_cast<std::size_t>(j)));
    for (Eigen::Index i = 0; i < k; ++i) {
      const auto bi = static_cast<Eigen::Index>(xstar(static_cast<std::size_t>(i)));
      b(bi, bj) = keep * a.dense()(i, j) + sigma * z.dense()(i, j);
    }
  }
  return CorrelatedPair{std::move(a), SymmetricMatrix::from_dense(std::move(b)), xstar,
                        CgwModel{sigma}};
}

CorrelatedPair sample_cgw(std::size_t n, double sigma, const Permutation& xstar, RngStream& rng) {
  return sample_cgw(n, sigma, xstar, rng, rng);
}

CorrelatedPair sample_cer(std::size_t n, double q, double s, const Permutation& xstar,
                          RngStream& rng) {
  const CerModel model{q, s};
  validate(model);
  check_ground_truth(n, xstar);
  const double p_edge = s;
  const double p_non_edge = q * (1.0 - s) / (1.0 - q);

  SymmetricMatrix a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.bernoulli(q)) a.set(i, j, 1.0);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool edge = rng.bernoulli(a(i, j) == 1.0 ? p_edge : p_non_edge);
      if (edge) b.set(xstar(i), xstar(j), 1.0);
    }
  }
  return CorrelatedPair{std::move(a), std::move(b), xstar, model};
}

Permutation sample_permutation_uniform(std::size_t n, RngStream& rng) {
  if (n == 0) throw Error(ErrorCode::kInvalidDimension, "n must be positive");
  std::vector<std::uint32_t> map(n);
  std::iota(map.begin(), map.end(), std::uint32_t{0});
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(map[i], map[rng.below(i + 1)]);
  }
  return Permutation(std::move(map));
}

Permutation sample_seed_with_overlap(const Permutation& xstar, std::size_t m, RngStream& rng) {
  const std::size_t n = xstar.size();
  if (m > n) {
    throw Error(ErrorCode::kInfeasibleOverlap,
                "overlap count " + std::to_string(m) + " exceeds n = " + std::to_string(n));
  }
  if (m + 1 == n) {
    throw Error(ErrorCode::kInfeasibleOverlap, "no permutation has exactly n - 1 fixed points");
  }

  // Partial shuffle: the first m slots are the agreement set.
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::uint32_t{0});
  for (std::size_t i = 0; i < m; ++i) {
    std::swap(idx[i], idx[i + rng.below(n - i)]);
  }

  std::vector<std::uint32_t> map(n);
  for (std::size_t i = 0; i < m; ++i) map[idx[i]] = xstar(idx[i]);

  const std::size_t d = n - m;
  if (d > 0) {
    std::vector<std::uint32_t> shuffle(d);
    for (;;) {
      std::iota(shuffle.begin(), shuffle.end(), std::uint32_t{0});
      for (std::size_t t = d - 1; t > 0; --t) std::swap(shuffle[t], shuffle[rng.below(t + 1)]);
      bool derangement = true;
      for (std::size_t t = 0; t < d && derangement; ++t) derangement = shuffle[t] != t;
      if (derangement) break;
    }
    for (std::size_t t = 0; t < d; ++t) map[idx[m + t]] = xstar(idx[m + shuffle[t]]);
  }
  return Permutation(std::move(map));
}

}  // namespace ppmgm
