#include "ppmgm/permutation.hpp"

#include <numeric>
#include <string>

#include "ppmgm/error.hpp"

namespace ppmgm {

Permutation::Permutation(std::vector<std::uint32_t> map) : map_(std::move(map)) {
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t i = 0; i < map_.size(); ++i) {
    const auto v = map_[i];
    if (v >= map_.size() || seen[v]) {
      throw Error(ErrorCode::kInvalidInput,
                  "not a permutation: value " + std::to_string(v) + " at index " +
                      std::to_string(i));
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  Permutation p;
  p.map_.resize(n);
  std::iota(p.map_.begin(), p.map_.end(), std::uint32_t{0});
  return p;
}

Permutation Permutation::from_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kInvalidInput, "permutation matrix must be square");
  }
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<std::uint32_t> map(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (v == 1.0) {
        map[i] = static_cast<std::uint32_t>(j);
        ++ones;
      } else if (v != 0.0) {
        throw Error(ErrorCode::kInvalidInput, "permutation matrix entries must be 0 or 1");
      }
    }
    if (ones != 1) {
      throw Error(ErrorCode::kInvalidInput, "row " + std::to_string(i) + " has " +
                                                std::to_string(ones) + " ones");
    }
  }
  return Permutation(std::move(map));
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.map_.resize(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv.map_[map_[i]] = static_cast<std::uint32_t>(i);
  return inv;
}

Eigen::MatrixXd Permutation::matrix() const {
  const auto n = static_cast<Eigen::Index>(map_.size());
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) x(i, map_[static_cast<std::size_t>(i)]) = 1.0;
  return x;
}

std::size_t Permutation::fixed_points() const noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < map_.size(); ++i) count += (map_[i] == i);
  return count;
}

Permutation compose(const Permutation& f, const Permutation& g) {
  if (f.size() != g.size()) throw Error(ErrorCode::kInvalidDimension, "compose: size mismatch");
  std::vector<std::uint32_t> map(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) map[i] = f(g(i));
  return Permutation(std::move(map));
}

std::size_t agreements(const Permutation& x, const Permutation& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kInvalidDimension, "permutations have different sizes");
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) count += (x(i) == y(i));
  return count;
}

}  // namespace ppmgm
