#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ppmgm {

// A bijection x on {0, ..., n-1}, stored as map[i] = x(i).
//
// Matrix form (used everywhere in the library): X(i, x(i)) = 1. With this
// convention sum_ij A_ij B_x(i)x(j) = <A, X B X^T>, and a graph B relabeled
// by x, B[x(i)][x(j)] = A[i][j], equals X^T A X.
class Permutation {
 public:
  Permutation() = default;
  // Throws kInvalidInput unless map is a bijection on {0, ..., map.size()-1}.
  explicit Permutation(std::vector<std::uint32_t> map);

  static Permutation identity(std::size_t n);
  // Reads a 0/1 permutation matrix in the X(i, x(i)) = 1 convention.
  static Permutation from_matrix(const Eigen::MatrixXd& m);

  std::size_t size() const noexcept { return map_.size(); }
  std::uint32_t operator()(std::size_t i) const { return map_[i]; }
  std::uint32_t operator[](std::size_t i) const { return map_[i]; }
  std::span<const std::uint32_t> map() const noexcept { return map_; }

  Permutation inverse() const;
  Eigen::MatrixXd matrix() const;
  std::size_t fixed_points() const noexcept;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> map_;
};

// (f o g)(i) = f(g(i)).
Permutation compose(const Permutation& f, const Permutation& g);

// Number of indices i with x(i) == y(i).
std::size_t agreements(const Permutation& x, const Permutation& y);

}  // namespace ppmgm
