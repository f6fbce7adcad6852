#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace ppmgm {

// Dense real symmetric n x n matrix. Symmetry is exact: every constructor
// either mirrors an upper triangle or verifies bitwise equality.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n);

  // Throws kInvalidInput if m is not square or not exactly symmetric.
  static SymmetricMatrix from_dense(Eigen::MatrixXd m);
  // Copies the upper triangle (including the diagonal) onto the lower one.
  static SymmetricMatrix from_upper(Eigen::MatrixXd m);
  static SymmetricMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  // Writes both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double v);

  const Eigen::MatrixXd& dense() const noexcept { return m_; }

  friend bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  Eigen::MatrixXd m_;
};

}  // namespace ppmgm
