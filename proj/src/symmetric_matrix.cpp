#include "ppmgm/symmetric_matrix.hpp"

#include <cmath>

#include "ppmgm/error.hpp"

namespace ppmgm {

SymmetricMatrix::SymmetricMatrix(std::size_t n)
    : m_(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))) {}

SymmetricMatrix SymmetricMatrix::from_dense(Eigen::MatrixXd m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kInvalidInput, "matrix is not square");
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      // NaN rejection is left to the consumers that care about it.
      const double a = m(i, j), b = m(j, i);
      if (a != b && !(std::isnan(a) && std::isnan(b))) {
        throw Error(ErrorCode::kInvalidInput, "matrix is not symmetric");
      }
    }
  }
  SymmetricMatrix s;
  s.m_ = std::move(m);
  return s;
}

SymmetricMatrix SymmetricMatrix::from_upper(Eigen::MatrixXd m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::kInvalidInput, "matrix is not square");
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) m(j, i) = m(i, j);
  }
  SymmetricMatrix s;
  s.m_ = std::move(m);
  return s;
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t n) {
  SymmetricMatrix s;
  const auto k = static_cast<Eigen::Index>(n);
  s.m_ = Eigen::MatrixXd::Identity(k, k);
  return s;
}

void SymmetricMatrix::set(std::size_t i, std::size_t j, double v) {
  const auto r = static_cast<Eigen::Index>(i), c = static_cast<Eigen::Index>(j);
  m_(r, c) = v;
  m_(c, r) = v;
}

}  // namespace ppmgm
