#include "ppmgm/baselines.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "ppmgm/error.hpp"
#include "ppmgm/matching.hpp"

namespace ppmgm {
namespace {

void check_pair(const SpectralDecomposition& a, const SpectralDecomposition& b) {
  if (a.eigenvalues.size() != b.eigenvalues.size()) {
    throw Error(ErrorCode::kInvalidInput, "spectral baselines need matrices of equal size");
  }
}

}  // namespace

SpectralDecomposition decompose(const SymmetricMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.dense());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumerical, "eigendecomposition did not converge");
  }
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::MatrixXd umeyama_similarity(const SpectralDecomposition& a, const SpectralDecomposition& b) {
  check_pair(a, b);
  Eigen::MatrixXd s;
  s.noalias() = a.eigenvectors.cwiseAbs() * b.eigenvectors.cwiseAbs().transpose();
  return s;
}

Permutation umeyama(const SpectralDecomposition& a, const SpectralDecomposition& b) {
  return gmwm(umeyama_similarity(a, b));
}

Permutation umeyama(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  return umeyama(decompose(a), decompose(b));
}

Eigen::MatrixXd grampa_similarity(const SpectralDecomposition& a, const SpectralDecomposition& b,
                                  double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw Error(ErrorCode::kInvalidParameter, "eta must be positive, got " + std::to_string(eta));
  }
  check_pair(a, b);
  const Eigen::Index n = a.eigenvalues.size();
  // u_i^T J v_j = (u_i . 1)(v_j . 1) / n.
  const Eigen::VectorXd ua = a.eigenvectors.colwise().sum().transpose();
  const Eigen::VectorXd vb = b.eigenvectors.colwise().sum().transpose();
  Eigen::MatrixXd core(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double gap = a.eigenvalues(i) - b.eigenvalues(j);
      core(i, j) = eta / (gap * gap + eta * eta) * ua(i) * vb(j) / static_cast<double>(n);
    }
  }
  Eigen::MatrixXd left;
  left.noalias() = a.eigenvectors * core;
  Eigen::MatrixXd similarity;
  similarity.noalias() = left * b.eigenvectors.transpose();
  return similarity;
}

Permutation grampa(const SpectralDecomposition& a, const SpectralDecomposition& b, double eta) {
  return gmwm(grampa_similarity(a, b, eta));
}

Permutation grampa(const SymmetricMatrix& a, const SymmetricMatrix& b, double eta) {
  if (!(eta > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "eta must be positive, got " + std::to_string(eta));
  }
  return grampa(decompose(a), decompose(b), eta);
}

}  // namespace ppmgm
