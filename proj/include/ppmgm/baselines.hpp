#pragma once

#include <Eigen/Dense>

#include "ppmgm/permutation.hpp"
#include "ppmgm/symmetric_matrix.hpp"

namespace ppmgm {

// Eigenvalues ascending, eigenvectors as matching columns.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

SpectralDecomposition decompose(const SymmetricMatrix& m);

inline constexpr double kDefaultGrampaEta = 0.2;

// Umeyama: gmwm(|U_A| |U_B|^T).
Eigen::MatrixXd umeyama_similarity(const SpectralDecomposition& a, const SpectralDecomposition& b);
Permutation umeyama(const SymmetricMatrix& a, const SymmetricMatrix& b);
Permutation umeyama(const SpectralDecomposition& a, const SpectralDecomposition& b);

// Grampa: sum_ij eta / ((lambda_i - mu_j)^2 + eta^2) u_i u_i^T J v_j v_j^T with
// J = 11^T / n, rounded by gmwm. Throws kInvalidParameter unless eta > 0.
Eigen::MatrixXd grampa_similarity(const SpectralDecomposition& a, const SpectralDecomposition& b,
                                  double eta);
Permutation grampa(const SymmetricMatrix& a, const SymmetricMatrix& b, double eta = kDefaultGrampaEta);
Permutation grampa(const SpectralDecomposition& a, const SpectralDecomposition& b,
                   double eta = kDefaultGrampaEta);

}  // namespace ppmgm
