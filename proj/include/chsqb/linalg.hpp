// linalg.hpp: dense Hermitian eigensolvers

#pragma once

#include <Eigen/Dense>

namespace chsqb::linalg {

// Ascending eigenvalues and orthonormal eigenvectors (columns).
void eigh(const Eigen::MatrixXd& a, Eigen::VectorXd& values, Eigen::MatrixXd& vectors);
void eigh(const Eigen::MatrixXcd& a, Eigen::VectorXd& values, Eigen::MatrixXcd& vectors);

// Eigenvalues only; takes the real path when the imaginary part vanishes.
Eigen::VectorXd eigvalsh(const Eigen::MatrixXcd& a);

}  // namespace chsqb::linalg
