#include "chsqb/linalg.hpp"

#include <stdexcept>

namespace chsqb::linalg {

namespace {

template <typename Matrix>
void solve(const Matrix& a, Eigen::VectorXd& values, Matrix* vectors) {
    if (a.rows() == 0) {
        values.resize(0);
        if (vectors) vectors->resize(0, 0);
        return;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(a, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigh: eigensolver did not converge");
    values = es.eigenvalues();
    if (vectors) *vectors = es.eigenvectors();
}

}  // namespace

void eigh(const Eigen::MatrixXd& a, Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
    solve(a, values, &vectors);
}

void eigh(const Eigen::MatrixXcd& a, Eigen::VectorXd& values, Eigen::MatrixXcd& vectors) {
    solve(a, values, &vectors);
}

Eigen::VectorXd eigvalsh(const Eigen::MatrixXcd& a) {
    Eigen::VectorXd values;
    if ((a.imag().array() == 0.0).all()) {
        solve<Eigen::MatrixXd>(a.real(), values, nullptr);
    } else {
        solve<Eigen::MatrixXcd>(a, values, nullptr);
    }
    return values;
}

}  // namespace chsqb::linalg
