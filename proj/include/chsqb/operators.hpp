// operators.hpp: collective operators and the battery Hamiltonians
//
// All Hamiltonians are assembled by operator algebra on the fixed-j collective
// basis. The closed-form matrix elements and the Pauli-basis oracle are
// independent routes used to cross-check that assembly.

#pragma once

#include "chsqb/basis.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace chsqb {

// Dense complex square matrix, Hermitian within 1e-12 entrywise.
class HermitianMatrix {
public:
    static constexpr double kTolerance = 1e-12;

    HermitianMatrix(BasisShape shape, Eigen::MatrixXcd m);

    const BasisShape& shape() const noexcept { return shape_; }
    const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

    // True when every imaginary part is exactly zero.
    bool is_real() const;
    double max_abs() const { return m_.cwiseAbs().maxCoeff(); }

    friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);

private:
    BasisShape shape_;
    Eigen::MatrixXcd m_;
};

// Largest entrywise |M - M^dagger|.
double hermiticity_defect(const Eigen::MatrixXcd& m);

// a, a^dagger, J+, J-, Jz, Jx on the requested basis. In the Hs basis the
// photon operators are the 1x1 zero (there is no cavity).
struct CollectiveOperators {
    BasisShape shape;
    Eigen::MatrixXd a;
    Eigen::MatrixXd a_dag;
    Eigen::MatrixXd j_plus;
    Eigen::MatrixXd j_minus;
    Eigen::MatrixXd jz;
    Eigen::MatrixXd jx;
};

CollectiveOperators collective_operators(const ModelParams& p, BasisKind kind);

// Operators on the spin factor alone, dimension N+1, indexed by q.
Eigen::MatrixXd spin_raising(int n_spins);
Eigen::MatrixXd spin_jz(int n_spins);
// Truncated annihilation operator on photon numbers 0..n_ph.
Eigen::MatrixXd photon_annihilation(int n_ph);

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// H_B = omega_a Jz
HermitianMatrix build_h_b(const ModelParams& p, BasisKind kind);
// H_C = omega_c a'a + 2 g1 Jx (a' + a) + omega_a g2 [J+J- + J-J+ + gamma (J+^2 + J-^2)
//       + 2 Delta Jz^2 - (N/2)(2 + Delta)]
HermitianMatrix build_h_c(const ModelParams& p);
// H_HS = omega_a Jz + omega_a g2 [ ... same exchange bracket ... ]
HermitianMatrix build_h_hs(const ModelParams& p);
// The Hamiltonian that drives charging: H_B + H_C (Chs) or H_HS (Hs).
HermitianMatrix build_charging_hamiltonian(const ModelParams& p, BasisKind kind);

// Closed-form matrix elements in the |n, N/2, N/2 - q> labelling.
namespace closed_form {

// Photon-assisted ladder factors, k = photon number.
double f1(int k, double j, double m);
double f2(int k, double j, double m);
double f3(int k, double j, double m);
double f4(int k, double j, double m);
// Spin-only factors.
double f5(double j, double m);
double f6(double j, double m);
double f7(double j, double m);
double f8(double j, double m);

}  // namespace closed_form

// <n', q'| H_B + H_C |n, q> from the closed form, with a global omega_c
// prefactor. Agrees with build_charging_hamiltonian at omega_a == omega_c.
cplx matrix_element_chs(int n_out, int q_out, int n_in, int q_in, const ModelParams& p);
// <q'| H_HS |q> from the closed form, with a global omega_a prefactor.
cplx matrix_element_hs(int q_out, int q_in, const ModelParams& p);

// Literal sum over spin pairs i<j in the full 2^N (x) Fock space.
// Full index = n * 2^N + s, where bit i of s set means spin i is down.
struct PauliOracle {
    static constexpr int kMaxSpins = 8;

    BasisKind kind{BasisKind::Chs};
    int n_spins{0};
    int n_ph{0};
    Eigen::SparseMatrix<cplx> h;     // H_B + H_C, or H_HS
    Eigen::SparseMatrix<cplx> h_b;   // omega_a/2 sum_i sigma^z_i
    // Columns embed the collective basis (Dicke states) into the full space.
    Eigen::SparseMatrix<double> embedding;

    // embedding^T h embedding, in the collective flat-index order.
    Eigen::MatrixXcd symmetric_sector() const;
    // Total spin J^2 on the full space.
    Eigen::SparseMatrix<cplx> total_spin_squared() const;
};

PauliOracle pauli_oracle(const ModelParams& p, BasisKind kind = BasisKind::Chs);

}  // namespace chsqb
