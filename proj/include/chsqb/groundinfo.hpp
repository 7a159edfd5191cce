// groundinfo.hpp: ground-state diagnostics
//
// Order parameter <Jz>/(N/2), cavity/battery reductions, von Neumann entropy
// (bits), logarithmic negativity and the cavity Wigner function.

#pragma once

#include "chsqb/basis.hpp"
#include "chsqb/operators.hpp"

#include <Eigen/Dense>

#include <vector>

namespace chsqb {

enum class Subsystem { Full, Cavity, Battery };

// Hermitian, unit trace, eigenvalues >= -1e-10.
class DensityMatrix {
public:
    DensityMatrix(Subsystem subsystem, Eigen::MatrixXcd rho);

    static DensityMatrix pure(const StateVector& psi);

    Subsystem subsystem() const noexcept { return subsystem_; }
    const Eigen::MatrixXcd& matrix() const noexcept { return rho_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(rho_.rows()); }

private:
    Subsystem subsystem_;
    Eigen::MatrixXcd rho_;
};

// Which Hamiltonian defines "the ground state": H_B + H_C (default) or H_C.
enum class GroundHamiltonian { Full, CouplingOnly };

struct GroundState {
    double energy{0.0};
    StateVector state;
};

// Lowest eigenvector of h. When h conserves the (-1)^(n+q) parity each sector
// is diagonalised separately and the lower sector minimum wins (even sector on
// an exact tie), so near-degenerate cat pairs resolve deterministically. Phase
// fixed by making the largest-magnitude amplitude real positive.
GroundState ground_state(const HermitianMatrix& h);

// Ground state of the configured Hamiltonian in the Chs basis.
GroundState chs_ground_state(const ModelParams& p, GroundHamiltonian which = GroundHamiltonian::Full);

// <Jz> / (N/2), in [-1, 1].
double order_parameter(const StateVector& psi);

// Partial trace onto the cavity or the battery. Chs basis only.
DensityMatrix reduce(const StateVector& psi, Subsystem keep);
DensityMatrix reduce(const DensityMatrix& rho, const BasisShape& shape, Subsystem keep);

// -sum lambda log2 lambda, eigenvalues below 1e-12 dropped.
double von_neumann_entropy(const DensityMatrix& rho);

// (n q | n' q') -> (n q' | n' q)
Eigen::MatrixXcd partial_transpose_battery(const DensityMatrix& rho, const BasisShape& shape);
Eigen::MatrixXcd partial_transpose_battery(const Eigen::MatrixXcd& m, const BasisShape& shape);

// log2 || rho^{T_B} ||_1, clamped at 0 below 1e-12.
double log_negativity(const DensityMatrix& rho, const BasisShape& shape);

struct WignerGrid {
    std::vector<double> xs;
    std::vector<double> ps;
    Eigen::MatrixXd values;   // values(i, k) = W(xs[i], ps[k])

    // Trapezoidal integral over d^2 alpha = dx dp / 2.
    double integral() const;
};

// W(alpha) = (2/pi) Tr[rho D(alpha) Pi D(alpha)^dagger], alpha = (x + i p)/sqrt(2).
// Evaluated with the exact Fock-space Laguerre expansion of the displaced
// parity, so W(0) = 2/pi for the vacuum.
WignerGrid wigner(const DensityMatrix& rho_cavity, const std::vector<double>& xs, const std::vector<double>& ps);

// Strict interior local maxima (8-neighbourhood) above threshold * max(W).
int peak_count(const WignerGrid& grid, double threshold = 0.1);

std::vector<double> linspace(double lo, double hi, int points);

}  // namespace chsqb
