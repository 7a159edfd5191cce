// dynamics.hpp: charging dynamics under the step-on protocol
//
// |psi(t)> = V exp(-i Lambda t) V^dagger |psi(0)>  (hbar = 1)
// E(t)     = <psi(t)|H_B|psi(t)> - <psi(0)|H_B|psi(0)>
// P(t)     = E(t) / t,  P(0) := 0

#pragma once

#include "chsqb/basis.hpp"
#include "chsqb/operators.hpp"

#include <Eigen/Dense>

#include <numbers>
#include <utility>
#include <vector>

namespace chsqb {

struct SpectralDecomposition {
    BasisShape shape;
    Eigen::VectorXd eigenvalues;        // ascending
    Eigen::MatrixXcd eigenvectors;      // columns
    Eigen::MatrixXd real_eigenvectors;  // same columns when H is real, else empty

    bool is_real() const noexcept { return real_eigenvectors.size() > 0; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
};

SpectralDecomposition decompose(const HermitianMatrix& h);

StateVector evolve(const SpectralDecomposition& spec, const StateVector& psi0, double t);

// Imaginary residues up to 1e-10 are dropped; larger ones raise InvariantError.
double expectation(const StateVector& psi, const HermitianMatrix& op);
double stored_energy(const StateVector& psi_t, const StateVector& psi0, const HermitianMatrix& h_b);

struct TraceOptions {
    double horizon{0.0};        // <= 0 selects 20 pi / omega_a
    int samples{4000};
    double t_rel_tol{1e-6};     // golden-section stopping width, relative to t
    int refine_candidates{5};   // sampled local maxima refined per quantity

    double horizon_for(const ModelParams& p) const {
        return horizon > 0.0 ? horizon : 20.0 * std::numbers::pi / p.omega_a;
    }
};

struct EnergyTrace {
    std::vector<double> times;
    std::vector<double> energy;
    std::vector<double> power;
    double e_max{0.0};
    double t_e{0.0};
    double p_max{0.0};
    double t_p{0.0};
    // Refined maximum sits within 1% of the horizon.
    bool e_at_horizon{false};
    bool p_at_horizon{false};

    bool converged() const noexcept { return !e_at_horizon && !p_at_horizon; }
};

// Propagates one initial state under a fixed Hamiltonian, restricted to the
// invariant subspace the initial state explores.
class Propagator {
public:
    Propagator(const HermitianMatrix& h, const StateVector& psi0, const HermitianMatrix& h_b);

    // E(t) at a single time; E(0) is exactly 0.
    double energy(double t) const;
    // E(t) on many times, evaluated in blocks.
    std::vector<double> energies(const std::vector<double>& times) const;

    std::size_t sector_dim() const noexcept { return static_cast<std::size_t>(values_.size()); }

private:
    double energy_of(const Eigen::MatrixXd& re, const Eigen::MatrixXd& im, Eigen::Index col) const;

    std::vector<Eigen::Index> sector_;
    Eigen::VectorXd values_;
    Eigen::MatrixXd vectors_re_;
    Eigen::MatrixXd vectors_im_;   // empty when H is real
    Eigen::VectorXcd coeffs_;
    Eigen::VectorXd hb_diag_;   // H_B diagonal minus E0, on the sector
    double e0_{0.0};
};

// Maximise f on [lo, hi] by golden-section search; returns (f*, t*).
template <typename F>
std::pair<double, double> golden_section_max(F&& f, double lo, double hi, double rel_tol);

EnergyTrace energy_trace(const ModelParams& p, BasisKind kind, const TraceOptions& opts = {});

// ---------------------------------------------------------------------------

template <typename F>
std::pair<double, double> golden_section_max(F&& f, double lo, double hi, double rel_tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200; ++it) {
        const double scale = std::max(std::abs(0.5 * (a + b)), 1e-12);
        if (b - a <= rel_tol * scale) break;
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? std::pair{fc, c} : std::pair{fd, d};
}

}  // namespace chsqb
