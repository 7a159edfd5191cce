#include "chsqb/dynamics.hpp"

#include "chsqb/errors.hpp"
#include "chsqb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chsqb {

SpectralDecomposition decompose(const HermitianMatrix& h) {
    SpectralDecomposition out;
    out.shape = h.shape();
    if (h.is_real()) {
        linalg::eigh(Eigen::MatrixXd(h.matrix().real()), out.eigenvalues, out.real_eigenvectors);
        out.eigenvectors = out.real_eigenvectors.cast<cplx>();
    } else {
        linalg::eigh(h.matrix(), out.eigenvalues, out.eigenvectors);
    }
    return out;
}

StateVector evolve(const SpectralDecomposition& spec, const StateVector& psi0, double t) {
    if (psi0.dim() != spec.dim()) {
        throw std::invalid_argument("evolve: state dimension does not match the decomposition");
    }
    if (t == 0.0) return psi0;
    const Eigen::VectorXcd c = spec.eigenvectors.adjoint() * psi0.amplitudes();
    const Eigen::VectorXcd phases = (spec.eigenvalues * cplx(0.0, -t)).array().exp();
    Eigen::VectorXcd psi = spec.eigenvectors * phases.cwiseProduct(c);
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
        throw InvariantError("evolve: norm drifted by more than 1e-10");
    }
    // Remove the residual drift so the unit-norm contract holds to 1e-12.
    psi /= psi.norm();
    return {psi0.shape(), std::move(psi)};
}

double expectation(const StateVector& psi, const HermitianMatrix& op) {
    if (psi.dim() != op.dim()) {
        throw std::invalid_argument("expectation: state and operator dimensions differ");
    }
    const cplx v = psi.amplitudes().dot(op.matrix() * psi.amplitudes());
    if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real()))) {
        throw InvariantError("expectation: imaginary residue exceeds 1e-10");
    }
    return v.real();
}

double stored_energy(const StateVector& psi_t, const StateVector& psi0, const HermitianMatrix& h_b) {
    return expectation(psi_t, h_b) - expectation(psi0, h_b);
}

// ---------------------------------------------------------------------------

Propagator::Propagator(const HermitianMatrix& h, const StateVector& psi0, const HermitianMatrix& h_b) {
    const auto dim = static_cast<Eigen::Index>(h.dim());
    if (psi0.dim() != h.dim() || h_b.dim() != h.dim()) {
        throw std::invalid_argument("Propagator: Hamiltonian, state and H_B dimensions differ");
    }
    const Eigen::MatrixXcd& hm = h.matrix();
    const Eigen::MatrixXcd& hb = h_b.matrix();
    if ((hb - Eigen::MatrixXcd(hb.diagonal().asDiagonal())).cwiseAbs().maxCoeff() != 0.0) {
        throw std::invalid_argument("Propagator: H_B must be diagonal in the product basis");
    }
    hb_diag_ = hb.diagonal().real();
    e0_ = (psi0.amplitudes().cwiseAbs2().array() * hb_diag_.array()).sum();

    // Restrict to the smallest H-invariant coordinate subspace containing the
    // support of psi0: the connected component of the coupling graph. For the
    // battery Hamiltonians this is the parity sector of psi0, or smaller when
    // couplings vanish.
    std::vector<char> seen(static_cast<std::size_t>(dim), 0);
    std::vector<Eigen::Index> frontier;
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (psi0.amplitudes()(i) != cplx(0.0)) {
            seen[static_cast<std::size_t>(i)] = 1;
            frontier.push_back(i);
        }
    }
    while (!frontier.empty()) {
        const Eigen::Index c = frontier.back();
        frontier.pop_back();
        for (Eigen::Index r = 0; r < dim; ++r) {
            if (!seen[static_cast<std::size_t>(r)] && hm(r, c) != cplx(0.0)) {
                seen[static_cast<std::size_t>(r)] = 1;
                frontier.push_back(r);
            }
        }
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (seen[static_cast<std::size_t>(i)]) sector_.push_back(i);
    }

    const auto n = static_cast<Eigen::Index>(sector_.size());
    Eigen::MatrixXcd sub(n, n);
    Eigen::VectorXcd psi_sub(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        psi_sub(r) = psi0.amplitudes()(sector_[r]);
        for (Eigen::Index c = 0; c < n; ++c) sub(r, c) = hm(sector_[r], sector_[c]);
    }
    if ((sub.imag().array() == 0.0).all()) {
        linalg::eigh(Eigen::MatrixXd(sub.real()), values_, vectors_re_);
        coeffs_ = vectors_re_.transpose() * psi_sub;
    } else {
        Eigen::MatrixXcd v;
        linalg::eigh(sub, values_, v);
        vectors_re_ = v.real();
        vectors_im_ = v.imag();
        coeffs_ = v.adjoint() * psi_sub;
    }
    // Shifted by E0 so that E(t) = sum_i (hb_i - E0)|psi_i|^2; frozen
    // components contribute exactly zero.
    Eigen::VectorXd hb_sub(n);
    for (Eigen::Index r = 0; r < n; ++r) hb_sub(r) = hb_diag_(sector_[r]) - e0_;
    hb_diag_ = std::move(hb_sub);
}

double Propagator::energy_of(const Eigen::MatrixXd& re, const Eigen::MatrixXd& im, Eigen::Index col) const {
    return (re.col(col).array().square() + im.col(col).array().square()).matrix().dot(hb_diag_);
}

std::vector<double> Propagator::energies(const std::vector<double>& times) const {
    constexpr Eigen::Index kBlock = 256;
    const Eigen::Index n = values_.size();
    const auto total = static_cast<Eigen::Index>(times.size());
    std::vector<double> out(times.size());
    for (Eigen::Index start = 0; start < total; start += kBlock) {
        const Eigen::Index b = std::min(kBlock, total - start);
        Eigen::MatrixXd zr(n, b), zi(n, b);
        for (Eigen::Index k = 0; k < b; ++k) {
            const double t = times[static_cast<std::size_t>(start + k)];
            for (Eigen::Index i = 0; i < n; ++i) {
                const cplx z = std::polar(1.0, -values_(i) * t) * coeffs_(i);
                zr(i, k) = z.real();
                zi(i, k) = z.imag();
            }
        }
        Eigen::MatrixXd re, im;
        if (vectors_im_.size() == 0) {
            re.noalias() = vectors_re_ * zr;
            im.noalias() = vectors_re_ * zi;
        } else {
            re.noalias() = vectors_re_ * zr - vectors_im_ * zi;
            im.noalias() = vectors_re_ * zi + vectors_im_ * zr;
        }
        for (Eigen::Index k = 0; k < b; ++k) {
            const auto idx = static_cast<std::size_t>(start + k);
            out[idx] = times[idx] == 0.0 ? 0.0 : energy_of(re, im, k);
        }
    }
    return out;
}

double Propagator::energy(double t) const {
    return energies({t}).front();
}

namespace {

struct Refined {
    double value{0.0};
    double time{0.0};
};

// Golden-section refinement around the largest sampled local maxima.
template <typename F>
Refined refine_maximum(const std::vector<double>& times, const std::vector<double>& values, F&& f,
                       const TraceOptions& opts) {
    const std::size_t k = values.size();
    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < k; ++i) {
        const bool left = i == 0 || values[i] >= values[i - 1];
        const bool right = i + 1 == k || values[i] >= values[i + 1];
        if (left && right) peaks.push_back(i);
    }
    std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    if (peaks.size() > static_cast<std::size_t>(opts.refine_candidates)) peaks.resize(opts.refine_candidates);

    Refined best{values[peaks.front()], times[peaks.front()]};
    for (std::size_t i : peaks) {
        const double lo = times[i == 0 ? 0 : i - 1];
        const double hi = times[std::min(i + 1, k - 1)];
        const auto [v, t] = golden_section_max(f, lo, hi, opts.t_rel_tol);
        if (v > best.value) best = {v, t};
    }
    return best;
}

}  // namespace

EnergyTrace energy_trace(const ModelParams& p, BasisKind kind, const TraceOptions& opts) {
    validate(p);
    const double horizon = opts.horizon_for(p);
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("energy_trace: horizon must be > 0");
    if (opts.samples < 2) throw std::invalid_argument("energy_trace: need at least 2 samples");

    const Propagator prop(build_charging_hamiltonian(p, kind), initial_state(p, kind), build_h_b(p, kind));

    EnergyTrace tr;
    const auto k = static_cast<std::size_t>(opts.samples);
    tr.times.resize(k);
    for (std::size_t i = 0; i < k; ++i) tr.times[i] = horizon * static_cast<double>(i) / static_cast<double>(k - 1);
    tr.energy = prop.energies(tr.times);
    tr.power.resize(k);
    tr.power[0] = 0.0;
    for (std::size_t i = 1; i < k; ++i) tr.power[i] = tr.energy[i] / tr.times[i];

    const double upper = p.n_spins * std::abs(p.omega_a) + 1e-9;
    for (double e : tr.energy) {
        if (!(e >= -1e-9 && e <= upper)) {
            throw InvariantError("energy_trace: E(t) = " + std::to_string(e) + " outside [0, N omega_a]");
        }
    }

    const auto e_fn = [&](double t) { return prop.energy(t); };
    const auto p_fn = [&](double t) { return t > 0.0 ? prop.energy(t) / t : 0.0; };
    const auto e_best = refine_maximum(tr.times, tr.energy, e_fn, opts);
    const auto p_best = refine_maximum(tr.times, tr.power, p_fn, opts);
    tr.e_max = e_best.value;
    tr.t_e = e_best.time;
    tr.p_max = p_best.value;
    tr.t_p = p_best.time;
    tr.e_at_horizon = tr.t_e >= 0.99 * horizon;
    tr.p_at_horizon = tr.t_p >= 0.99 * horizon;
    return tr;
}

}  // namespace chsqb
