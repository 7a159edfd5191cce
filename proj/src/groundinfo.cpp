#include "chsqb/groundinfo.hpp"

#include "chsqb/linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chsqb {

DensityMatrix::DensityMatrix(Subsystem subsystem, Eigen::MatrixXcd rho)
    : subsystem_(subsystem), rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
        throw std::invalid_argument("DensityMatrix: matrix must be square and nonempty");
    }
    if (hermiticity_defect(rho_) > 1e-12) {
        throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-12");
    }
    if (std::abs(rho_.trace() - cplx(1.0)) > 1e-10) {
        throw std::invalid_argument("DensityMatrix: trace differs from 1 by more than 1e-10");
    }
    if (linalg::eigvalsh(rho_).minCoeff() < -1e-10) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue below -1e-10");
    }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    const Eigen::VectorXcd& a = psi.amplitudes();
    Eigen::MatrixXcd rho = a * a.adjoint();
    // Outer products are Hermitian up to rounding in the diagonal imaginary parts.
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return {Subsystem::Full, std::move(rho)};
}

// ---------------------------------------------------------------------------

namespace {

void fix_phase(Eigen::VectorXcd& v) {
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    const cplx pivot = v(arg);
    v *= std::conj(pivot) / std::abs(pivot);
    v(arg) = std::abs(v(arg));
}

bool conserves_parity(const HermitianMatrix& h) {
    const auto& m = h.matrix();
    const auto& shape = h.shape();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const int pc = parity(shape, static_cast<std::size_t>(c));
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (m(r, c) != cplx(0.0) && parity(shape, static_cast<std::size_t>(r)) != pc) return false;
        }
    }
    return true;
}

struct SectorMinimum {
    double energy{0.0};
    Eigen::VectorXcd vector;
};

SectorMinimum lowest_in(const Eigen::MatrixXcd& m, const std::vector<Eigen::Index>& idx) {
    const auto n = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd sub(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) sub(r, c) = m(idx[r], idx[c]);
    Eigen::VectorXd values;
    SectorMinimum out;
    if ((sub.imag().array() == 0.0).all()) {
        Eigen::MatrixXd vecs;
        linalg::eigh(Eigen::MatrixXd(sub.real()), values, vecs);
        out.vector = vecs.col(0).cast<cplx>();
    } else {
        Eigen::MatrixXcd vecs;
        linalg::eigh(sub, values, vecs);
        out.vector = vecs.col(0);
    }
    out.energy = values(0);
    return out;
}

}  // namespace

GroundState ground_state(const HermitianMatrix& h) {
    const auto dim = static_cast<Eigen::Index>(h.dim());
    std::vector<Eigen::Index> even, odd, all;
    for (Eigen::Index i = 0; i < dim; ++i) {
        all.push_back(i);
        (parity(h.shape(), static_cast<std::size_t>(i)) > 0 ? even : odd).push_back(i);
    }

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    double energy = 0.0;
    if (!odd.empty() && conserves_parity(h)) {
        const auto e = lowest_in(h.matrix(), even);
        const auto o = lowest_in(h.matrix(), odd);
        const auto& pick = o.energy < e.energy ? o : e;
        const auto& idx = o.energy < e.energy ? odd : even;
        for (std::size_t k = 0; k < idx.size(); ++k) psi(idx[k]) = pick.vector(static_cast<Eigen::Index>(k));
        energy = pick.energy;
    } else {
        const auto lo = lowest_in(h.matrix(), all);
        psi = lo.vector;
        energy = lo.energy;
    }
    fix_phase(psi);
    psi /= psi.norm();
    return {energy, StateVector(h.shape(), std::move(psi))};
}

GroundState chs_ground_state(const ModelParams& p, GroundHamiltonian which) {
    if (which == GroundHamiltonian::CouplingOnly) return ground_state(build_h_c(p));
    return ground_state(build_charging_hamiltonian(p, BasisKind::Chs));
}

double order_parameter(const StateVector& psi) {
    const auto& shape = psi.shape();
    const double j = 0.5 * shape.n_spins;
    double jz = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        const auto [n, q] = unflatten(shape, i);
        jz += std::norm(psi.amplitudes()(static_cast<Eigen::Index>(i))) * (j - q);
    }
    return jz / j;
}

// ---------------------------------------------------------------------------

namespace {

void require_chs(const BasisShape& shape, const char* what) {
    if (shape.kind != BasisKind::Chs) {
        throw std::invalid_argument(std::string(what) + ": the Hs basis has no cavity/battery bipartition");
    }
}

Eigen::MatrixXcd hermitize(const Eigen::MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

DensityMatrix reduce(const StateVector& psi, Subsystem keep) {
    const auto& shape = psi.shape();
    require_chs(shape, "reduce");
    const auto rows = static_cast<Eigen::Index>(shape.photon_dim());
    const auto cols = static_cast<Eigen::Index>(shape.spin_dim());
    // Row-major flat layout: M(n, q) = psi[n*(N+1) + q].
    const Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        psi.amplitudes().data(), rows, cols);
    if (keep == Subsystem::Cavity) return {Subsystem::Cavity, hermitize(m * m.adjoint())};
    if (keep == Subsystem::Battery) return {Subsystem::Battery, hermitize(m.transpose() * m.conjugate())};
    throw std::invalid_argument("reduce: keep must be cavity or battery");
}

DensityMatrix reduce(const DensityMatrix& rho, const BasisShape& shape, Subsystem keep) {
    require_chs(shape, "reduce");
    if (rho.dim() != shape.dim()) throw std::invalid_argument("reduce: density matrix does not match basis");
    const auto np = static_cast<Eigen::Index>(shape.photon_dim());
    const auto ns = static_cast<Eigen::Index>(shape.spin_dim());
    const auto& r = rho.matrix();
    if (keep == Subsystem::Cavity) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(np, np);
        for (Eigen::Index a = 0; a < np; ++a)
            for (Eigen::Index b = 0; b < np; ++b)
                for (Eigen::Index q = 0; q < ns; ++q) out(a, b) += r(a * ns + q, b * ns + q);
        return {Subsystem::Cavity, hermitize(out)};
    }
    if (keep == Subsystem::Battery) {
        Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(ns, ns);
        for (Eigen::Index a = 0; a < ns; ++a)
            for (Eigen::Index b = 0; b < ns; ++b)
                for (Eigen::Index n = 0; n < np; ++n) out(a, b) += r(n * ns + a, n * ns + b);
        return {Subsystem::Battery, hermitize(out)};
    }
    throw std::invalid_argument("reduce: keep must be cavity or battery");
}

double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double lambda : linalg::eigvalsh(rho.matrix())) {
        if (lambda > 1e-12) s -= lambda * std::log2(lambda);
    }
    return std::max(0.0, s);
}

Eigen::MatrixXcd partial_transpose_battery(const Eigen::MatrixXcd& r, const BasisShape& shape) {
    require_chs(shape, "partial_transpose_battery");
    if (r.rows() != r.cols() || static_cast<std::size_t>(r.rows()) != shape.dim()) {
        throw std::invalid_argument("partial_transpose_battery: matrix does not match basis");
    }
    const auto np = static_cast<Eigen::Index>(shape.photon_dim());
    const auto ns = static_cast<Eigen::Index>(shape.spin_dim());
    Eigen::MatrixXcd out(r.rows(), r.cols());
    for (Eigen::Index n = 0; n < np; ++n)
        for (Eigen::Index q = 0; q < ns; ++q)
            for (Eigen::Index n2 = 0; n2 < np; ++n2)
                for (Eigen::Index q2 = 0; q2 < ns; ++q2) out(n * ns + q2, n2 * ns + q) = r(n * ns + q, n2 * ns + q2);
    return out;
}

Eigen::MatrixXcd partial_transpose_battery(const DensityMatrix& rho, const BasisShape& shape) {
    return partial_transpose_battery(rho.matrix(), shape);
}

double log_negativity(const DensityMatrix& rho, const BasisShape& shape) {
    const Eigen::VectorXd ev = linalg::eigvalsh(partial_transpose_battery(rho, shape));
    const double v = std::log2(ev.cwiseAbs().sum());
    return v < 1e-12 ? 0.0 : v;
}

// ---------------------------------------------------------------------------

std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> out;
    if (points <= 0) return out;
    if (points == 1) return {lo};
    out.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) out.push_back(lo + (hi - lo) * i / (points - 1));
    return out;
}

double WignerGrid::integral() const {
    const auto trap = [](const std::vector<double>& v, std::size_t i) {
        if (v.size() < 2) return 0.0;
        const double left = i > 0 ? v[i] - v[i - 1] : 0.0;
        const double right = i + 1 < v.size() ? v[i + 1] - v[i] : 0.0;
        return 0.5 * (left + right);
    };
    double sum = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t k = 0; k < ps.size(); ++k)
            sum += values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) * trap(xs, i) * trap(ps, k);
    return 0.5 * sum;
}

namespace {

// (2/pi) Tr[rho D Pi D^dagger] from
//   sum_m rho_mm (-1)^m L_m(B) + 2 Re sum_{n>m} rho_mn (-1)^m (2 alpha)^(n-m) sqrt(m!/n!) L_m^(n-m)(B)
// times exp(-B/2), B = 4|alpha|^2. Prefactors are combined in log space.
double wigner_point(const Eigen::MatrixXcd& rho, cplx alpha) {
    const auto dim = static_cast<int>(rho.rows());
    const double r = std::abs(alpha);
    const double b = 4.0 * r * r;
    const double theta = std::arg(alpha);
    const double log_two_r = r > 0.0 ? std::log(2.0 * r) : -std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (int k = 0; k < dim; ++k) {          // k = n - m
        double l_prev = 0.0;
        double l_curr = 1.0;                 // L_0^(k)
        for (int m = 0; m + k < dim; ++m) {
            if (m == 1) {
                l_prev = 1.0;
                l_curr = 1.0 + k - b;
            } else if (m > 1) {
                const double l_next = ((2.0 * (m - 1) + 1.0 + k - b) * l_curr - (m - 1 + k) * l_prev) / m;
                l_prev = l_curr;
                l_curr = l_next;
            }
            const int n = m + k;
            const cplx elem = rho(m, n);
            if (elem == cplx(0.0)) continue;
            double log_scale = -0.5 * b + 0.5 * (std::lgamma(m + 1.0) - std::lgamma(n + 1.0));
            if (k > 0) {
                if (r == 0.0) continue;
                log_scale += k * log_two_r;
            }
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            const cplx phase = std::polar(1.0, k * theta);
            const double term = sign * std::exp(log_scale) * l_curr * (elem * phase).real();
            total += k == 0 ? term : 2.0 * term;
        }
    }
    return 2.0 / std::numbers::pi * total;
}

}  // namespace

WignerGrid wigner(const DensityMatrix& rho_cavity, const std::vector<double>& xs, const std::vector<double>& ps) {
    if (xs.empty() || ps.empty()) throw std::invalid_argument("wigner: grid is empty");
    if (rho_cavity.subsystem() == Subsystem::Battery) {
        throw std::invalid_argument("wigner: expects the cavity reduced density matrix");
    }
    WignerGrid g{xs, ps, Eigen::MatrixXd(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(ps.size()))};
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t k = 0; k < ps.size(); ++k) {
            g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                wigner_point(rho_cavity.matrix(), cplx(xs[i], ps[k]) * inv_sqrt2);
        }
    }
    return g;
}

int peak_count(const WignerGrid& grid, double threshold) {
    const auto& w = grid.values;
    if (w.size() == 0) return 0;
    const double cut = threshold * w.maxCoeff();
    if (!(w.maxCoeff() > 0.0)) return 0;
    int count = 0;
    for (Eigen::Index i = 1; i + 1 < w.rows(); ++i) {
        for (Eigen::Index k = 1; k + 1 < w.cols(); ++k) {
            const double v = w(i, k);
            if (v <= cut) continue;
            bool is_peak = true;
            for (int di = -1; di <= 1 && is_peak; ++di)
                for (int dk = -1; dk <= 1; ++dk)
                    if ((di != 0 || dk != 0) && !(v > w(i + di, k + dk))) {
                        is_peak = false;
                        break;
                    }
            count += is_peak ? 1 : 0;
        }
    }
    return count;
}

}  // namespace chsqb
