#include "chsqb/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

namespace chsqb {

HermitianMatrix::HermitianMatrix(BasisShape shape, Eigen::MatrixXcd m) : shape_(shape), m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw std::invalid_argument("HermitianMatrix: matrix is not square");
    }
    if (static_cast<std::size_t>(m_.rows()) != shape_.dim()) {
        throw std::invalid_argument("HermitianMatrix: dimension does not match basis shape");
    }
    if (const double d = hermiticity_defect(m_); d > kTolerance) {
        throw std::invalid_argument("HermitianMatrix: Hermiticity defect " + std::to_string(d) + " exceeds 1e-12");
    }
}

bool HermitianMatrix::is_real() const {
    return (m_.imag().array() == 0.0).all();
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (!(a.shape() == b.shape())) {
        throw std::invalid_argument("HermitianMatrix: cannot add operators on different bases");
    }
    return {a.shape(), a.matrix() + b.matrix()};
}

double hermiticity_defect(const Eigen::MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
        }
    }
    return out;
}

Eigen::MatrixXd spin_raising(int n_spins) {
    const double j = 0.5 * n_spins;
    Eigen::MatrixXd jp = Eigen::MatrixXd::Zero(n_spins + 1, n_spins + 1);
    for (int q = 1; q <= n_spins; ++q) {
        const double m = j - q;
        jp(q - 1, q) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    return jp;
}

Eigen::MatrixXd spin_jz(int n_spins) {
    const double j = 0.5 * n_spins;
    Eigen::VectorXd diag(n_spins + 1);
    for (int q = 0; q <= n_spins; ++q) diag(q) = j - q;
    return diag.asDiagonal();
}

Eigen::MatrixXd photon_annihilation(int n_ph) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_ph + 1, n_ph + 1);
    for (int n = 1; n <= n_ph; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

namespace {

// The exchange bracket J+J- + J-J+ + gamma (J+^2 + J-^2) + 2 Delta Jz^2 - (N/2)(2 + Delta)
// on the (N+1)-dimensional spin factor.
Eigen::MatrixXd exchange_bracket(const ModelParams& p) {
    const Eigen::MatrixXd jp = spin_raising(p.n_spins);
    const Eigen::MatrixXd jm = jp.transpose();
    const Eigen::MatrixXd jz = spin_jz(p.n_spins);
    const auto dim = jp.rows();
    return jp * jm + jm * jp + p.gamma * (jp * jp + jm * jm) + 2.0 * p.delta * jz * jz -
           0.5 * p.n_spins * (2.0 + p.delta) * Eigen::MatrixXd::Identity(dim, dim);
}

HermitianMatrix to_hermitian(BasisShape shape, const Eigen::MatrixXd& m) {
    return {shape, m.cast<cplx>()};
}

}  // namespace

CollectiveOperators collective_operators(const ModelParams& p, BasisKind kind) {
    validate(p);
    const auto shape = shape_for(p, kind);
    const Eigen::MatrixXd jp = spin_raising(p.n_spins);
    const Eigen::MatrixXd jz = spin_jz(p.n_spins);
    const Eigen::MatrixXd a = kind == BasisKind::Chs ? photon_annihilation(p.n_ph) : Eigen::MatrixXd::Zero(1, 1);
    const auto n_dim = static_cast<Eigen::Index>(shape.photon_dim());
    const auto s_dim = static_cast<Eigen::Index>(shape.spin_dim());
    const Eigen::MatrixXd id_n = Eigen::MatrixXd::Identity(n_dim, n_dim);
    const Eigen::MatrixXd id_s = Eigen::MatrixXd::Identity(s_dim, s_dim);

    CollectiveOperators ops;
    ops.shape = shape;
    ops.a = kron(a, id_s);
    ops.a_dag = ops.a.transpose();
    ops.j_plus = kron(id_n, jp);
    ops.j_minus = ops.j_plus.transpose();
    ops.jz = kron(id_n, jz);
    ops.jx = 0.5 * (ops.j_plus + ops.j_minus);
    return ops;
}

HermitianMatrix build_h_b(const ModelParams& p, BasisKind kind) {
    validate(p);
    const auto shape = shape_for(p, kind);
    const auto n_dim = static_cast<Eigen::Index>(shape.photon_dim());
    return to_hermitian(shape, p.omega_a * kron(Eigen::MatrixXd::Identity(n_dim, n_dim), spin_jz(p.n_spins)));
}

HermitianMatrix build_h_c(const ModelParams& p) {
    validate(p);
    const auto shape = chs_shape(p);
    const Eigen::MatrixXd a = photon_annihilation(p.n_ph);
    const Eigen::MatrixXd jp = spin_raising(p.n_spins);
    const Eigen::MatrixXd jx = 0.5 * (jp + jp.transpose());
    const Eigen::MatrixXd id_n = Eigen::MatrixXd::Identity(p.n_ph + 1, p.n_ph + 1);
    const Eigen::MatrixXd id_s = Eigen::MatrixXd::Identity(p.n_spins + 1, p.n_spins + 1);

    Eigen::MatrixXd h = p.omega_c * kron(a.transpose() * a, id_s);
    h += 2.0 * p.g1 * kron(a.transpose() + a, jx);
    h += p.omega_a * p.g2 * kron(id_n, exchange_bracket(p));
    return to_hermitian(shape, h);
}

HermitianMatrix build_h_hs(const ModelParams& p) {
    validate(p);
    const Eigen::MatrixXd h = p.omega_a * spin_jz(p.n_spins) + p.omega_a * p.g2 * exchange_bracket(p);
    return to_hermitian(hs_shape(p), h);
}

HermitianMatrix build_charging_hamiltonian(const ModelParams& p, BasisKind kind) {
    if (kind == BasisKind::Hs) return build_h_hs(p);
    return build_h_b(p, BasisKind::Chs) + build_h_c(p);
}

namespace closed_form {

namespace {
double lower(double j, double m) { return j * (j + 1) - m * (m - 1); }   // |J- |m>|^2
double raise(double j, double m) { return j * (j + 1) - m * (m + 1); }   // |J+ |m>|^2
double safe_sqrt(double x) { return std::sqrt(std::max(0.0, x)); }
}  // namespace

double f1(int k, double j, double m) { return safe_sqrt((k + 1) * lower(j, m)); }
double f2(int k, double j, double m) { return safe_sqrt((k + 1) * raise(j, m)); }
double f3(int k, double j, double m) { return safe_sqrt(k * lower(j, m)); }
double f4(int k, double j, double m) { return safe_sqrt(k * raise(j, m)); }
double f5(double j, double m) { return lower(j, m); }
double f6(double j, double m) { return raise(j, m); }
double f7(double j, double m) { return safe_sqrt(raise(j, m + 1) * raise(j, m)); }
double f8(double j, double m) { return safe_sqrt(lower(j, m - 1) * lower(j, m)); }

}  // namespace closed_form

namespace {

// Spin-only part shared by both closed forms: g2 [...] evaluated between q' and q.
double exchange_element(int q_out, int q_in, const ModelParams& p) {
    using namespace closed_form;
    const double j = p.j();
    const double m = j - q_in;
    if (q_out == q_in) {
        return p.g2 * (f5(j, m) + f6(j, m) + 2.0 * p.delta * m * m - 0.5 * p.n_spins * (2.0 + p.delta));
    }
    // f7 is the J+^2 amplitude (m -> m+2, q' = q-2); f8 the J-^2 amplitude.
    if (q_out == q_in - 2) return p.g2 * p.gamma * f7(j, m);
    if (q_out == q_in + 2) return p.g2 * p.gamma * f8(j, m);
    return 0.0;
}

void check_label(int n, int q, const ModelParams& p, bool with_photons) {
    if (q < 0 || q > p.n_spins || (with_photons && (n < 0 || n > p.n_ph))) {
        throw std::out_of_range("matrix element: label outside basis");
    }
}

}  // namespace

cplx matrix_element_chs(int n_out, int q_out, int n_in, int q_in, const ModelParams& p) {
    using namespace closed_form;
    check_label(n_out, q_out, p, true);
    check_label(n_in, q_in, p, true);
    const double j = p.j();
    const double m = j - q_in;
    double v = 0.0;
    if (n_out == n_in) {
        if (q_out == q_in) v += n_in + m;
        v += exchange_element(q_out, q_in, p);
    } else if (n_out == n_in + 1) {
        if (q_out == q_in + 1) v += p.g1 * f1(n_in, j, m);
        if (q_out == q_in - 1) v += p.g1 * f2(n_in, j, m);
    } else if (n_out == n_in - 1) {
        if (q_out == q_in + 1) v += p.g1 * f3(n_in, j, m);
        if (q_out == q_in - 1) v += p.g1 * f4(n_in, j, m);
    }
    return p.omega_c * v;
}

cplx matrix_element_hs(int q_out, int q_in, const ModelParams& p) {
    check_label(0, q_out, p, false);
    check_label(0, q_in, p, false);
    double v = exchange_element(q_out, q_in, p);
    if (q_out == q_in) v += p.j() - q_in;
    return p.omega_a * v;
}

// ---------------------------------------------------------------------------
// Pauli-basis oracle

namespace {

using Triplets = std::vector<Eigen::Triplet<cplx>>;

bool is_down(unsigned s, int site) { return (s >> site) & 1U; }

// Spin-only pieces on the 2^N space.
struct SpinPieces {
    Eigen::SparseMatrix<cplx> field;      // omega_a/2 sum_i sigma^z_i
    Eigen::SparseMatrix<cplx> exchange;   // omega_a g2 sum_{i<j} [...]
    Eigen::SparseMatrix<cplx> sx_total;   // sum_i sigma^x_i
};

SpinPieces spin_pieces(const ModelParams& p) {
    const int n = p.n_spins;
    const unsigned dim = 1U << n;
    Triplets field, exch, sx;
    const cplx i_unit(0.0, 1.0);
    for (unsigned s = 0; s < dim; ++s) {
        double zsum = 0.0;
        for (int a = 0; a < n; ++a) {
            zsum += is_down(s, a) ? -1.0 : 1.0;
            sx.emplace_back(static_cast<int>(s ^ (1U << a)), static_cast<int>(s), 1.0);
        }
        field.emplace_back(static_cast<int>(s), static_cast<int>(s), 0.5 * p.omega_a * zsum);
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                const unsigned flipped = s ^ (1U << a) ^ (1U << b);
                // sigma^y|up> = i|down>, sigma^y|down> = -i|up>
                const cplx ya = is_down(s, a) ? -i_unit : i_unit;
                const cplx yb = is_down(s, b) ? -i_unit : i_unit;
                const double za = is_down(s, a) ? -1.0 : 1.0;
                const double zb = is_down(s, b) ? -1.0 : 1.0;
                const double scale = p.omega_a * p.g2;
                exch.emplace_back(static_cast<int>(flipped), static_cast<int>(s),
                                  scale * ((1.0 + p.gamma) + (1.0 - p.gamma) * ya * yb));
                exch.emplace_back(static_cast<int>(s), static_cast<int>(s), scale * p.delta * za * zb);
            }
        }
    }
    SpinPieces out;
    out.field.resize(dim, dim);
    out.field.setFromTriplets(field.begin(), field.end());
    out.exchange.resize(dim, dim);
    out.exchange.setFromTriplets(exch.begin(), exch.end());
    out.sx_total.resize(dim, dim);
    out.sx_total.setFromTriplets(sx.begin(), sx.end());
    return out;
}

template <typename Scalar>
Eigen::SparseMatrix<Scalar> sparse_kron(const Eigen::SparseMatrix<Scalar>& a, const Eigen::SparseMatrix<Scalar>& b) {
    std::vector<Eigen::Triplet<Scalar>> t;
    t.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
    for (int ka = 0; ka < a.outerSize(); ++ka) {
        for (typename Eigen::SparseMatrix<Scalar>::InnerIterator ia(a, ka); ia; ++ia) {
            for (int kb = 0; kb < b.outerSize(); ++kb) {
                for (typename Eigen::SparseMatrix<Scalar>::InnerIterator ib(b, kb); ib; ++ib) {
                    t.emplace_back(static_cast<int>(ia.row() * b.rows() + ib.row()),
                                   static_cast<int>(ia.col() * b.cols() + ib.col()), ia.value() * ib.value());
                }
            }
        }
    }
    Eigen::SparseMatrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

Eigen::SparseMatrix<cplx> sparse_identity(Eigen::Index n) {
    Eigen::SparseMatrix<cplx> id(n, n);
    id.setIdentity();
    return id;
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

PauliOracle pauli_oracle(const ModelParams& p, BasisKind kind) {
    validate(p);
    if (p.n_spins > PauliOracle::kMaxSpins) {
        throw std::invalid_argument("pauli_oracle: n_spins > 8 is too large for the full-space oracle");
    }
    const int n = p.n_spins;
    const Eigen::Index spin_dim = Eigen::Index{1} << n;
    const Eigen::Index photon_dim = kind == BasisKind::Chs ? p.n_ph + 1 : 1;
    const auto pieces = spin_pieces(p);

    PauliOracle o;
    o.kind = kind;
    o.n_spins = n;
    o.n_ph = kind == BasisKind::Chs ? p.n_ph : 0;

    const auto id_n = sparse_identity(photon_dim);
    o.h_b = sparse_kron(id_n, pieces.field);
    o.h = o.h_b + sparse_kron(id_n, pieces.exchange);
    if (kind == BasisKind::Chs) {
        const Eigen::SparseMatrix<cplx> a = photon_annihilation(p.n_ph).cast<cplx>().sparseView();
        const Eigen::SparseMatrix<cplx> a_dag = a.adjoint();
        const Eigen::SparseMatrix<cplx> number = a_dag * a;
        const auto id_s = sparse_identity(spin_dim);
        o.h += p.omega_c * sparse_kron(number, id_s);
        o.h += p.g1 * sparse_kron(Eigen::SparseMatrix<cplx>(a + a_dag), pieces.sx_total);
    }

    // Dicke state with q down spins: uniform superposition over popcount(s) == q.
    std::vector<Eigen::Triplet<double>> emb;
    for (Eigen::Index ph = 0; ph < photon_dim; ++ph) {
        for (unsigned s = 0; s < static_cast<unsigned>(spin_dim); ++s) {
            const int q = std::popcount(s);
            emb.emplace_back(static_cast<int>(ph * spin_dim + s), static_cast<int>(ph * (n + 1) + q),
                             1.0 / std::sqrt(binomial(n, q)));
        }
    }
    o.embedding.resize(photon_dim * spin_dim, photon_dim * (n + 1));
    o.embedding.setFromTriplets(emb.begin(), emb.end());
    return o;
}

Eigen::MatrixXcd PauliOracle::symmetric_sector() const {
    const Eigen::SparseMatrix<cplx> e = embedding.cast<cplx>();
    return Eigen::MatrixXcd(Eigen::SparseMatrix<cplx>(e.adjoint() * h * e));
}

Eigen::SparseMatrix<cplx> PauliOracle::total_spin_squared() const {
    const Eigen::Index spin_dim = Eigen::Index{1} << n_spins;
    Triplets tx, ty, tz;
    const cplx i_unit(0.0, 1.0);
    for (unsigned s = 0; s < static_cast<unsigned>(spin_dim); ++s) {
        for (int a = 0; a < n_spins; ++a) {
            const int flipped = static_cast<int>(s ^ (1U << a));
            tx.emplace_back(flipped, static_cast<int>(s), 0.5);
            ty.emplace_back(flipped, static_cast<int>(s), is_down(s, a) ? -0.5 * i_unit : 0.5 * i_unit);
            tz.emplace_back(static_cast<int>(s), static_cast<int>(s), is_down(s, a) ? -0.5 : 0.5);
        }
    }
    Eigen::SparseMatrix<cplx> jx(spin_dim, spin_dim), jy(spin_dim, spin_dim), jz(spin_dim, spin_dim);
    jx.setFromTriplets(tx.begin(), tx.end());
    jy.setFromTriplets(ty.begin(), ty.end());
    jz.setFromTriplets(tz.begin(), tz.end());
    const Eigen::SparseMatrix<cplx> j2 = jx * jx + jy * jy + jz * jz;
    const Eigen::Index photon_dim = kind == BasisKind::Chs ? n_ph + 1 : 1;
    return sparse_kron(sparse_identity(photon_dim), j2);
}

}  // namespace chsqb
