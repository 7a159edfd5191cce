#include "chsqb/dynamics.hpp"
#include "chsqb/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace chsqb;

namespace {

ModelParams small(int n, int nph) {
    ModelParams p;
    p.n_spins = n;
    p.n_ph = nph;
    return p;
}

}  // namespace

TEST_CASE("decompose") {
    const auto p = small(2, 8);
    const auto hb = decompose(build_h_b(p, BasisKind::Chs));
    REQUIRE(hb.dim() == 27);
    for (Eigen::Index i = 0; i < 9; ++i) CHECK(hb.eigenvalues(i) == doctest::Approx(-1.0));
    for (Eigen::Index i = 9; i < 18; ++i) CHECK(hb.eigenvalues(i) == doctest::Approx(0.0));
    for (Eigen::Index i = 18; i < 27; ++i) CHECK(hb.eigenvalues(i) == doctest::Approx(1.0));

    const auto h = build_charging_hamiltonian(ModelParams{}, BasisKind::Chs);
    const auto spec = decompose(h);
    const Eigen::MatrixXcd rebuilt = spec.eigenvectors * spec.eigenvalues.cast<cplx>().asDiagonal() *
                                     spec.eigenvectors.adjoint();
    CHECK((rebuilt - h.matrix()).cwiseAbs().maxCoeff() <= 1e-9 * h.max_abs());
    const auto n = static_cast<Eigen::Index>(spec.dim());
    CHECK((spec.eigenvectors.adjoint() * spec.eigenvectors - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <
          1e-10);
    for (Eigen::Index i = 1; i < n; ++i) CHECK(spec.eigenvalues(i) >= spec.eigenvalues(i - 1));
}

TEST_CASE("evolve: identity at t=0 and global phase for a stationary state") {
    const auto p = small(3, 12);
    const auto spec = decompose(build_charging_hamiltonian(p, BasisKind::Chs));
    const auto psi0 = initial_state_chs(p);
    CHECK((evolve(spec, psi0, 0.0).amplitudes() - psi0.amplitudes()).norm() == 0.0);

    ModelParams frozen = p;
    frozen.g1 = frozen.g2 = 0.0;
    const auto fspec = decompose(build_charging_hamiltonian(frozen, BasisKind::Chs));
    for (double t : {0.3, 2.0, 17.5}) {
        const Eigen::VectorXcd psi = evolve(fspec, psi0, t).amplitudes();
        CHECK(std::abs(std::abs(psi0.amplitudes().dot(psi)) - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(evolve(fspec, initial_state_hs(p), 1.0), std::invalid_argument);
}

TEST_CASE("evolve matches a fixed-step RK4 integration, N=1") {
    ModelParams p = small(1, 4);
    p.g1 = 0.5;
    p.g2 = 0.0;
    const auto h = build_charging_hamiltonian(p, BasisKind::Chs);
    const auto psi0 = initial_state_chs(p);
    const auto ref = oracle::rk4(oracle::sparse(h.matrix()), psi0.amplitudes(), {1.0}, 1e-4);
    const auto psi = evolve(decompose(h), psi0, 1.0);
    CHECK((psi.amplitudes() - ref.front()).norm() < 1e-6);
}

TEST_CASE("stored energy") {
    const auto p = small(4, 16);
    const auto hb = build_h_b(p, BasisKind::Hs);
    const auto down = initial_state_hs(p);
    CHECK(stored_energy(down, down, hb) == 0.0);
    Eigen::VectorXcd up = Eigen::VectorXcd::Zero(5);
    up(0) = 1.0;
    CHECK(stored_energy(StateVector(hs_shape(p), up), down, hb) == doctest::Approx(4.0));
}

TEST_CASE("E(t) agrees with the RK4 oracle at defaults on a short window") {
    const ModelParams p;
    const auto h = build_charging_hamiltonian(p, BasisKind::Chs);
    const auto hb = build_h_b(p, BasisKind::Chs);
    const auto psi0 = initial_state_chs(p);
    std::vector<double> times;
    for (int k = 1; k <= 100; ++k) times.push_back(0.01 * k);
    const auto states = oracle::rk4(oracle::sparse(h.matrix()), psi0.amplitudes(), times, 1e-4);
    const Propagator prop(h, psi0, hb);
    const auto e = prop.energies(times);
    const auto hb_sparse = oracle::sparse(hb.matrix());
    const double e0 = oracle::quadratic_form(psi0.amplitudes(), hb_sparse);
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i)
        worst = std::max(worst, std::abs(e[i] - (oracle::quadratic_form(states[i], hb_sparse) - e0)));
    CHECK(worst < 1e-6);
}

TEST_CASE("unitarity, energy conservation and propagator consistency") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int draw = 0; draw < 6; ++draw) {
        ModelParams p = small(2 + draw, 4 * (2 + draw));
        p.g1 = -3.0 + 6.0 * u(rng);
        p.g2 = u(rng);
        p.gamma = -1.0 + 2.0 * u(rng);
        p.delta = 2.0 * u(rng);
        for (const auto kind : {BasisKind::Chs, BasisKind::Hs}) {
            const auto h = build_charging_hamiltonian(p, kind);
            const auto hb = build_h_b(p, kind);
            const auto psi0 = initial_state(p, kind);
            const auto spec = decompose(h);
            const Propagator prop(h, psi0, hb);
            const double total0 = expectation(psi0, h);
            for (double t : {0.05, 0.7, 3.1, 40.0}) {
                // evolve renormalises; check the raw propagation before that step
                const Eigen::VectorXcd c = spec.eigenvectors.adjoint() * psi0.amplitudes();
                Eigen::VectorXcd raw = c;
                for (Eigen::Index i = 0; i < c.size(); ++i) raw(i) *= std::polar(1.0, -spec.eigenvalues(i) * t);
                CHECK(std::abs((spec.eigenvectors * raw).norm() - 1.0) < 1e-10);

                const auto psi = evolve(spec, psi0, t);
                const double total = expectation(psi, h);
                CHECK(std::abs(total - total0) <= 1e-9 * std::max(1.0, std::abs(total0)));
                CHECK(prop.energy(t) == doctest::Approx(stored_energy(psi, psi0, hb)).epsilon(1e-9).scale(1.0));
            }
        }
    }
}

TEST_CASE("energy_trace contract") {
    ModelParams p = small(6, 24);
    TraceOptions opts;
    opts.samples = 800;
    const auto tr = energy_trace(p, BasisKind::Chs, opts);
    REQUIRE(tr.times.size() == 800);
    CHECK(tr.times.front() == 0.0);
    CHECK(tr.times.back() == doctest::Approx(20.0 * std::numbers::pi));
    CHECK(tr.energy.front() == 0.0);
    CHECK(tr.power.front() == 0.0);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        CHECK(tr.energy[i] >= -1e-9);
        CHECK(tr.energy[i] <= 6.0 + 1e-9);
        if (tr.times[i] > 0.0) CHECK(tr.power[i] * tr.times[i] == doctest::Approx(tr.energy[i]).epsilon(1e-14));
    }
    const double best_sample = *std::max_element(tr.energy.begin(), tr.energy.end());
    CHECK(tr.e_max >= best_sample);
    CHECK(tr.converged());
}

TEST_CASE("frozen dynamics store nothing") {
    ModelParams p = small(4, 16);
    p.g1 = p.g2 = 0.0;
    for (const auto kind : {BasisKind::Chs, BasisKind::Hs}) {
        const auto tr = energy_trace(p, kind);
        CHECK(tr.e_max == 0.0);
        CHECK(tr.p_max == 0.0);
        for (double e : tr.energy) CHECK(e == 0.0);
    }
}

TEST_CASE("refined maxima are independent of the sampling density") {
    const ModelParams p;
    TraceOptions coarse;
    coarse.samples = 2000;
    const auto a = energy_trace(p, BasisKind::Chs, coarse);
    const auto b = energy_trace(p, BasisKind::Chs);
    CHECK(std::abs(a.e_max - b.e_max) < 1e-6 * b.e_max);
    CHECK(std::abs(a.p_max - b.p_max) < 1e-6 * b.p_max);
}

TEST_CASE("horizon-clipped maxima are flagged") {
    ModelParams p = small(4, 16);
    TraceOptions opts;
    opts.horizon = 0.02;   // far before the first maximum
    opts.samples = 50;
    const auto tr = energy_trace(p, BasisKind::Chs, opts);
    CHECK(tr.e_at_horizon);
    CHECK_FALSE(tr.converged());
    opts.samples = 1;
    CHECK_THROWS_AS(energy_trace(p, BasisKind::Chs, opts), std::invalid_argument);
}

TEST_CASE("golden-section search") {
    const auto [v, t] = golden_section_max([](double x) { return 3.0 - (x - 1.25) * (x - 1.25); }, 0.0, 2.0, 1e-10);
    CHECK(t == doctest::Approx(1.25).epsilon(1e-8));
    CHECK(v == doctest::Approx(3.0));
}

TEST_CASE("expectation of a complex Hermitian operator") {
    const auto p = small(1, 4);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    Eigen::VectorXcd v(2);
    v << 1.0 / std::sqrt(2.0), cplx(0.0, 1.0 / std::sqrt(2.0));
    const double sy = expectation(StateVector(hs_shape(p), v), HermitianMatrix(hs_shape(p), m));
    CHECK(sy == doctest::Approx(1.0));
}
