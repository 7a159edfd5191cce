#include "chsqb/sweepfit.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>

using namespace chsqb;

namespace {

ModelParams small(int n) {
    return ModelParams{}.with_spins(n);
}

SweepOptions quick(int threads = 1) {
    SweepOptions o;
    o.trace.samples = 600;
    o.threads = threads;
    return o;
}

bool same_bits(double a, double b) {
    return std::memcmp(&a, &b, sizeof a) == 0;
}

}  // namespace

TEST_CASE("power-law fit on exact data") {
    std::vector<double> ns, vs;
    for (int n = 4; n <= 20; ++n) {
        ns.push_back(n);
        vs.push_back(2.0 * std::pow(n, 1.5));
    }
    const auto fit = fit_power_law(ns, vs);
    CHECK(fit.alpha == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(fit.beta == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.residual < 1e-12);

    std::vector<double> scaled = vs;
    for (auto& v : scaled) v *= 7.5;
    const auto fit2 = fit_power_law(ns, scaled);
    CHECK(fit2.alpha == doctest::Approx(fit.alpha).epsilon(1e-12));
    CHECK(fit2.beta == doctest::Approx(7.5 * fit.beta).epsilon(1e-12));
}

TEST_CASE("power-law fit rejects bad input") {
    CHECK_THROWS_AS(fit_power_law({1, 2, 3}, {1, 0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(fit_power_law({1, 2, 3}, {1, -1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(fit_power_law({1, 2}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(fit_power_law({1, 2, 3}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(fit_power_law({2, 2, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("a 1x1 sweep equals a direct trace") {
    const ModelParams p = small(6);
    const auto opts = quick();
    const auto grid = sweep2d(p, {"g1", {p.g1}}, {"g2", {p.g2}}, MetricSet{}, BasisKind::Chs, opts);
    REQUIRE(grid.points.size() == 1);
    const auto tr = energy_trace(p, BasisKind::Chs, opts.trace);
    CHECK(grid.at(0, 0).ok);
    CHECK(same_bits(grid.at(0, 0).e_max, tr.e_max));
    CHECK(same_bits(grid.at(0, 0).p_max, tr.p_max));
    CHECK(same_bits(grid.at(0, 0).t_e, tr.t_e));
    CHECK(same_bits(grid.at(0, 0).t_p, tr.t_p));
}

TEST_CASE("exchanging the axes transposes the grid") {
    const ModelParams p = small(4);
    const Axis g1{"g1", {-1.0, 0.5, 2.0}};
    const Axis g2{"g2", {0.1, 0.7}};
    MetricSet m;
    m.ground = true;
    const auto a = sweep2d(p, g1, g2, m, BasisKind::Chs, quick());
    const auto b = sweep2d(p, g2, g1, m, BasisKind::Chs, quick());
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t k = 0; k < 2; ++k) {
            CHECK(same_bits(a.at(i, k).e_max, b.at(k, i).e_max));
            CHECK(same_bits(a.at(i, k).t_p, b.at(k, i).t_p));
            CHECK(same_bits(a.at(i, k).negativity, b.at(k, i).negativity));
        }
    }
}

TEST_CASE("sweep output is independent of the worker count") {
    const ModelParams p = small(4);
    const Axis g1{"g1", {-2.0, -0.5, 0.0, 1.0, 2.5}};
    const Axis g2{"g2", {0.0, 0.5, 1.0}};
    MetricSet m;
    m.ground = true;
    const auto a = sweep2d(p, g1, g2, m, BasisKind::Chs, quick(1));
    const auto b = sweep2d(p, g1, g2, m, BasisKind::Chs, quick(4));
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(same_bits(a.points[i].e_max, b.points[i].e_max));
        CHECK(same_bits(a.points[i].p_max, b.points[i].p_max));
        CHECK(same_bits(a.points[i].entropy, b.points[i].entropy));
        CHECK(same_bits(a.points[i].order, b.points[i].order));
    }
}

TEST_CASE("sweep validation and per-point failures") {
    const ModelParams p = small(3);
    CHECK_THROWS_AS(sweep2d(p, {"n_spins", {1.0}}, {"g2", {0.1}}, MetricSet{}, BasisKind::Chs), std::invalid_argument);
    CHECK_THROWS_AS(sweep2d(p, {"g1", {}}, {"g2", {0.1}}, MetricSet{}, BasisKind::Chs), std::invalid_argument);
    MetricSet none;
    none.dynamics = false;
    CHECK_THROWS_AS(sweep2d(p, {"g1", {1.0}}, {"g2", {0.1}}, none, BasisKind::Chs), std::invalid_argument);

    const auto grid = sweep2d(p, {"omega_a", {0.0, 1.0}}, {"g2", {0.1}}, MetricSet{}, BasisKind::Chs, quick());
    CHECK_FALSE(grid.at(0, 0).ok);
    CHECK_FALSE(grid.at(0, 0).error.empty());
    CHECK(grid.at(1, 0).ok);

    MetricSet ground;
    ground.ground = true;
    CHECK_FALSE(sweep2d(p, {"g1", {1.0}}, {"g2", {0.1}}, ground, BasisKind::Hs, quick()).at(0, 0).ok);
}

TEST_CASE("anisotropy matters little at weak exchange") {
    const ModelParams base;
    const Axis gamma{"gamma", {-1.0, 0.0, 1.0}};
    const Axis delta{"delta", {0.0, 1.0, 2.0}};
    const auto spread = [&](double g2) {
        ModelParams p = base;
        p.g2 = g2;
        const auto grid = sweep2d(p, gamma, delta, MetricSet{}, BasisKind::Chs);
        double lo = 1e300, hi = -1e300;
        for (const auto& pt : grid.points) {
            lo = std::min(lo, pt.e_max);
            hi = std::max(hi, pt.e_max);
        }
        return hi - lo;
    };
    CHECK(spread(0.05) < 0.25 * spread(1.0));
}

TEST_CASE("cavity coupling drives the charging") {
    const ModelParams base;
    const auto grid = sweep2d(base, {"g1", {0.0, 0.1, 2.0}}, {"g2", {0.0, 0.5, 1.0}}, MetricSet{}, BasisKind::Chs);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(grid.at(0, k).e_max < 0.2 * grid.at(2, k).e_max);
        // weak coupling still charges within the horizon, but slowly
        CHECK(grid.at(1, k).t_e > 10.0 * grid.at(2, k).t_e);
    }
    CHECK(grid.at(0, 0).e_max == 0.0);
}

TEST_CASE("scaling study") {
    SweepOptions o = quick();
    const auto fit = scaling_study(ModelParams{}, {4, 6, 8}, BasisKind::Chs, o);
    CHECK(fit.ns == std::vector<int>{4, 6, 8});
    CHECK(fit.converged.size() == 3);
    CHECK(fit.power.alpha > 1.0);

    ModelParams frozen;
    frozen.g1 = frozen.g2 = 0.0;
    CHECK_THROWS_AS(scaling_study(frozen, {4, 6, 8}, BasisKind::Chs, o), std::invalid_argument);
    CHECK_THROWS_AS(scaling_study(ModelParams{}, {6, 4, 8}, BasisKind::Chs, o), std::invalid_argument);
    CHECK_THROWS_AS(scaling_study(ModelParams{}, {}, BasisKind::Chs, o), std::invalid_argument);
}

TEST_CASE("HS stored energy scales less regularly than CHS") {
    const auto chs = scaling_study(ModelParams{}, {6, 8, 10, 12, 14, 16}, BasisKind::Chs);
    const auto hs = scaling_study(ModelParams{}, {10, 20, 30, 40, 50, 60}, BasisKind::Hs);
    CHECK(hs.energy.residual > chs.energy.residual);
}

TEST_CASE("cutoff convergence") {
    const auto report = cutoff_convergence(ModelParams{}, {3, 4, 6});
    REQUIRE(report.rows.size() == 3);
    CHECK(report.rows[2].rel_dev == 0.0);
    CHECK(report.rows[1].n_ph == 40);
    CHECK(report.rows[1].rel_dev < 1e-3);
    CHECK(report.max_rel_dev == report.rows[0].rel_dev);

    ModelParams decoupled;
    decoupled.g1 = 0.0;
    const auto flat = cutoff_convergence(decoupled, {3, 4, 6});
    CHECK(flat.max_rel_dev == 0.0);
    CHECK(flat.monotone);
    CHECK_THROWS_AS(cutoff_convergence(ModelParams{}, {}), std::invalid_argument);
}

TEST_CASE("parallel_for visits every index once") {
    std::vector<int> hits(97, 0);
    parallel_for(hits.size(), 5, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    parallel_for(0, 3, [&](std::size_t) { FAIL("no jobs expected"); });
}

TEST_CASE("sweepable names") {
    for (const char* n : {"g1", "g2", "gamma", "delta", "omega_a", "omega_c"}) CHECK(is_sweepable(n));
    CHECK_FALSE(is_sweepable("n_ph"));
    ModelParams p;
    set_param(p, "delta", 0.25);
    CHECK(p.delta == 0.25);
    CHECK_THROWS_AS(set_param(p, "bogus", 1.0), std::invalid_argument);
}
