#include "chsqb/sweepfit.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

namespace chsqb {

namespace {

constexpr const char* kSweepable[] = {"g1", "g2", "gamma", "delta", "omega_a", "omega_c"};

}  // namespace

bool is_sweepable(const std::string& name) {
    for (const char* s : kSweepable)
        if (name == s) return true;
    return false;
}

void set_param(ModelParams& p, const std::string& name, double value) {
    if (name == "g1") p.g1 = value;
    else if (name == "g2") p.g2 = value;
    else if (name == "gamma") p.gamma = value;
    else if (name == "delta") p.delta = value;
    else if (name == "omega_a") p.omega_a = value;
    else if (name == "omega_c") p.omega_c = value;
    else throw std::invalid_argument("axis '" + name + "' is not a sweepable parameter");
}

PointMetrics evaluate_point(const ModelParams& p, BasisKind kind, const MetricSet& metrics, const SweepOptions& opts) {
    PointMetrics out;
    try {
        validate(p);
        if (metrics.dynamics) {
            const auto tr = energy_trace(p, kind, opts.trace);
            out.e_max = tr.e_max;
            out.p_max = tr.p_max;
            out.t_e = tr.t_e;
            out.t_p = tr.t_p;
            out.converged = tr.converged();
        }
        if (metrics.ground) {
            if (kind != BasisKind::Chs) throw std::invalid_argument("ground metrics need the Chs model");
            const auto gs = chs_ground_state(p, opts.ground_hamiltonian);
            out.order = order_parameter(gs.state);
            out.entropy = von_neumann_entropy(reduce(gs.state, Subsystem::Battery));
            out.negativity = log_negativity(DensityMatrix::pure(gs.state), gs.state.shape());
        }
    } catch (const std::exception& e) {
        out = PointMetrics{};
        out.ok = false;
        out.error = e.what();
    }
    return out;
}

SweepGrid sweep2d(const ModelParams& base, const Axis& axis1, const Axis& axis2, const MetricSet& metrics,
                  BasisKind kind, const SweepOptions& opts) {
    for (const Axis* ax : {&axis1, &axis2}) {
        if (!is_sweepable(ax->name)) throw std::invalid_argument("axis '" + ax->name + "' is not sweepable");
        if (ax->values.empty()) throw std::invalid_argument("axis '" + ax->name + "' has no values");
    }
    if (!metrics.dynamics && !metrics.ground) throw std::invalid_argument("sweep2d: no metrics requested");

    SweepGrid grid{axis1, axis2, metrics, {}};
    const std::size_t n2 = axis2.values.size();
    grid.points.resize(axis1.values.size() * n2);
    parallel_for(grid.points.size(), opts.threads, [&](std::size_t idx) {
        ModelParams p = base;
        set_param(p, axis1.name, axis1.values[idx / n2]);
        set_param(p, axis2.name, axis2.values[idx % n2]);
        grid.points[idx] = evaluate_point(p, kind, metrics, opts);
    });
    return grid;
}

PowerLawFit fit_power_law(const std::vector<double>& ns, const std::vector<double>& values) {
    if (ns.size() != values.size()) throw std::invalid_argument("fit_power_law: size mismatch");
    if (ns.size() < 3) throw std::invalid_argument("fit_power_law: need at least 3 points");
    const auto count = static_cast<double>(ns.size());
    std::vector<double> x, y;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (!(ns[i] > 0.0) || !(values[i] > 0.0)) {
            throw std::invalid_argument("fit_power_law: non-positive value at point " + std::to_string(i));
        }
        x.push_back(std::log(ns[i]));
        y.push_back(std::log(values[i]));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_power_law: all N values coincide");
    PowerLawFit fit;
    fit.alpha = sxy / sxx;
    const double intercept = my - fit.alpha * mx;
    fit.beta = std::exp(intercept);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.alpha * x[i] + intercept);
        fit.residual += r * r;
    }
    return fit;
}

ScalingFit scaling_study(const ModelParams& base, const std::vector<int>& ns, BasisKind kind,
                         const SweepOptions& opts, int nph_factor) {
    if (ns.empty()) throw std::invalid_argument("scaling_study: empty N list");
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (ns[i] < 1) throw std::invalid_argument("scaling_study: N must be >= 1");
        if (i > 0 && ns[i] <= ns[i - 1]) throw std::invalid_argument("scaling_study: N list must be ascending");
    }
    std::vector<EnergyTrace> traces(ns.size());
    std::vector<std::exception_ptr> errors(ns.size());
    parallel_for(ns.size(), opts.threads, [&](std::size_t i) {
        try {
            traces[i] = energy_trace(base.with_spins(ns[i], nph_factor), kind, opts.trace);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    ScalingFit out;
    std::vector<double> fit_n, fit_e, fit_p;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const auto& tr = traces[i];
        out.ns.push_back(ns[i]);
        out.e_max.push_back(tr.e_max);
        out.t_e.push_back(tr.t_e);
        out.p_max.push_back(tr.p_max);
        out.t_p.push_back(tr.t_p);
        out.converged.push_back(tr.converged());
        if (tr.converged()) {
            fit_n.push_back(ns[i]);
            fit_e.push_back(tr.e_max);
            fit_p.push_back(tr.p_max);
        }
    }
    out.power = fit_power_law(fit_n, fit_p);
    out.energy = fit_power_law(fit_n, fit_e);
    return out;
}

ConvergenceReport cutoff_convergence(const ModelParams& p, const std::vector<int>& factors, const SweepOptions& opts) {
    if (factors.empty()) throw std::invalid_argument("cutoff_convergence: empty factor list");
    for (int f : factors)
        if (f < 1) throw std::invalid_argument("cutoff_convergence: factors must be >= 1");

    ConvergenceReport report;
    report.rows.resize(factors.size());
    std::vector<std::exception_ptr> errors(factors.size());
    parallel_for(factors.size(), opts.threads, [&](std::size_t i) {
        try {
            const ModelParams q = p.with_spins(p.n_spins, factors[i]);
            report.rows[i] = {factors[i], q.n_ph, energy_trace(q, BasisKind::Chs, opts.trace).e_max, 0.0};
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::size_t ref = 0;
    for (std::size_t i = 1; i < factors.size(); ++i)
        if (factors[i] > factors[ref]) ref = i;
    const double e_ref = report.rows[ref].e_max;
    for (auto& row : report.rows) {
        const double diff = std::abs(row.e_max - e_ref);
        row.rel_dev = e_ref != 0.0 ? diff / std::abs(e_ref) : diff;
        report.max_rel_dev = std::max(report.max_rel_dev, row.rel_dev);
    }
    // Order by cutoff and check that deviations shrink towards the reference.
    std::vector<ConvergenceRow> sorted = report.rows;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.factor < b.factor; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i].rel_dev > sorted[i - 1].rel_dev) report.monotone = false;
    return report;
}

}  // namespace chsqb
