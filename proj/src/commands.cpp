#include "chsqb/commands.hpp"

#include "chsqb/dynamics.hpp"
#include "chsqb/errors.hpp"
#include "chsqb/groundinfo.hpp"
#include "chsqb/sweepfit.hpp"

#include <cmath>
#include <exception>
#include <limits>

namespace chsqb {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

SweepOptions sweep_options(const RunConfig& cfg) {
    SweepOptions o;
    o.trace.horizon = cfg.t_max;
    o.trace.samples = cfg.samples;
    o.ground_hamiltonian = cfg.ground_hamiltonian;
    o.threads = cfg.threads;
    return o;
}

void require_chs(const RunConfig& cfg, const std::string& what) {
    if (cfg.model != BasisKind::Chs) throw ConfigError("model", what + " is only defined for the chs model");
}

Axis make_axis(const AxisSpec& spec) {
    return {spec.name, linspace(spec.min, spec.max, spec.points)};
}

CsvTable run_evolve(const RunConfig& cfg) {
    const auto tr = energy_trace(cfg.params, cfg.model, sweep_options(cfg).trace);
    CsvTable t{{"t", "E", "P"}, {}, {}};
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        if (std::abs(tr.power[i] * tr.times[i] - tr.energy[i]) > 1e-12 * std::max(1.0, std::abs(tr.energy[i]))) {
            throw InvariantError("evolve: P(t) t != E(t)");
        }
        t.rows.push_back({tr.times[i], tr.energy[i], tr.power[i]});
    }
    return t;
}

CsvTable run_sweep(const RunConfig& cfg) {
    MetricSet metrics;
    metrics.ground = cfg.ground_metrics;
    if (metrics.ground) require_chs(cfg, "ground_metrics");
    const auto grid = sweep2d(cfg.params, make_axis(cfg.axis1), make_axis(cfg.axis2), metrics, cfg.model,
                              sweep_options(cfg));
    CsvTable t{{"axis1", "axis2", "Emax", "Pmax", "tE", "tP"}, {}, {}};
    if (metrics.ground) t.header.insert(t.header.end(), {"order", "S", "EN"});
    for (std::size_t i = 0; i < grid.axis1.values.size(); ++i) {
        for (std::size_t k = 0; k < grid.axis2.values.size(); ++k) {
            const auto& pt = grid.at(i, k);
            std::vector<double> row{grid.axis1.values[i], grid.axis2.values[k]};
            if (pt.ok) {
                row.insert(row.end(), {pt.e_max, pt.p_max, pt.t_e, pt.t_p});
                if (metrics.ground) row.insert(row.end(), {pt.order, pt.entropy, pt.negativity});
            } else {
                row.resize(t.header.size(), kNan);
            }
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

CsvTable run_scaling(const RunConfig& cfg) {
    const auto fit = scaling_study(cfg.params, cfg.resolved_n_list(), cfg.model, sweep_options(cfg), cfg.nph_factor);
    CsvTable t{{"N", "Emax", "tE", "Pmax", "tP"}, {}, {}};
    for (std::size_t i = 0; i < fit.ns.size(); ++i) {
        t.rows.push_back({static_cast<double>(fit.ns[i]), fit.e_max[i], fit.t_e[i], fit.p_max[i], fit.t_p[i]});
    }
    t.trailing_comments.push_back("alpha_P=" + format_number(fit.power.alpha) +
                                  ",beta_P=" + format_number(fit.power.beta) +
                                  ",alpha_E=" + format_number(fit.energy.alpha));
    return t;
}

CsvTable run_ground(const RunConfig& cfg) {
    require_chs(cfg, "ground");
    const auto g1s = cfg.g1_list.empty() ? std::vector<double>{cfg.params.g1} : cfg.g1_list;
    const auto g2s = cfg.g2_list.empty() ? std::vector<double>{cfg.params.g2} : cfg.g2_list;
    CsvTable t{{"g1", "g2", "energy", "order", "S", "EN"}, {}, {}};
    t.rows.resize(g1s.size() * g2s.size());
    std::vector<std::exception_ptr> errors(t.rows.size());
    parallel_for(t.rows.size(), cfg.threads, [&](std::size_t idx) {
        try {
            ModelParams p = cfg.params;
            p.g1 = g1s[idx / g2s.size()];
            p.g2 = g2s[idx % g2s.size()];
            const auto gs = chs_ground_state(p, cfg.ground_hamiltonian);
            t.rows[idx] = {p.g1,
                           p.g2,
                           gs.energy,
                           order_parameter(gs.state),
                           von_neumann_entropy(reduce(gs.state, Subsystem::Battery)),
                           log_negativity(DensityMatrix::pure(gs.state), gs.state.shape())};
        } catch (...) {
            errors[idx] = std::current_exception();
        }
    });
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return t;
}

CsvTable run_wigner(const RunConfig& cfg) {
    require_chs(cfg, "wigner");
    const auto gs = chs_ground_state(cfg.params, cfg.ground_hamiltonian);
    const double extent = cfg.wigner_extent > 0.0 ? cfg.wigner_extent : 2.0 * std::sqrt(cfg.params.n_ph);
    const auto axis = linspace(-extent, extent, cfg.wigner_points);
    const auto grid = wigner(reduce(gs.state, Subsystem::Cavity), axis, axis);
    CsvTable t{{"x", "p", "W"}, {}, {}};
    for (std::size_t i = 0; i < grid.xs.size(); ++i)
        for (std::size_t k = 0; k < grid.ps.size(); ++k)
            t.rows.push_back({grid.xs[i], grid.ps[k],
                              grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k))});
    return t;
}

CsvTable run_convergence(const RunConfig& cfg) {
    require_chs(cfg, "convergence");
    const auto report = cutoff_convergence(cfg.params, cfg.factors, sweep_options(cfg));
    CsvTable t{{"factor", "Emax", "rel_dev"}, {}, {}};
    for (const auto& row : report.rows) t.rows.push_back({static_cast<double>(row.factor), row.e_max, row.rel_dev});
    return t;
}

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names = {"evolve", "sweep", "scaling", "ground", "wigner", "convergence"};
    return names;
}

CsvTable run(const std::string& subcommand, const RunConfig& cfg) {
    if (subcommand == "evolve") return run_evolve(cfg);
    if (subcommand == "sweep") return run_sweep(cfg);
    if (subcommand == "scaling") return run_scaling(cfg);
    if (subcommand == "ground") return run_ground(cfg);
    if (subcommand == "wigner") return run_wigner(cfg);
    if (subcommand == "convergence") return run_convergence(cfg);
    throw ConfigError("subcommand", "unknown subcommand '" + subcommand + "'");
}

}  // namespace chsqb
