// sweepfit.hpp: parameter sweeps, power-law scaling fits, cutoff convergence

#pragma once

#include "chsqb/basis.hpp"
#include "chsqb/dynamics.hpp"
#include "chsqb/groundinfo.hpp"

#include <algorithm>
#include <atomic>
#include <string>
#include <thread>
#include <vector>

namespace chsqb {

// A sweepable ModelParams field and its values.
struct Axis {
    std::string name;   // g1, g2, gamma, delta, omega_a, omega_c
    std::vector<double> values;
};

// Throws std::invalid_argument for names that are not sweepable.
void set_param(ModelParams& p, const std::string& name, double value);
bool is_sweepable(const std::string& name);

struct MetricSet {
    bool dynamics{true};   // E_max, P_max, t_E, t_P
    bool ground{false};    // order parameter, S, E_N (Chs only)
};

struct PointMetrics {
    bool ok{true};
    std::string error;
    bool converged{true};
    double e_max{0.0};
    double p_max{0.0};
    double t_e{0.0};
    double t_p{0.0};
    double order{0.0};
    double entropy{0.0};
    double negativity{0.0};
};

struct SweepOptions {
    TraceOptions trace{};
    GroundHamiltonian ground_hamiltonian{GroundHamiltonian::Full};
    int threads{1};   // <= 0: hardware concurrency
};

// Rectangular grid; point (i, k) sits at index i * axis2.size() + k (axis 2 fastest).
struct SweepGrid {
    Axis axis1;
    Axis axis2;
    MetricSet metrics;
    std::vector<PointMetrics> points;

    const PointMetrics& at(std::size_t i, std::size_t k) const { return points[i * axis2.values.size() + k]; }
};

// Metrics at a single parameter point; failures are captured in the record.
PointMetrics evaluate_point(const ModelParams& p, BasisKind kind, const MetricSet& metrics, const SweepOptions& opts);

SweepGrid sweep2d(const ModelParams& base, const Axis& axis1, const Axis& axis2, const MetricSet& metrics,
                  BasisKind kind, const SweepOptions& opts = {});

// Runs job(i) for i in [0, count) on up to `threads` workers. Each job writes
// only its own slot, so results are independent of scheduling.
template <typename Job>
void parallel_for(std::size_t count, int threads, Job&& job);

struct PowerLawFit {
    double alpha{0.0};
    double beta{0.0};
    double residual{0.0};   // sum of squared log-space residuals
};

// Ordinary least squares on (log N, log value); value = beta * N^alpha.
PowerLawFit fit_power_law(const std::vector<double>& ns, const std::vector<double>& values);

struct ScalingFit {
    std::vector<int> ns;
    std::vector<double> e_max;
    std::vector<double> t_e;
    std::vector<double> p_max;
    std::vector<double> t_p;
    std::vector<bool> converged;
    PowerLawFit power;
    PowerLawFit energy;
};

// energy_trace per N with n_ph = nph_factor * N; fits use converged points only.
ScalingFit scaling_study(const ModelParams& base, const std::vector<int>& ns, BasisKind kind,
                         const SweepOptions& opts = {}, int nph_factor = 4);

struct ConvergenceRow {
    int factor{0};
    int n_ph{0};
    double e_max{0.0};
    double rel_dev{0.0};   // relative to the largest factor
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    double max_rel_dev{0.0};
    // Deviations shrink as the cutoff grows (reported, not enforced).
    bool monotone{true};
};

ConvergenceReport cutoff_convergence(const ModelParams& p, const std::vector<int>& factors,
                                     const SweepOptions& opts = {});

// ---------------------------------------------------------------------------

template <typename Job>
void parallel_for(std::size_t count, int threads, Job&& job) {
    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                      : std::max(1U, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) job(i);
        });
    }
}

}  // namespace chsqb
