#ifndef SDVO_METRICS_HPP
#define SDVO_METRICS_HPP

#include <filesystem>
#include <stdexcept>
#include <vector>

#include "sdvo/simulator.hpp"

namespace sdvo {

struct MetricsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Quartiles {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
};

// Linear interpolation between closest ranks over a copy of the samples.
Quartiles quartiles(std::vector<double> samples);

struct StateHealth {
    int state_index = 0;
    Quartiles health;
    std::size_t n_samples = 0;
};

struct HealthSummary {
    Quartiles health;
    std::size_t n_samples = 0;
    // flow samples absent during transition ticks (containers not up yet)
    std::size_t excluded_samples = 0;
    std::vector<StateHealth> per_state;
};

HealthSummary summarize_health(const MetricsLog& log);

struct UsageSummary {
    double mean_cpu_pct = 0.0;
    double peak_cpu_pct = 0.0;
    double peak_mem_mb = 0.0;
    // ticks where some ECU sits at >= 99.5% CPU
    int cpu_saturated_ticks = 0;
};

UsageSummary summarize_usage(const MetricsLog& log);

struct RunSummary {
    HealthSummary health;
    UsageSummary usage;
    double total_solve_time_s = 0.0;
    double total_container_time_s = 0.0;
    double total_transition_time_s = 0.0;  // solve + container
};

RunSummary summarize_run(const MetricsLog& log);

struct RunComparison {
    RunSummary baseline;
    RunSummary optimized;
    double median_health_delta_pct = 0.0;       // optimized - baseline
    double transition_time_delta_s = 0.0;       // optimized - baseline
    int saturated_ticks_delta = 0;              // optimized - baseline
};

// Both logs must come from the same instance, scenario, and sim config.
RunComparison compare_runs(const MetricsLog& baseline, const MetricsLog& optimized);

// Plot-ready flat files: per-tick health quartile band per run, per-tick ECU
// usage per run, and per-state mode choices.
void emit_plot_series(const MetricsLog& baseline, const MetricsLog& optimized,
                      const std::filesystem::path& out_dir);

}  // namespace sdvo

#endif
