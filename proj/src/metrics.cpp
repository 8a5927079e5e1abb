#include "sdvo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

namespace sdvo {

namespace {

double quantile_sorted(const std::vector<double>& x, double q) {
    const std::size_t n = x.size();
    if (n == 1) return x[0];
    double h = q * static_cast<double>(n - 1);
    auto lo = static_cast<std::size_t>(std::floor(h));
    auto hi = std::min(lo + 1, n - 1);
    return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

}  // namespace

Quartiles quartiles(std::vector<double> samples) {
    Quartiles q;
    if (samples.empty()) return q;
    std::sort(samples.begin(), samples.end());
    q.q1 = quantile_sorted(samples, 0.25);
    q.median = quantile_sorted(samples, 0.50);
    q.q3 = quantile_sorted(samples, 0.75);
    return q;
}

HealthSummary summarize_health(const MetricsLog& log) {
    HealthSummary sum;
    std::vector<double> all;
    std::map<int, std::vector<double>> per_state;

    for (const auto& tick : log.ticks) {
        for (const auto& f : tick.flows) {
            all.push_back(f.health_pct);
            per_state[tick.state_index].push_back(f.health_pct);
        }
        if (tick.transition) {
            // Flows of not-yet-started containers are absent on this tick.
            int expected = log.states[tick.state_index].steady_flow_count;
            int present = static_cast<int>(tick.flows.size());
            if (expected > present) sum.excluded_samples += expected - present;
        }
    }

    sum.n_samples = all.size();
    if (!all.empty()) sum.health = quartiles(std::move(all));
    for (auto& [state, samples] : per_state) {
        StateHealth sh;
        sh.state_index = state;
        sh.n_samples = samples.size();
        sh.health = quartiles(std::move(samples));
        sum.per_state.push_back(sh);
    }
    return sum;
}

UsageSummary summarize_usage(const MetricsLog& log) {
    UsageSummary u;
    std::size_t cpu_samples = 0;
    double cpu_total = 0.0;
    for (const auto& tick : log.ticks) {
        bool saturated = false;
        for (const auto& e : tick.ecus) {
            cpu_total += e.cpu_pct;
            ++cpu_samples;
            u.peak_cpu_pct = std::max(u.peak_cpu_pct, e.cpu_pct);
            u.peak_mem_mb = std::max(u.peak_mem_mb, e.mem_mb);
            if (e.cpu_pct >= 99.5) saturated = true;
        }
        if (saturated) ++u.cpu_saturated_ticks;
    }
    if (cpu_samples > 0) u.mean_cpu_pct = cpu_total / static_cast<double>(cpu_samples);
    return u;
}

RunSummary summarize_run(const MetricsLog& log) {
    RunSummary r;
    r.health = summarize_health(log);
    r.usage = summarize_usage(log);
    for (const auto& s : log.states) {
        r.total_solve_time_s += s.solve_time_s;
        r.total_container_time_s += s.container_transition_s;
    }
    r.total_transition_time_s = r.total_solve_time_s + r.total_container_time_s;
    return r;
}

RunComparison compare_runs(const MetricsLog& baseline, const MetricsLog& optimized) {
    if (baseline.config_hash != optimized.config_hash)
        throw MetricsError("compare_runs: logs come from different instance/scenario/config");

    RunComparison cmp;
    cmp.baseline = summarize_run(baseline);
    cmp.optimized = summarize_run(optimized);
    cmp.median_health_delta_pct = cmp.optimized.health.health.median - cmp.baseline.health.health.median;
    cmp.transition_time_delta_s =
        cmp.optimized.total_transition_time_s - cmp.baseline.total_transition_time_s;
    cmp.saturated_ticks_delta =
        cmp.optimized.usage.cpu_saturated_ticks - cmp.baseline.usage.cpu_saturated_ticks;
    return cmp;
}

namespace {

void write_health_series(const MetricsLog& log, const std::filesystem::path& path) {
    std::ofstream out(path);
    out << "tick,state,transition,q1,median,q3,n_flows\n";
    for (const auto& tick : log.ticks) {
        std::vector<double> h;
        h.reserve(tick.flows.size());
        for (const auto& f : tick.flows) h.push_back(f.health_pct);
        if (h.empty()) {
            out << tick.tick << ',' << tick.state_index << ',' << (tick.transition ? 1 : 0)
                << ",,,,0\n";
            continue;
        }
        Quartiles q = quartiles(std::move(h));
        out << tick.tick << ',' << tick.state_index << ',' << (tick.transition ? 1 : 0) << ','
            << q.q1 << ',' << q.median << ',' << q.q3 << ',' << tick.flows.size() << '\n';
    }
}

void write_usage_series(const MetricsLog& log, const std::filesystem::path& path) {
    std::ofstream out(path);
    out << "tick,ecu,cpu_pct,mem_mb\n";
    for (const auto& tick : log.ticks)
        for (const auto& e : tick.ecus)
            out << tick.tick << ',' << e.ecu << ',' << e.cpu_pct << ',' << e.mem_mb << '\n';
}

}  // namespace

void emit_plot_series(const MetricsLog& baseline, const MetricsLog& optimized,
                      const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    write_health_series(baseline, out_dir / "health_baseline.csv");
    write_health_series(optimized, out_dir / "health_optimized.csv");
    write_usage_series(baseline, out_dir / "usage_baseline.csv");
    write_usage_series(optimized, out_dir / "usage_optimized.csv");

    // One segment per state: requested apps with the level picked by each run.
    std::ofstream out(out_dir / "mode_choices.csv");
    out << "state,app,requested,baseline_level,optimized_level\n";
    for (std::size_t si = 0; si < optimized.states.size() && si < baseline.states.size(); ++si) {
        const auto& b = baseline.states[si];
        const auto& o = optimized.states[si];
        std::vector<bool> requested(o.assignment.levels.size(), false);
        for (int a : o.requested) requested[a] = true;
        for (std::size_t a = 0; a < o.assignment.levels.size(); ++a) {
            if (!requested[a] && b.assignment.levels[a] == 0 && o.assignment.levels[a] == 0)
                continue;
            out << si << ',' << a << ',' << (requested[a] ? 1 : 0) << ','
                << b.assignment.levels[a] << ',' << o.assignment.levels[a] << '\n';
        }
    }
}

}  // namespace sdvo
