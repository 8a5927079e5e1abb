#ifndef SDVO_SIMULATOR_HPP
#define SDVO_SIMULATOR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdvo/generator.hpp"
#include "sdvo/model.hpp"
#include "sdvo/solver.hpp"

namespace sdvo {

enum class Policy { Baseline, Optimized };

std::string policy_name(Policy p);

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SimConfig {
    double tick_s = 1.0;
    double container_start_s = 2.0;
    double container_stop_s = 1.0;
};

struct FlowSample {
    int flow_id = 0;
    double target_mbps = 0.0;
    double observed_mbps = 0.0;
    double health_pct = 0.0;
};

struct EcuSample {
    int ecu = 0;
    double cpu_pct = 0.0;  // consumed, capped at 100
    double mem_mb = 0.0;
};

struct TickRecord {
    int tick = 0;
    int state_index = 0;
    bool transition = false;
    std::vector<FlowSample> flows;
    std::vector<EcuSample> ecus;
};

struct StateRecord {
    int state_index = 0;
    std::vector<int> requested;
    Assignment assignment;
    int starts = 0;
    int stops = 0;
    // measured by the solver; zero for the baseline policy
    double solve_time_s = 0.0;
    // deterministic container start/stop accounting (max over ECUs)
    double container_transition_s = 0.0;
    int transition_ticks = 0;
    int steady_flow_count = 0;  // flows active once all containers are up
};

struct MetricsLog {
    Policy policy = Policy::Baseline;
    std::uint64_t instance_seed = 0;
    std::uint64_t scenario_seed = 0;
    std::string config_hash;  // binds log to (instance, scenario, sim config)
    std::vector<StateRecord> states;
    std::vector<TickRecord> ticks;
};

// Contention model for one tick:
//   1. per-ECU CPU factor f_e = min(1, 100 / demand_e), applied to the
//      offered rate of every flow whose source app runs on e;
//   2. per directed link, proportional scaling to capacity when the offered
//      sum exceeds it; a cross-ECU flow takes the worse of its two links.
// Memory is accounted but never throttles.
TickRecord step_tick(const Instance& instance, const Assignment& active, const SimConfig& cfg);

MetricsLog run_scenario(const Instance& instance, const Scenario& scenario, Policy policy,
                        const SimConfig& cfg);

}  // namespace sdvo

#endif
