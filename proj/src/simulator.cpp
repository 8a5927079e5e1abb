#include "sdvo/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

namespace sdvo {

std::string policy_name(Policy p) { return p == Policy::Baseline ? "baseline" : "optimized"; }

namespace {

struct Fnv1a {
    std::uint64_t h = 1469598103934665603ULL;
    void mix_bytes(const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= p[i];
            h *= 1099511628211ULL;
        }
    }
    void mix(std::uint64_t v) { mix_bytes(&v, sizeof v); }
    void mix(int v) { mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); }
    void mix(double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        mix(bits);
    }
};

std::string compute_config_hash(const Instance& instance, const Scenario& scenario,
                                const SimConfig& cfg) {
    Fnv1a f;
    f.mix(instance.seed);
    f.mix(instance.app_count());
    f.mix(static_cast<int>(instance.topology.ecu_ids.size()));
    for (const auto& l : instance.topology.links) f.mix(l.be_capacity_mbps);
    for (const auto& app : instance.apps) {
        f.mix(app.app_id);
        f.mix(app.host_ecu);
        for (const auto& m : app.modes) {
            f.mix(m.level);
            f.mix(m.axil);
            f.mix(m.cpu_pct);
            f.mix(m.mem_mb);
            for (const auto& d : m.deps) {
                f.mix(d.app_id);
                f.mix(d.level);
            }
            for (const auto& fl : m.flows) {
                f.mix(fl.flow_id);
                f.mix(fl.dst.app_id);
                f.mix(fl.dst.level);
                f.mix(fl.target_mbps);
            }
        }
    }
    for (double v : instance.capacity.v) f.mix(v);
    f.mix(scenario.seed);
    for (const auto& s : scenario.states) {
        f.mix(s.duration_s);
        for (int a : s.requested) f.mix(a);
    }
    f.mix(cfg.tick_s);
    f.mix(cfg.container_start_s);
    f.mix(cfg.container_stop_s);

    std::ostringstream os;
    os << std::hex << f.h;
    return os.str();
}

int count_flows(const Instance& instance, const Assignment& a) {
    int n = 0;
    for (int i = 0; i < instance.app_count(); ++i) {
        if (!a.active(i)) continue;
        const auto& app = instance.apps[i];
        for (int j = a.level(i); j <= app.mode_count(); ++j)
            n += static_cast<int>(app.mode(j).flows.size());
    }
    return n;
}

}  // namespace

TickRecord step_tick(const Instance& instance, const Assignment& active, const SimConfig& cfg) {
    (void)cfg;
    const int n_ecus = static_cast<int>(instance.topology.ecu_ids.size());
    TickRecord rec;

    // Stage 0: per-ECU cpu/mem demand.
    std::vector<double> cpu_demand(n_ecus, 0.0), mem(n_ecus, 0.0);
    for (int i = 0; i < instance.app_count(); ++i) {
        if (!active.active(i)) continue;
        const auto& m = instance.apps[i].mode(active.level(i));
        cpu_demand[instance.apps[i].host_ecu] += m.cpu_pct;
        mem[instance.apps[i].host_ecu] += m.mem_mb;
    }
    std::vector<double> cpu_factor(n_ecus, 1.0);
    for (int e = 0; e < n_ecus; ++e)
        if (cpu_demand[e] > 100.0) cpu_factor[e] = 100.0 / cpu_demand[e];

    // Stage 1: offered rates after CPU throttling at the source.
    struct ActiveFlow {
        const Flow* flow;
        int src_ecu, dst_ecu;
        double offered;
    };
    std::vector<ActiveFlow> flows;
    for (int i = 0; i < instance.app_count(); ++i) {
        if (!active.active(i)) continue;
        const auto& app = instance.apps[i];
        for (int j = active.level(i); j <= app.mode_count(); ++j) {
            for (const auto& f : app.mode(j).flows) {
                int src_ecu = app.host_ecu;
                int dst_ecu = instance.apps[f.dst.app_id].host_ecu;
                flows.push_back({&f, src_ecu, dst_ecu, f.target_mbps * cpu_factor[src_ecu]});
            }
        }
    }

    // Stage 2: proportional sharing per directed link.
    std::vector<double> link_load(instance.topology.links.size(), 0.0);
    for (const auto& af : flows) {
        if (af.src_ecu == af.dst_ecu) continue;
        link_load[instance.topology.uplink_id(af.src_ecu)] += af.offered;
        link_load[instance.topology.downlink_id(af.dst_ecu)] += af.offered;
    }
    std::vector<double> link_factor(instance.topology.links.size(), 1.0);
    for (const auto& l : instance.topology.links)
        if (link_load[l.link_id] > l.be_capacity_mbps)
            link_factor[l.link_id] = l.be_capacity_mbps / link_load[l.link_id];

    for (const auto& af : flows) {
        double observed = af.offered;
        if (af.src_ecu != af.dst_ecu) {
            double factor = std::min(link_factor[instance.topology.uplink_id(af.src_ecu)],
                                     link_factor[instance.topology.downlink_id(af.dst_ecu)]);
            observed *= factor;
        }
        FlowSample s;
        s.flow_id = af.flow->flow_id;
        s.target_mbps = af.flow->target_mbps;
        s.observed_mbps = observed;
        s.health_pct = 100.0 * observed / af.flow->target_mbps;
        rec.flows.push_back(s);
    }
    std::sort(rec.flows.begin(), rec.flows.end(),
              [](const FlowSample& a, const FlowSample& b) { return a.flow_id < b.flow_id; });

    for (int e = 0; e < n_ecus; ++e)
        rec.ecus.push_back({e, std::min(cpu_demand[e], 100.0), mem[e]});
    return rec;
}

MetricsLog run_scenario(const Instance& instance, const Scenario& scenario, Policy policy,
                        const SimConfig& cfg) {
    for (const auto& s : scenario.states)
        for (int a : s.requested)
            if (a < 0 || a >= instance.app_count())
                throw SimError("scenario references an app the instance does not have");
    if (cfg.tick_s <= 0 || cfg.container_start_s <= 0 || cfg.container_stop_s <= 0)
        throw SimError("sim config values must be positive");

    const int n_ecus = static_cast<int>(instance.topology.ecu_ids.size());
    MetricsLog log;
    log.policy = policy;
    log.instance_seed = instance.seed;
    log.scenario_seed = scenario.seed;
    log.config_hash = compute_config_hash(instance, scenario, cfg);

    Assignment previous(instance.app_count());
    int tick = 0;

    for (std::size_t si = 0; si < scenario.states.size(); ++si) {
        const auto& state = scenario.states[si];

        StateRecord srec;
        srec.state_index = static_cast<int>(si);
        srec.requested = state.requested;
        if (policy == Policy::Baseline) {
            srec.assignment = Assignment(instance.app_count());
            for (int a : state.requested) srec.assignment.levels[a] = 1;
        } else {
            Solution sol = solve_greedy(instance, state.requested, instance.capacity);
            srec.assignment = sol.assignment;
            srec.solve_time_s = sol.solve_time_s;
        }

        // Container churn: per-ECU app-level diffs against the previous state.
        std::vector<int> starts(n_ecus, 0), stops(n_ecus, 0);
        Assignment during_transition = srec.assignment;
        for (int a = 0; a < instance.app_count(); ++a) {
            bool was = previous.active(a);
            bool now = srec.assignment.active(a);
            int ecu = instance.apps[a].host_ecu;
            if (!was && now) {
                ++starts[ecu];
                during_transition.levels[a] = 0;  // not yet started
            } else if (was && !now) {
                ++stops[ecu];
            }
        }
        double container_s = 0.0;
        for (int e = 0; e < n_ecus; ++e) {
            srec.starts += starts[e];
            srec.stops += stops[e];
            container_s = std::max(container_s, stops[e] * cfg.container_stop_s +
                                                   starts[e] * cfg.container_start_s);
        }
        srec.container_transition_s = container_s;
        // Gap ticks come from the deterministic container accounting only;
        // the measured solve time is reported but is orders of magnitude
        // below one tick.
        srec.transition_ticks = static_cast<int>(std::ceil(container_s / cfg.tick_s - 1e-12));
        srec.steady_flow_count = count_flows(instance, srec.assignment);

        for (int t = 0; t < srec.transition_ticks; ++t) {
            TickRecord rec = step_tick(instance, during_transition, cfg);
            rec.tick = tick++;
            rec.state_index = srec.state_index;
            rec.transition = true;
            log.ticks.push_back(std::move(rec));
        }
        const int steady_ticks = static_cast<int>(std::ceil(state.duration_s / cfg.tick_s - 1e-12));
        for (int t = 0; t < steady_ticks; ++t) {
            TickRecord rec = step_tick(instance, srec.assignment, cfg);
            rec.tick = tick++;
            rec.state_index = srec.state_index;
            log.ticks.push_back(std::move(rec));
        }

        previous = srec.assignment;
        log.states.push_back(std::move(srec));
    }
    return log;
}

}  // namespace sdvo
