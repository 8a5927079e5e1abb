#include "sdvo/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace sdvo {

Rng::Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {
    // warm up so that nearby seeds diverge immediately
    next();
    next();
}

std::uint64_t Rng::next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

double Rng::uniform01_open_low() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

int Rng::uniform_int(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::vector<int> Rng::sample_levels(int k, int n) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    for (int i = 0; i < k; ++i) {
        int j = uniform_int(i, n - 1);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

void GenParams::validate() const {
    if (n_apps < 1) throw GenError("n_apps must be >= 1");
    if (m_max < 1) throw GenError("m_max must be >= 1");
    if (density < 0.0 || density > 1.0) throw GenError("density must be in [0, 1]");
    if (n_ecus < 1) throw GenError("n_ecus must be >= 1");
    if (link_mbps <= 0) throw GenError("link_mbps must be positive");
    if (cpu_pct_min < 0 || cpu_pct_max < cpu_pct_min) throw GenError("bad cpu range");
    if (mem_mb_min < 0 || mem_mb_max < mem_mb_min) throw GenError("bad mem range");
    if (flows_per_edge_min < 1 || flows_per_edge_max < flows_per_edge_min)
        throw GenError("bad flows-per-edge range");
    if (flow_mbps_min <= 0 || flow_mbps_max < flow_mbps_min) throw GenError("bad flow bandwidth range");
}

std::optional<GenParams> preset_params(const std::string& name) {
    GenParams p;
    if (name == "XS") {
        p.n_apps = 10; p.m_max = 1; p.density = 0.05;
    } else if (name == "S") {
        p.n_apps = 20; p.m_max = 3; p.density = 0.05;
    } else if (name == "M") {
        p.n_apps = 30; p.m_max = 4; p.density = 0.10;
    } else if (name == "L") {
        p.n_apps = 50; p.m_max = 5; p.density = 0.15;
    } else if (name == "XL") {
        p.n_apps = 100; p.m_max = 5; p.density = 0.20;
    } else {
        return std::nullopt;
    }
    return p;
}

std::vector<std::string> preset_names() { return {"XS", "S", "M", "L", "XL"}; }

namespace {

bool reachable(const std::vector<std::set<int>>& adj, int from, int to) {
    std::vector<int> stack{from};
    std::vector<bool> seen(adj.size(), false);
    seen[from] = true;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        if (u == to) return true;
        for (int w : adj[u])
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    return false;
}

}  // namespace

std::vector<AppEdge> gen_app_graph(int n, double density, Rng& rng) {
    const long pairs = static_cast<long>(n) * (n - 1) / 2;
    const long target = static_cast<long>(std::floor(density * static_cast<double>(pairs)));
    std::vector<AppEdge> edges;
    if (target == 0) return edges;

    std::vector<std::set<int>> adj(n);
    std::set<std::pair<int, int>> undirected;
    const long max_attempts = 100L * n * n;
    long attempts = 0;
    while (static_cast<long>(edges.size()) < target) {
        if (++attempts > max_attempts)
            throw GenError("gen_app_graph: could not reach target density");
        int i = rng.uniform_int(0, n - 1);
        int k = rng.uniform_int(0, n - 1);
        if (i == k) continue;
        if (undirected.count({std::min(i, k), std::max(i, k)})) continue;
        // Adding i -> k closes a cycle iff i is reachable from k; drop the
        // new edge in that case.
        if (reachable(adj, k, i)) continue;
        adj[i].insert(k);
        undirected.insert({std::min(i, k), std::max(i, k)});
        edges.push_back({i, k});
    }
    return edges;
}

std::vector<ModeEdge> gen_mode_edges(const std::vector<AppEdge>& app_edges,
                                     const std::vector<int>& mode_counts, Rng& rng) {
    std::vector<ModeEdge> out;
    for (const auto& [i, k] : app_edges) {
        int c = rng.uniform_int(1, std::min(mode_counts[i], mode_counts[k]));
        auto from_levels = rng.sample_levels(c, mode_counts[i]);
        auto to_levels = rng.sample_levels(c, mode_counts[k]);
        for (int t = 0; t < c; ++t)
            out.push_back({ModeRef{i, from_levels[t]}, ModeRef{k, to_levels[t]}});
    }
    return out;
}

std::vector<Flow> gen_flows(const std::vector<ModeEdge>& mode_edges, const GenParams& p, Rng& rng) {
    std::vector<Flow> flows;
    int next_id = 0;
    for (const auto& e : mode_edges) {
        int count = rng.uniform_int(p.flows_per_edge_min, p.flows_per_edge_max);
        for (int t = 0; t < count; ++t) {
            double mbps = rng.uniform(p.flow_mbps_min, p.flow_mbps_max);
            flows.push_back({next_id++, e.from, e.to, mbps});
        }
    }
    return flows;
}

Instance gen_instance(const GenParams& p) {
    p.validate();
    Rng rng(p.seed);

    std::vector<int> mode_counts(p.n_apps);
    for (int i = 0; i < p.n_apps; ++i) mode_counts[i] = rng.uniform_int(1, p.m_max);

    auto app_edges = gen_app_graph(p.n_apps, p.density, rng);
    auto mode_edges = gen_mode_edges(app_edges, mode_counts, rng);
    auto flows = gen_flows(mode_edges, p, rng);

    Instance instance;
    instance.seed = p.seed;
    instance.topology = Topology::star(p.n_ecus, p.link_mbps);

    instance.apps.resize(p.n_apps);
    for (int i = 0; i < p.n_apps; ++i) {
        auto& app = instance.apps[i];
        app.app_id = i;
        app.modes.resize(mode_counts[i]);

        // cpu/mem per mode, then monotone repair: cumulative max from the
        // most degraded level upward so that level 1 is component-wise maximal.
        for (int j = 0; j < mode_counts[i]; ++j) {
            app.modes[j].app_id = i;
            app.modes[j].level = j + 1;
            app.modes[j].cpu_pct = rng.uniform(p.cpu_pct_min, p.cpu_pct_max);
            app.modes[j].mem_mb = rng.uniform(p.mem_mb_min, p.mem_mb_max);
        }
        for (int j = mode_counts[i] - 2; j >= 0; --j) {
            app.modes[j].cpu_pct = std::max(app.modes[j].cpu_pct, app.modes[j + 1].cpu_pct);
            app.modes[j].mem_mb = std::max(app.modes[j].mem_mb, app.modes[j + 1].mem_mb);
        }

        // AXIL: m_i distinct draws in (0, 1], level 1 highest.
        std::vector<double> axils(mode_counts[i]);
        for (;;) {
            for (auto& x : axils) x = rng.uniform01_open_low();
            std::sort(axils.begin(), axils.end(), std::greater<>());
            if (std::adjacent_find(axils.begin(), axils.end()) == axils.end()) break;
        }
        for (int j = 0; j < mode_counts[i]; ++j) app.modes[j].axil = axils[j];

        app.host_ecu = rng.uniform_int(0, p.n_ecus - 1);
    }

    for (const auto& e : mode_edges)
        instance.apps[e.from.app_id].modes[e.from.level - 1].deps.push_back(e.to);
    for (const auto& f : flows)
        instance.apps[f.src.app_id].modes[f.src.level - 1].flows.push_back(f);

    const auto space = instance.space();
    instance.max_capacity = ResourceVector(space.size());
    for (int e = 0; e < p.n_ecus; ++e) {
        instance.max_capacity[space.cpu(e)] = p.ecu_cpu_pct;
        instance.max_capacity[space.mem(e)] = p.ecu_mem_mb;
    }
    for (const auto& l : instance.topology.links)
        instance.max_capacity[space.bw(l.link_id)] = l.be_capacity_mbps;
    instance.capacity = instance.max_capacity;

    return instance;
}

Scenario gen_scenario(const Instance& instance, int n_states, Rng& rng) {
    Scenario sc;
    auto adj = instance.app_dependency_adjacency();
    for (int s = 0; s < n_states; ++s) {
        std::set<int> requested;
        for (int i = 0; i < instance.app_count(); ++i)
            if (rng.uniform01() < 0.5) requested.insert(i);
        // close under app-level dependencies
        std::vector<int> stack(requested.begin(), requested.end());
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj[u])
                if (requested.insert(w).second) stack.push_back(w);
        }
        ScenarioState state;
        state.requested.assign(requested.begin(), requested.end());
        state.duration_s = rng.uniform_int(10, 60);
        sc.states.push_back(std::move(state));
    }
    return sc;
}

}  // namespace sdvo
