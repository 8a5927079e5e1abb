#ifndef SDVO_GENERATOR_HPP
#define SDVO_GENERATOR_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sdvo/model.hpp"

namespace sdvo {

// Deterministic random stream. Not tied to stdlib distribution internals so
// that the same seed yields the same instance on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();
    // Uniform in [0, 1).
    double uniform01();
    // Uniform real in [lo, hi).
    double uniform(double lo, double hi);
    // Uniform real in (0, 1].
    double uniform01_open_low();
    // Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi);
    // k distinct values from [1, n], ascending.
    std::vector<int> sample_levels(int k, int n);

  private:
    std::uint64_t state_;
};

struct GenError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GenParams {
    int n_apps = 10;
    int m_max = 1;
    double density = 0.05;  // |app edges| / (n(n-1)/2)
    double cpu_pct_min = 0.0, cpu_pct_max = 10.0;
    double mem_mb_min = 0.0, mem_mb_max = 200.0;
    int flows_per_edge_min = 1, flows_per_edge_max = 5;
    double flow_mbps_min = 0.1, flow_mbps_max = 2.0;
    int n_ecus = 4;
    double link_mbps = 10.0;
    double ecu_cpu_pct = 100.0;
    double ecu_mem_mb = 8000.0;
    std::uint64_t seed = 0;

    void validate() const;  // throws GenError on out-of-range parameters
};

// Problem sizes XS..XL: (apps, max modes, density).
std::optional<GenParams> preset_params(const std::string& name);
std::vector<std::string> preset_names();

struct ScenarioState {
    std::vector<int> requested;  // app ids, ascending, dependency-closed
    int duration_s = 0;
};

struct Scenario {
    std::uint64_t seed = 0;
    std::vector<ScenarioState> states;
};

using AppEdge = std::pair<int, int>;  // depender -> provider

// Random acyclic app graph with target edge count floor(density * n(n-1)/2).
// Edges that would close a cycle are dropped and retried; throws GenError
// after 100 n^2 attempts.
std::vector<AppEdge> gen_app_graph(int n, double density, Rng& rng);

struct ModeEdge {
    ModeRef from;  // depending mode
    ModeRef to;    // provider mode
};

// Per app edge (i -> k): c in [1, min(m_i, m_k)] edges, non-crossing by
// construction (c distinct levels per side, sorted, paired in order).
std::vector<ModeEdge> gen_mode_edges(const std::vector<AppEdge>& app_edges,
                                     const std::vector<int>& mode_counts, Rng& rng);

std::vector<Flow> gen_flows(const std::vector<ModeEdge>& mode_edges, const GenParams& p, Rng& rng);

Instance gen_instance(const GenParams& p);

Scenario gen_scenario(const Instance& instance, int n_states, Rng& rng);

}  // namespace sdvo

#endif
