#ifndef SDVO_MODEL_HPP
#define SDVO_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace sdvo {

// Link ids are fixed by the star layout: uplink(e) = 2e, downlink(e) = 2e+1.
enum class LinkDirection { Uplink, Downlink };

struct DirectedLink {
    int link_id = 0;
    int endpoint_ecu = 0;
    LinkDirection direction = LinkDirection::Uplink;
    double be_capacity_mbps = 10.0;
};

struct Topology {
    std::vector<int> ecu_ids;
    std::vector<DirectedLink> links;

    static Topology star(int n_ecus, double link_mbps);

    int uplink_id(int ecu) const { return 2 * ecu; }
    int downlink_id(int ecu) const { return 2 * ecu + 1; }
};

// Index layout of a resource vector:
//   [0, E)      cpu per ECU (percent of one core-equivalent, capacity 100)
//   [E, 2E)     memory per ECU (MB)
//   [2E, 2E+L)  best-effort bandwidth per directed link (Mbps)
struct ResourceSpace {
    int n_ecus = 0;
    int n_links = 0;

    int size() const { return 2 * n_ecus + n_links; }
    int cpu(int ecu) const { return ecu; }
    int mem(int ecu) const { return n_ecus + ecu; }
    int bw(int link_id) const { return 2 * n_ecus + link_id; }
};

struct ResourceVector {
    std::vector<double> v;

    ResourceVector() = default;
    explicit ResourceVector(int size) : v(size, 0.0) {}

    double& operator[](int i) { return v[i]; }
    double operator[](int i) const { return v[i]; }
    int size() const { return static_cast<int>(v.size()); }

    ResourceVector& operator+=(const ResourceVector& o);
    ResourceVector& operator-=(const ResourceVector& o);
    friend ResourceVector operator+(ResourceVector a, const ResourceVector& b) { return a += b; }
    friend ResourceVector operator-(ResourceVector a, const ResourceVector& b) { return a -= b; }
    bool operator==(const ResourceVector&) const = default;

    // a <= b + tol, component-wise
    bool fits_within(const ResourceVector& cap, double tol = 1e-9) const;
};

struct ModeRef {
    int app_id = 0;
    int level = 0;
    bool operator==(const ModeRef&) const = default;
};

struct Flow {
    int flow_id = 0;
    ModeRef src;  // the depending mode that generates the traffic
    ModeRef dst;
    double target_mbps = 0.0;
    bool operator==(const Flow&) const = default;
};

struct ModeSpec {
    int app_id = 0;
    int level = 0;  // 1 = nominal, m_i = most degraded
    double axil = 0.0;
    double cpu_pct = 0.0;
    double mem_mb = 0.0;
    std::vector<ModeRef> deps;
    std::vector<Flow> flows;  // flows attached to this level; active set is cumulative downward
    bool operator==(const ModeSpec&) const = default;
};

struct Application {
    int app_id = 0;
    int host_ecu = 0;
    std::vector<ModeSpec> modes;  // index j-1 holds level j

    int mode_count() const { return static_cast<int>(modes.size()); }
    const ModeSpec& mode(int level) const { return modes[level - 1]; }
    bool operator==(const Application&) const = default;
};

struct Instance {
    Topology topology;
    std::vector<Application> apps;
    ResourceVector capacity;      // current BE capacity R
    ResourceVector max_capacity;  // R^max
    std::uint64_t seed = 0;       // provenance; 0 when hand-built

    ResourceSpace space() const {
        return ResourceSpace{static_cast<int>(topology.ecu_ids.size()),
                             static_cast<int>(topology.links.size())};
    }
    int app_count() const { return static_cast<int>(apps.size()); }
    const Application& app(int id) const { return apps[id]; }

    // App-level dependency adjacency: out[i] lists apps some mode of i depends on.
    std::vector<std::vector<int>> app_dependency_adjacency() const;
};

// Per-app activation level. 0 = Off, otherwise the active level in 1..m_i.
struct Assignment {
    std::vector<int> levels;

    Assignment() = default;
    explicit Assignment(int n_apps) : levels(n_apps, 0) {}

    int level(int app_id) const { return levels[app_id]; }
    bool active(int app_id) const { return levels[app_id] > 0; }
    bool operator==(const Assignment&) const = default;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationReport validate_instance(const Instance& instance);

// Full requirement vector of one mode: own cpu/mem plus the cumulative flow
// set of levels level..m_i. Same-ECU flows contribute no link bandwidth.
ResourceVector mode_requirements(const Instance& instance, int app_id, int level);

ResourceVector assignment_usage(const Instance& instance, const Assignment& a);

struct DependencyCheck {
    bool ok = true;
    std::vector<std::string> violations;
};

// A dep (k, l) of the active mode is met when app k is active at level <= l
// (at least as capable as required).
DependencyCheck dependencies_satisfied(const Instance& instance, const Assignment& a);

}  // namespace sdvo

#endif
