#include "sdvo/model.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sdvo {

Topology Topology::star(int n_ecus, double link_mbps) {
    Topology t;
    t.ecu_ids.resize(n_ecus);
    for (int e = 0; e < n_ecus; ++e) {
        t.ecu_ids[e] = e;
        t.links.push_back({2 * e, e, LinkDirection::Uplink, link_mbps});
        t.links.push_back({2 * e + 1, e, LinkDirection::Downlink, link_mbps});
    }
    return t;
}

ResourceVector& ResourceVector::operator+=(const ResourceVector& o) {
    assert(v.size() == o.v.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
}

ResourceVector& ResourceVector::operator-=(const ResourceVector& o) {
    assert(v.size() == o.v.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
    return *this;
}

bool ResourceVector::fits_within(const ResourceVector& cap, double tol) const {
    if (v.size() != cap.v.size()) return false;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] > cap.v[i] + tol) return false;
    return true;
}

std::vector<std::vector<int>> Instance::app_dependency_adjacency() const {
    std::vector<std::vector<int>> out(apps.size());
    for (const auto& app : apps) {
        std::set<int> targets;
        for (const auto& mode : app.modes)
            for (const auto& dep : mode.deps) targets.insert(dep.app_id);
        out[app.app_id].assign(targets.begin(), targets.end());
    }
    return out;
}

namespace {

// DFS cycle detection over the mode-level dependency graph.
bool mode_graph_has_cycle(const Instance& instance) {
    // Node id for (app, level): running offset per app.
    std::vector<int> base(instance.apps.size() + 1, 0);
    for (std::size_t i = 0; i < instance.apps.size(); ++i)
        base[i + 1] = base[i] + instance.apps[i].mode_count();
    const int n = base.back();

    auto node = [&](int app, int level) { return base[app] + level - 1; };

    std::vector<int> color(n, 0);  // 0 white, 1 gray, 2 black
    std::vector<int> stack;
    for (int start = 0; start < n; ++start) {
        if (color[start] != 0) continue;
        stack.push_back(start);
        while (!stack.empty()) {
            int u = stack.back();
            if (color[u] == 0) {
                color[u] = 1;
                // locate (app, level) for u
                int app = static_cast<int>(std::upper_bound(base.begin(), base.end(), u) -
                                           base.begin()) -
                          1;
                int level = u - base[app] + 1;
                for (const auto& dep : instance.apps[app].mode(level).deps) {
                    if (dep.app_id < 0 || dep.app_id >= instance.app_count()) continue;
                    if (dep.level < 1 || dep.level > instance.apps[dep.app_id].mode_count())
                        continue;
                    int w = node(dep.app_id, dep.level);
                    if (color[w] == 1) return true;
                    if (color[w] == 0) stack.push_back(w);
                }
            } else {
                color[u] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

bool app_graph_has_cycle(const Instance& instance) {
    auto adj = instance.app_dependency_adjacency();
    const int n = instance.app_count();
    std::vector<int> color(n, 0);
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (color[s] != 0) continue;
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            if (color[u] == 0) {
                color[u] = 1;
                for (int w : adj[u]) {
                    if (w == u) continue;
                    if (color[w] == 1) return true;
                    if (color[w] == 0) stack.push_back(w);
                }
            } else {
                color[u] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

}  // namespace

ValidationReport validate_instance(const Instance& instance) {
    ValidationReport rep;
    auto fail = [&](const std::string& msg) { rep.violations.push_back(msg); };

    const int n_ecus = static_cast<int>(instance.topology.ecu_ids.size());
    if (static_cast<int>(instance.topology.links.size()) != 2 * n_ecus)
        fail("topology: link count != 2 * ECU count");
    for (const auto& l : instance.topology.links)
        if (l.be_capacity_mbps <= 0) fail("topology: non-positive link capacity");

    const auto space = instance.space();
    if (instance.capacity.size() != space.size() || instance.max_capacity.size() != space.size())
        fail("capacity vectors do not match the resource index space");
    else {
        for (int i = 0; i < space.size(); ++i) {
            if (instance.capacity[i] < 0 || instance.max_capacity[i] < 0)
                fail("negative capacity component");
            if (instance.capacity[i] > instance.max_capacity[i] + 1e-9)
                fail("capacity R exceeds R^max");
        }
    }

    bool refs_ok = true;
    for (std::size_t i = 0; i < instance.apps.size(); ++i) {
        const auto& app = instance.apps[i];
        std::ostringstream tag;
        tag << "app " << app.app_id;
        if (app.app_id != static_cast<int>(i)) fail(tag.str() + ": app_id not positional");
        if (app.host_ecu < 0 || app.host_ecu >= n_ecus) fail(tag.str() + ": host_ecu out of range");
        if (app.modes.empty()) fail(tag.str() + ": no modes");
        for (std::size_t j = 0; j < app.modes.size(); ++j) {
            const auto& m = app.modes[j];
            if (m.level != static_cast<int>(j) + 1) fail(tag.str() + ": levels not contiguous from 1");
            if (m.app_id != app.app_id) fail(tag.str() + ": mode app_id mismatch");
            if (m.axil <= 0) fail(tag.str() + ": non-positive AXIL");
            if (j > 0 && !(app.modes[j - 1].axil > m.axil))
                fail(tag.str() + ": AXIL not strictly decreasing with level");
            for (const auto& dep : m.deps) {
                if (dep.app_id == app.app_id) {
                    fail(tag.str() + ": self-dependency");
                    refs_ok = false;
                } else if (dep.app_id < 0 || dep.app_id >= instance.app_count()) {
                    fail(tag.str() + ": dep references unknown app");
                    refs_ok = false;
                } else if (dep.level < 1 ||
                           dep.level > instance.apps[dep.app_id].mode_count()) {
                    fail(tag.str() + ": dep references unknown level");
                    refs_ok = false;
                }
            }
            for (const auto& f : m.flows) {
                if (f.target_mbps <= 0) fail(tag.str() + ": non-positive flow bandwidth");
                if (f.src.app_id == f.dst.app_id) fail(tag.str() + ": flow endpoints on same app");
                if (f.src.app_id != app.app_id)
                    fail(tag.str() + ": flow attached to foreign app");
                if (f.dst.app_id < 0 || f.dst.app_id >= instance.app_count()) {
                    fail(tag.str() + ": flow dst references unknown app");
                    refs_ok = false;
                }
            }
        }
    }

    if (refs_ok) {
        if (mode_graph_has_cycle(instance)) fail("G_M cycle");
        if (app_graph_has_cycle(instance)) fail("G_A cycle");

        // Non-crossing: per ordered app pair, no edges (j1->l1), (j2->l2)
        // with j1 < j2 and l1 > l2.
        for (const auto& app : instance.apps) {
            std::vector<std::pair<int, std::pair<int, int>>> by_target;  // (dst_app, (j, l))
            for (const auto& m : app.modes)
                for (const auto& dep : m.deps)
                    by_target.push_back({dep.app_id, {m.level, dep.level}});
            std::sort(by_target.begin(), by_target.end());
            for (std::size_t a = 0; a < by_target.size(); ++a)
                for (std::size_t b = a + 1; b < by_target.size(); ++b) {
                    if (by_target[a].first != by_target[b].first) break;
                    auto [j1, l1] = by_target[a].second;
                    auto [j2, l2] = by_target[b].second;
                    if ((j1 < j2 && l1 > l2) || (j2 < j1 && l2 > l1)) {
                        std::ostringstream msg;
                        msg << "crossing mode edges between apps " << app.app_id << " and "
                            << by_target[a].first;
                        fail(msg.str());
                    }
                }
        }

        // Requirement monotonicity over the full vector, per app.
        for (const auto& app : instance.apps) {
            for (int level = 1; level < app.mode_count(); ++level) {
                auto hi = mode_requirements(instance, app.app_id, level);
                auto lo = mode_requirements(instance, app.app_id, level + 1);
                if (!lo.fits_within(hi)) {
                    std::ostringstream msg;
                    msg << "app " << app.app_id << ": requirements not non-increasing at level "
                        << level + 1;
                    fail(msg.str());
                }
            }
        }
    }

    return rep;
}

ResourceVector mode_requirements(const Instance& instance, int app_id, int level) {
    if (app_id < 0 || app_id >= instance.app_count())
        throw std::out_of_range("mode_requirements: unknown app");
    const auto& app = instance.apps[app_id];
    if (level < 1 || level > app.mode_count())
        throw std::out_of_range("mode_requirements: unknown level");

    const auto space = instance.space();
    ResourceVector r(space.size());
    const auto& m = app.mode(level);
    r[space.cpu(app.host_ecu)] += m.cpu_pct;
    r[space.mem(app.host_ecu)] += m.mem_mb;

    // Cumulative flow set: levels level..m_i.
    for (int j = level; j <= app.mode_count(); ++j) {
        for (const auto& f : app.mode(j).flows) {
            int src_ecu = instance.apps[f.src.app_id].host_ecu;
            int dst_ecu = instance.apps[f.dst.app_id].host_ecu;
            if (src_ecu == dst_ecu) continue;
            r[space.bw(instance.topology.uplink_id(src_ecu))] += f.target_mbps;
            r[space.bw(instance.topology.downlink_id(dst_ecu))] += f.target_mbps;
        }
    }
    return r;
}

ResourceVector assignment_usage(const Instance& instance, const Assignment& a) {
    ResourceVector total(instance.space().size());
    for (int i = 0; i < instance.app_count(); ++i)
        if (a.active(i)) total += mode_requirements(instance, i, a.level(i));
    return total;
}

DependencyCheck dependencies_satisfied(const Instance& instance, const Assignment& a) {
    DependencyCheck check;
    for (int i = 0; i < instance.app_count(); ++i) {
        if (!a.active(i)) continue;
        const auto& m = instance.apps[i].mode(a.level(i));
        for (const auto& dep : m.deps) {
            if (!a.active(dep.app_id) || a.level(dep.app_id) > dep.level) {
                std::ostringstream msg;
                msg << "app " << i << " level " << m.level << " requires app " << dep.app_id
                    << " at level <= " << dep.level << " (got "
                    << (a.active(dep.app_id) ? std::to_string(a.level(dep.app_id)) : "Off")
                    << ")";
                check.ok = false;
                check.violations.push_back(msg.str());
            }
        }
    }
    return check;
}

}  // namespace sdvo
