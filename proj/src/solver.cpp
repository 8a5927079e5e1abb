#include "sdvo/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace sdvo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_request(const Instance& instance, const std::vector<int>& requested,
                   const ResourceVector& capacity) {
    for (int a : requested)
        if (a < 0 || a >= instance.app_count())
            throw SolverError("requested app id out of range: " + std::to_string(a));
    if (capacity.size() != instance.space().size())
        throw SolverError("capacity vector does not match the instance resource space");
    if (!capacity.fits_within(instance.max_capacity))
        throw SolverError("capacity exceeds R^max");
}

struct RequirementCache {
    // req[app][level-1]
    std::vector<std::vector<ResourceVector>> req;

    explicit RequirementCache(const Instance& instance) {
        req.resize(instance.app_count());
        for (int i = 0; i < instance.app_count(); ++i) {
            req[i].reserve(instance.apps[i].mode_count());
            for (int j = 1; j <= instance.apps[i].mode_count(); ++j)
                req[i].push_back(mode_requirements(instance, i, j));
        }
    }
    const ResourceVector& at(int app, int level) const { return req[app][level - 1]; }
};

// Minimal set of (app -> new level) changes so that the candidate mode and
// everything it pulls in have their dependencies met. Keyed map keeps the
// tightest (lowest) level per app. Terminates because G_M is acyclic and
// levels only tighten.
std::map<int, int> dependency_closure(const Instance& instance, const std::vector<int>& levels,
                                      int app, int target) {
    std::map<int, int> plan;
    plan[app] = target;
    std::vector<std::pair<int, int>> stack{{app, target}};
    while (!stack.empty()) {
        auto [p, lv] = stack.back();
        stack.pop_back();
        for (const auto& dep : instance.apps[p].mode(lv).deps) {
            int planned = plan.count(dep.app_id) ? plan[dep.app_id] : 0;
            int effective = planned != 0 ? planned : levels[dep.app_id];
            if (effective != 0 && effective <= dep.level) continue;
            plan[dep.app_id] = dep.level;
            stack.push_back({dep.app_id, dep.level});
        }
    }
    return plan;
}

struct CandidateEval {
    int app_id = -1;
    int target_level = 0;
    std::map<int, int> plan;
    ResourceVector delta_usage;
    double delta_axil = 0.0;
    double scalar_cost = 0.0;
    double efficiency = 0.0;
    bool feasible = false;
};

// Ordering: higher efficiency, then higher delta_axil, then lower app id,
// then lower target level.
bool better(const CandidateEval& a, const CandidateEval& b) {
    if (a.efficiency != b.efficiency) return a.efficiency > b.efficiency;
    if (a.delta_axil != b.delta_axil) return a.delta_axil > b.delta_axil;
    if (a.app_id != b.app_id) return a.app_id < b.app_id;
    return a.target_level < b.target_level;
}

}  // namespace

Solution solve_greedy(const Instance& instance, const std::vector<int>& requested,
                      const ResourceVector& capacity, const SolverOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    check_request(instance, requested, capacity);

    const RequirementCache cache(instance);
    const int n = instance.app_count();
    std::vector<bool> is_requested(n, false);
    for (int a : requested) is_requested[a] = true;

    std::vector<int> levels(n, 0);
    ResourceVector usage(instance.space().size());
    double total_axil = 0.0;
    int iterations = 0;
    std::vector<UpgradeStep> log;

    for (;;) {
        CandidateEval best;
        for (int a = 0; a < n; ++a) {
            if (!is_requested[a] && levels[a] == 0) continue;
            int cur = levels[a];
            if (cur == 1) continue;  // already nominal
            int target = cur == 0 ? instance.apps[a].mode_count() : cur - 1;

            CandidateEval cand;
            cand.app_id = a;
            cand.target_level = target;
            if (options.closure_candidates) {
                cand.plan = dependency_closure(instance, levels, a, target);
            } else {
                // eligibility-gated: deps must already hold in the current state
                bool eligible = true;
                for (const auto& dep : instance.apps[a].mode(target).deps)
                    if (levels[dep.app_id] == 0 || levels[dep.app_id] > dep.level) {
                        eligible = false;
                        break;
                    }
                if (!eligible) continue;
                cand.plan[a] = target;
            }

            cand.delta_usage = ResourceVector(usage.size());
            for (const auto& [k, lv] : cand.plan) {
                cand.delta_usage += cache.at(k, lv);
                cand.delta_axil += instance.apps[k].mode(lv).axil;
                if (levels[k] != 0) {
                    cand.delta_usage -= cache.at(k, levels[k]);
                    cand.delta_axil -= instance.apps[k].mode(levels[k]).axil;
                }
            }

            if (!(usage + cand.delta_usage).fits_within(capacity, options.tolerance)) continue;

            cand.scalar_cost = 0.0;
            for (int i = 0; i < usage.size(); ++i) {
                if (cand.delta_usage[i] <= 0) continue;
                double remaining = capacity[i] - usage[i];
                if (remaining <= 0) {
                    cand.scalar_cost = kInf;
                    break;
                }
                cand.scalar_cost += cand.delta_usage[i] / remaining;
            }
            cand.efficiency = cand.scalar_cost == 0.0 ? kInf
                              : std::isinf(cand.scalar_cost)
                                  ? 0.0
                                  : cand.delta_axil / cand.scalar_cost;
            cand.feasible = true;

            if (best.app_id < 0 || better(cand, best)) best = std::move(cand);
        }

        if (best.app_id < 0) break;

        ++iterations;
        UpgradeStep step;
        step.iteration = iterations;
        step.app_id = best.app_id;
        step.target_level = best.target_level;
        step.closure.assign(best.plan.begin(), best.plan.end());
        step.delta_axil = best.delta_axil;
        step.scalar_cost = best.scalar_cost;
        step.efficiency = best.efficiency;
        log.push_back(std::move(step));

        for (const auto& [k, lv] : best.plan) levels[k] = lv;
        usage += best.delta_usage;
        total_axil += best.delta_axil;
    }

    Solution sol;
    sol.assignment.levels = std::move(levels);
    sol.total_axil = total_axil;
    sol.usage = assignment_usage(instance, sol.assignment);
    sol.iterations = iterations;
    sol.log = std::move(log);
    sol.solve_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sol;
}

Solution solve_exact(const Instance& instance, const std::vector<int>& requested,
                     const ResourceVector& capacity, const SolverOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();
    check_request(instance, requested, capacity);

    // Relevant apps: requested plus everything reachable over app-level deps.
    auto adj = instance.app_dependency_adjacency();
    std::set<int> relevant(requested.begin(), requested.end());
    std::vector<int> stack(relevant.begin(), relevant.end());
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : adj[u])
            if (relevant.insert(w).second) stack.push_back(w);
    }
    std::vector<int> apps(relevant.begin(), relevant.end());

    double space_size = 1.0;
    for (int a : apps) space_size *= instance.apps[a].mode_count() + 1;
    if (space_size > 1e7)
        throw OracleGuardExceeded(
            "solve_exact: search space exceeds 10^7 assignments; shrink the instance");

    const RequirementCache cache(instance);
    const int n = instance.app_count();

    Assignment current(n);
    Assignment best_assignment(n);
    double best_axil = -1.0;
    std::vector<int> best_key, key;
    bool found = false;

    // Odometer over levels {0..m_a} per relevant app.
    std::vector<int> digits(apps.size(), 0);
    for (;;) {
        for (std::size_t i = 0; i < apps.size(); ++i) current.levels[apps[i]] = digits[i];

        if (dependencies_satisfied(instance, current).ok) {
            ResourceVector usage(instance.space().size());
            for (std::size_t i = 0; i < apps.size(); ++i)
                if (digits[i] != 0) usage += cache.at(apps[i], digits[i]);
            if (usage.fits_within(capacity, options.tolerance)) {
                double axil = 0.0;
                for (std::size_t i = 0; i < apps.size(); ++i)
                    if (digits[i] != 0) axil += instance.apps[apps[i]].mode(digits[i]).axil;
                // Tie-break: lexicographically smallest level vector with Off
                // ranked after every real level, matching the greedy's
                // preference for lower app ids and more capable modes.
                key.clear();
                for (std::size_t i = 0; i < apps.size(); ++i)
                    key.push_back(digits[i] == 0 ? instance.apps[apps[i]].mode_count() + 1
                                                 : digits[i]);
                if (!found || axil > best_axil || (axil == best_axil && key < best_key)) {
                    found = true;
                    best_axil = axil;
                    best_assignment = current;
                    best_key = key;
                }
            }
        }

        std::size_t pos = 0;
        while (pos < apps.size()) {
            if (++digits[pos] <= instance.apps[apps[pos]].mode_count()) break;
            digits[pos] = 0;
            ++pos;
        }
        if (pos == apps.size()) break;
    }

    Solution sol;
    sol.assignment = found ? best_assignment : Assignment(n);
    sol.total_axil = found ? best_axil : 0.0;
    sol.usage = assignment_usage(instance, sol.assignment);
    sol.iterations = 0;
    sol.solve_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return sol;
}

std::vector<std::string> explain(const Solution& solution, const Instance& instance) {
    std::vector<std::string> lines;
    for (const auto& step : solution.log) {
        std::ostringstream os;
        os << "iter " << step.iteration << ": app " << step.app_id << " -> level "
           << step.target_level << " (axil +" << step.delta_axil << ", cost " << step.scalar_cost
           << ", efficiency " << step.efficiency << ")";
        if (step.closure.size() > 1) {
            os << " closure:";
            for (const auto& [k, lv] : step.closure)
                if (k != step.app_id) os << " app " << k << "->" << lv;
        }
        os << " [ecu " << instance.apps[step.app_id].host_ecu << "]";
        lines.push_back(os.str());
    }
    return lines;
}

}  // namespace sdvo
