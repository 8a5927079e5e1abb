#ifndef SDVO_SOLVER_HPP
#define SDVO_SOLVER_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sdvo/model.hpp"

namespace sdvo {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleGuardExceeded : SolverError {
    using SolverError::SolverError;
};

struct SolverOptions {
    // Closure-based candidates drag unsatisfied dependencies in and cost them
    // jointly. The eligibility-gated variant only considers upgrades whose
    // dependencies are already satisfied by the current state.
    bool closure_candidates = true;
    double tolerance = 1e-9;
};

struct UpgradeStep {
    int iteration = 0;
    int app_id = 0;
    int target_level = 0;
    // full set of (app, level) changes applied, candidate app included
    std::vector<std::pair<int, int>> closure;
    double delta_axil = 0.0;
    double scalar_cost = 0.0;
    double efficiency = 0.0;
};

struct Solution {
    Assignment assignment;
    double total_axil = 0.0;
    ResourceVector usage;
    double solve_time_s = 0.0;
    int iterations = 0;
    std::vector<UpgradeStep> log;
};

// Greedy upgrade ladder: from all-Off, repeatedly apply the feasible
// candidate with the best AXIL gain per normalized resource cost.
Solution solve_greedy(const Instance& instance, const std::vector<int>& requested,
                      const ResourceVector& capacity, const SolverOptions& options = {});

// Exhaustive oracle over requested apps plus their app-level dependency
// closure. Guard: product of (m_i + 1) over that set must be <= 10^7.
Solution solve_exact(const Instance& instance, const std::vector<int>& requested,
                     const ResourceVector& capacity, const SolverOptions& options = {});

// Human-readable per-iteration account of a greedy solution.
std::vector<std::string> explain(const Solution& solution, const Instance& instance);

}  // namespace sdvo

#endif
