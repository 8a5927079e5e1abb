#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdvo/axil.hpp"
#include "sdvo/generator.hpp"
#include "sdvo/io.hpp"
#include "sdvo/metrics.hpp"
#include "sdvo/model.hpp"
#include "sdvo/simulator.hpp"
#include "sdvo/solver.hpp"

namespace fs = std::filesystem;
using namespace sdvo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadArgs = 2;
constexpr int kExitIo = 3;
constexpr int kExitGuard = 4;

constexpr std::uint64_t kScenarioSeedMix = 0x5bd1e9955bd1e995ULL;

struct GenerateOptions {
    std::string preset;
    int apps = 0;
    int modes = 0;
    double density = -1.0;
    int ecus = 4;
    double link_mbps = 10.0;
    int states = 6;
    std::uint64_t seed = 0;
    std::string out = ".";
};

GenParams resolve_params(const GenerateOptions& g) {
    GenParams p;
    if (!g.preset.empty()) {
        auto preset = preset_params(g.preset);
        if (!preset) throw GenError("unknown preset: " + g.preset);
        p = *preset;
    }
    if (g.apps > 0) p.n_apps = g.apps;
    if (g.modes > 0) p.m_max = g.modes;
    if (g.density >= 0.0) p.density = g.density;
    p.n_ecus = g.ecus;
    p.link_mbps = g.link_mbps;
    p.seed = g.seed;
    p.validate();
    return p;
}

std::vector<int> parse_request(const std::string& request, int n_apps) {
    std::vector<int> apps;
    if (request == "all") {
        apps.resize(n_apps);
        for (int i = 0; i < n_apps; ++i) apps[i] = i;
        return apps;
    }
    if (request == "none" || request.empty()) return apps;
    std::stringstream ss(request);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            apps.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw SolverError("bad app id in request: " + tok);
        }
    }
    return apps;
}

int cmd_generate(const GenerateOptions& g) {
    GenParams p = resolve_params(g);
    Instance instance = gen_instance(p);

    Scenario scenario;
    scenario.seed = p.seed ^ kScenarioSeedMix;
    Rng rng(scenario.seed);
    scenario = gen_scenario(instance, g.states, rng);
    scenario.seed = p.seed ^ kScenarioSeedMix;

    fs::path dir(g.out);
    save_json(dir / "instance.json", instance_to_json(instance));
    save_json(dir / "scenario.json", scenario_to_json(scenario));
    for (int a = 0; a < instance.app_count(); ++a) {
        char name[32];
        std::snprintf(name, sizeof name, "app_%03d.json", a);
        save_json(dir / "manifests" / name, app_manifest_to_json(instance, a));
    }

    int n_flows = 0;
    for (const auto& app : instance.apps)
        for (const auto& m : app.modes) n_flows += static_cast<int>(m.flows.size());
    std::cout << "generated instance: " << instance.app_count() << " apps, " << n_flows
              << " flows, " << g.states << " scenario states, seed " << p.seed << " -> "
              << (dir / "instance.json").string() << "\n";
    return kExitOk;
}

int cmd_solve(const std::string& instance_path, const std::string& request, bool exact,
              const std::string& out, const std::string& format) {
    Instance instance = instance_from_json(load_json(instance_path));
    auto requested = parse_request(request, instance.app_count());

    Solution sol = exact ? solve_exact(instance, requested, instance.capacity)
                         : solve_greedy(instance, requested, instance.capacity);

    save_json(out, solution_to_json(sol));

    if (format == "table") {
        int active = 0;
        for (int lv : sol.assignment.levels) active += lv > 0;
        std::cout << (exact ? "exact" : "greedy") << " solution: total_axil " << sol.total_axil
                  << ", " << active << "/" << requested.size() << " requested apps active, "
                  << sol.iterations << " iterations, " << sol.solve_time_s * 1e3 << " ms\n";
        for (const auto& line : explain(sol, instance)) std::cout << "  " << line << "\n";
    } else {
        std::cout << solution_to_json(sol).dump(2) << "\n";
    }
    return kExitOk;
}

int cmd_simulate(const std::string& instance_path, const std::string& scenario_path,
                 const std::string& policy_str, const std::string& out, double tick_s,
                 double start_s, double stop_s) {
    Instance instance = instance_from_json(load_json(instance_path));
    Scenario scenario = scenario_from_json(load_json(scenario_path));
    Policy policy = policy_str == "baseline" ? Policy::Baseline : Policy::Optimized;

    SimConfig cfg;
    cfg.tick_s = tick_s;
    cfg.container_start_s = start_s;
    cfg.container_stop_s = stop_s;

    MetricsLog log = run_scenario(instance, scenario, policy, cfg);

    fs::path dir(out);
    std::string stem = "metrics_" + policy_name(policy);
    write_text_file(dir / (stem + ".csv"), metrics_to_csv(log));
    save_json(dir / (stem + ".json"), metrics_summary_to_json(log));

    HealthSummary health = summarize_health(log);
    std::cout << policy_name(policy) << " run: " << log.ticks.size() << " ticks, median health "
              << health.health.median << "% (Q1 " << health.health.q1 << ", Q3 "
              << health.health.q3 << "), " << health.excluded_samples
              << " samples missing during transitions\n";
    return kExitOk;
}

int cmd_bench(const std::string& presets_csv, int repeats, std::uint64_t seed,
              const std::string& out, const std::string& format) {
    std::vector<std::string> presets;
    std::stringstream ss(presets_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) presets.push_back(tok);

    json doc;
    doc["format"] = "sdvo-bench";
    doc["repeats"] = repeats;
    doc["seed"] = seed;
    doc["rows"] = json::array();

    if (format == "table")
        std::cout << "preset  apps  modes  density  min_ms  median_ms  max_ms\n";

    for (const auto& name : presets) {
        auto p = preset_params(name);
        if (!p) throw GenError("unknown preset: " + name);
        std::vector<double> times;
        for (int r = 0; r < repeats; ++r) {
            p->seed = seed + static_cast<std::uint64_t>(r);
            Instance instance = gen_instance(*p);
            std::vector<int> all(instance.app_count());
            for (int i = 0; i < instance.app_count(); ++i) all[i] = i;
            Solution sol = solve_greedy(instance, all, instance.capacity);
            times.push_back(sol.solve_time_s * 1e3);
        }
        std::sort(times.begin(), times.end());
        double median = times[times.size() / 2];
        if (format == "table") {
            std::printf("%-6s  %4d  %5d  %6.0f%%  %6.3f  %9.3f  %6.3f\n", name.c_str(), p->n_apps,
                        p->m_max, p->density * 100, times.front(), median, times.back());
        }
        doc["rows"].push_back({{"preset", name},
                               {"apps", p->n_apps},
                               {"modes", p->m_max},
                               {"density", p->density},
                               {"min_ms", times.front()},
                               {"median_ms", median},
                               {"max_ms", times.back()}});
    }

    if (format != "table") std::cout << doc.dump(2) << "\n";
    if (!out.empty()) save_json(out, doc);
    return kExitOk;
}

int cmd_report(const GenerateOptions& g, double tick_s, double start_s, double stop_s) {
    GenParams p = resolve_params(g);
    Instance instance = gen_instance(p);
    Scenario scenario;
    {
        Rng rng(p.seed ^ kScenarioSeedMix);
        scenario = gen_scenario(instance, g.states, rng);
        scenario.seed = p.seed ^ kScenarioSeedMix;
    }

    SimConfig cfg;
    cfg.tick_s = tick_s;
    cfg.container_start_s = start_s;
    cfg.container_stop_s = stop_s;

    MetricsLog baseline = run_scenario(instance, scenario, Policy::Baseline, cfg);
    MetricsLog optimized = run_scenario(instance, scenario, Policy::Optimized, cfg);
    RunComparison cmp = compare_runs(baseline, optimized);

    fs::path dir(g.out);
    save_json(dir / "instance.json", instance_to_json(instance));
    save_json(dir / "scenario.json", scenario_to_json(scenario));
    write_text_file(dir / "metrics_baseline.csv", metrics_to_csv(baseline));
    write_text_file(dir / "metrics_optimized.csv", metrics_to_csv(optimized));
    save_json(dir / "metrics_baseline.json", metrics_summary_to_json(baseline));
    save_json(dir / "metrics_optimized.json", metrics_summary_to_json(optimized));
    emit_plot_series(baseline, optimized, dir / "series");

    json jc;
    jc["format"] = "sdvo-comparison";
    jc["config_hash"] = baseline.config_hash;
    jc["baseline"] = {{"median_health_pct", cmp.baseline.health.health.median},
                      {"q1_pct", cmp.baseline.health.health.q1},
                      {"q3_pct", cmp.baseline.health.health.q3},
                      {"cpu_saturated_ticks", cmp.baseline.usage.cpu_saturated_ticks},
                      {"total_transition_s", cmp.baseline.total_transition_time_s}};
    jc["optimized"] = {{"median_health_pct", cmp.optimized.health.health.median},
                       {"q1_pct", cmp.optimized.health.health.q1},
                       {"q3_pct", cmp.optimized.health.health.q3},
                       {"cpu_saturated_ticks", cmp.optimized.usage.cpu_saturated_ticks},
                       {"total_transition_s", cmp.optimized.total_transition_time_s}};
    jc["deltas"] = {{"median_health_pct", cmp.median_health_delta_pct},
                    {"total_transition_s", cmp.transition_time_delta_s},
                    {"cpu_saturated_ticks", cmp.saturated_ticks_delta}};
    save_json(dir / "comparison.json", jc);

    std::cout << "report: baseline median health " << cmp.baseline.health.health.median
              << "%, optimized " << cmp.optimized.health.health.median
              << "%; baseline transitions " << cmp.baseline.total_transition_time_s
              << " s, optimized " << cmp.optimized.total_transition_time_s << " s -> "
              << (dir / "comparison.json").string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UX-focused dynamic service orchestration: generate, solve, simulate, report"};
    app.require_subcommand(1);

    GenerateOptions gen;
    auto* sc_generate = app.add_subcommand("generate", "Generate an instance and scenario");
    sc_generate->add_option("--preset", gen.preset, "Problem size preset: XS, S, M, L, XL");
    sc_generate->add_option("--apps", gen.apps, "Number of applications");
    sc_generate->add_option("--modes", gen.modes, "Maximum modes per application");
    sc_generate->add_option("--density", gen.density, "App dependency graph density in [0,1]");
    sc_generate->add_option("--ecus", gen.ecus, "Number of ECUs");
    sc_generate->add_option("--link-mbps", gen.link_mbps, "Best-effort link capacity in Mbps");
    sc_generate->add_option("--states", gen.states, "Number of scenario states");
    sc_generate->add_option("--seed", gen.seed, "Random seed")->required();
    sc_generate->add_option("--out", gen.out, "Output directory");

    std::string instance_path = "instance.json";
    std::string scenario_path = "scenario.json";
    std::string request = "all";
    std::string solution_out = "solution.json";
    std::string format = "table";
    bool exact = false;
    auto* sc_solve = app.add_subcommand("solve", "Select runtime modes for a request");
    sc_solve->add_option("--instance", instance_path, "Instance file");
    sc_solve->add_option("--request", request, "Comma-separated app ids, 'all', or 'none'");
    sc_solve->add_flag("--exact", exact, "Use the exhaustive oracle (guarded)");
    sc_solve->add_option("--out", solution_out, "Solution output file");
    sc_solve->add_option("--format", format, "Output format: table or doc");

    std::string policy = "optimized";
    std::string sim_out = ".";
    double tick_s = 1.0, start_s = 2.0, stop_s = 1.0;
    auto* sc_simulate = app.add_subcommand("simulate", "Run one policy over a scenario");
    sc_simulate->add_option("--instance", instance_path, "Instance file");
    sc_simulate->add_option("--scenario", scenario_path, "Scenario file");
    sc_simulate->add_option("--policy", policy, "baseline or optimized")
        ->check(CLI::IsMember({"baseline", "optimized"}));
    sc_simulate->add_option("--out", sim_out, "Output directory");
    sc_simulate->add_option("--tick", tick_s, "Tick length in seconds");
    sc_simulate->add_option("--start-s", start_s, "Container start delay in seconds");
    sc_simulate->add_option("--stop-s", stop_s, "Container stop delay in seconds");

    std::string presets = "XS,S,M,L,XL";
    int repeats = 10;
    std::uint64_t bench_seed = 1;
    std::string bench_out;
    auto* sc_bench = app.add_subcommand("bench", "Greedy solve times across problem sizes");
    sc_bench->add_option("--presets", presets, "Comma-separated preset names");
    sc_bench->add_option("--repeats", repeats, "Seeds per preset");
    sc_bench->add_option("--seed", bench_seed, "Base seed");
    sc_bench->add_option("--out", bench_out, "Optional JSON output file");
    sc_bench->add_option("--format", format, "Output format: table or doc");

    auto* sc_report = app.add_subcommand("report", "Baseline vs optimized comparison");
    sc_report->add_option("--preset", gen.preset, "Problem size preset: XS, S, M, L, XL");
    sc_report->add_option("--apps", gen.apps, "Number of applications");
    sc_report->add_option("--modes", gen.modes, "Maximum modes per application");
    sc_report->add_option("--density", gen.density, "App dependency graph density in [0,1]");
    sc_report->add_option("--ecus", gen.ecus, "Number of ECUs");
    sc_report->add_option("--link-mbps", gen.link_mbps, "Best-effort link capacity in Mbps");
    sc_report->add_option("--states", gen.states, "Number of scenario states");
    sc_report->add_option("--seed", gen.seed, "Random seed")->required();
    sc_report->add_option("--out", gen.out, "Output directory");
    sc_report->add_option("--tick", tick_s, "Tick length in seconds");
    sc_report->add_option("--start-s", start_s, "Container start delay in seconds");
    sc_report->add_option("--stop-s", stop_s, "Container stop delay in seconds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadArgs;
    }

    try {
        if (sc_generate->parsed()) return cmd_generate(gen);
        if (sc_solve->parsed()) return cmd_solve(instance_path, request, exact, solution_out, format);
        if (sc_simulate->parsed())
            return cmd_simulate(instance_path, scenario_path, policy, sim_out, tick_s, start_s,
                                stop_s);
        if (sc_bench->parsed()) return cmd_bench(presets, repeats, bench_seed, bench_out, format);
        if (sc_report->parsed()) return cmd_report(gen, tick_s, start_s, stop_s);
    } catch (const OracleGuardExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    }
    return kExitOk;
}
