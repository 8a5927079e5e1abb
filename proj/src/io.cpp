#include "sdvo/io.hpp"

#include <fstream>
#include <sstream>

namespace sdvo {

namespace {

json mode_ref_to_json(const ModeRef& r) { return json{{"app", r.app_id}, {"level", r.level}}; }

ModeRef mode_ref_from_json(const json& j) { return {j.at("app").get<int>(), j.at("level").get<int>()}; }

}  // namespace

json instance_to_json(const Instance& instance) {
    json j;
    j["format"] = "sdvo-instance";
    j["version"] = 1;
    j["seed"] = instance.seed;

    json topo;
    topo["ecus"] = instance.topology.ecu_ids;
    topo["links"] = json::array();
    for (const auto& l : instance.topology.links) {
        topo["links"].push_back({{"id", l.link_id},
                                 {"ecu", l.endpoint_ecu},
                                 {"direction", l.direction == LinkDirection::Uplink ? "uplink"
                                                                                   : "downlink"},
                                 {"be_capacity_mbps", l.be_capacity_mbps}});
    }
    j["topology"] = std::move(topo);

    j["apps"] = json::array();
    for (const auto& app : instance.apps) {
        json ja;
        ja["app_id"] = app.app_id;
        ja["host_ecu"] = app.host_ecu;
        ja["modes"] = json::array();
        for (const auto& m : app.modes) {
            json jm;
            jm["level"] = m.level;
            jm["axil"] = m.axil;
            jm["cpu_pct"] = m.cpu_pct;
            jm["mem_mb"] = m.mem_mb;
            jm["deps"] = json::array();
            for (const auto& d : m.deps) jm["deps"].push_back(mode_ref_to_json(d));
            jm["flows"] = json::array();
            for (const auto& f : m.flows)
                jm["flows"].push_back({{"flow_id", f.flow_id},
                                       {"src", mode_ref_to_json(f.src)},
                                       {"dst", mode_ref_to_json(f.dst)},
                                       {"target_mbps", f.target_mbps}});
            ja["modes"].push_back(std::move(jm));
        }
        j["apps"].push_back(std::move(ja));
    }

    j["capacity"] = instance.capacity.v;
    j["max_capacity"] = instance.max_capacity.v;
    return j;
}

Instance instance_from_json(const json& j) {
    if (j.value("format", "") != "sdvo-instance")
        throw IoError("not an sdvo-instance document");
    Instance instance;
    instance.seed = j.at("seed").get<std::uint64_t>();

    const auto& topo = j.at("topology");
    instance.topology.ecu_ids = topo.at("ecus").get<std::vector<int>>();
    for (const auto& jl : topo.at("links")) {
        DirectedLink l;
        l.link_id = jl.at("id").get<int>();
        l.endpoint_ecu = jl.at("ecu").get<int>();
        l.direction = jl.at("direction").get<std::string>() == "uplink" ? LinkDirection::Uplink
                                                                        : LinkDirection::Downlink;
        l.be_capacity_mbps = jl.at("be_capacity_mbps").get<double>();
        instance.topology.links.push_back(l);
    }

    for (const auto& ja : j.at("apps")) {
        Application app;
        app.app_id = ja.at("app_id").get<int>();
        app.host_ecu = ja.at("host_ecu").get<int>();
        for (const auto& jm : ja.at("modes")) {
            ModeSpec m;
            m.app_id = app.app_id;
            m.level = jm.at("level").get<int>();
            m.axil = jm.at("axil").get<double>();
            m.cpu_pct = jm.at("cpu_pct").get<double>();
            m.mem_mb = jm.at("mem_mb").get<double>();
            for (const auto& jd : jm.at("deps")) m.deps.push_back(mode_ref_from_json(jd));
            for (const auto& jf : jm.at("flows")) {
                Flow f;
                f.flow_id = jf.at("flow_id").get<int>();
                f.src = mode_ref_from_json(jf.at("src"));
                f.dst = mode_ref_from_json(jf.at("dst"));
                f.target_mbps = jf.at("target_mbps").get<double>();
                m.flows.push_back(f);
            }
            app.modes.push_back(std::move(m));
        }
        instance.apps.push_back(std::move(app));
    }

    instance.capacity.v = j.at("capacity").get<std::vector<double>>();
    instance.max_capacity.v = j.at("max_capacity").get<std::vector<double>>();
    return instance;
}

json scenario_to_json(const Scenario& scenario) {
    json j;
    j["format"] = "sdvo-scenario";
    j["version"] = 1;
    j["seed"] = scenario.seed;
    j["states"] = json::array();
    for (const auto& s : scenario.states)
        j["states"].push_back({{"requested", s.requested}, {"duration_s", s.duration_s}});
    return j;
}

Scenario scenario_from_json(const json& j) {
    if (j.value("format", "") != "sdvo-scenario")
        throw IoError("not an sdvo-scenario document");
    Scenario sc;
    sc.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& js : j.at("states")) {
        ScenarioState s;
        s.requested = js.at("requested").get<std::vector<int>>();
        s.duration_s = js.at("duration_s").get<int>();
        sc.states.push_back(std::move(s));
    }
    return sc;
}

json solution_to_json(const Solution& solution, bool include_timing) {
    json j;
    j["format"] = "sdvo-solution";
    j["version"] = 1;
    j["levels"] = solution.assignment.levels;
    j["total_axil"] = solution.total_axil;
    j["usage"] = solution.usage.v;
    j["iterations"] = solution.iterations;
    j["solve_time_s"] = include_timing ? solution.solve_time_s : 0.0;
    j["log"] = json::array();
    for (const auto& s : solution.log) {
        json js;
        js["iteration"] = s.iteration;
        js["app"] = s.app_id;
        js["target_level"] = s.target_level;
        js["closure"] = json::array();
        for (const auto& [k, lv] : s.closure) js["closure"].push_back({{"app", k}, {"level", lv}});
        js["delta_axil"] = s.delta_axil;
        js["scalar_cost"] = s.scalar_cost;
        js["efficiency"] = s.efficiency;
        j["log"].push_back(std::move(js));
    }
    return j;
}

Solution solution_from_json(const json& j) {
    if (j.value("format", "") != "sdvo-solution")
        throw IoError("not an sdvo-solution document");
    Solution sol;
    sol.assignment.levels = j.at("levels").get<std::vector<int>>();
    sol.total_axil = j.at("total_axil").get<double>();
    sol.usage.v = j.at("usage").get<std::vector<double>>();
    sol.iterations = j.at("iterations").get<int>();
    sol.solve_time_s = j.at("solve_time_s").get<double>();
    for (const auto& js : j.at("log")) {
        UpgradeStep s;
        s.iteration = js.at("iteration").get<int>();
        s.app_id = js.at("app").get<int>();
        s.target_level = js.at("target_level").get<int>();
        for (const auto& jc : js.at("closure"))
            s.closure.push_back({jc.at("app").get<int>(), jc.at("level").get<int>()});
        s.delta_axil = js.at("delta_axil").get<double>();
        s.scalar_cost = js.at("scalar_cost").get<double>();
        s.efficiency = js.at("efficiency").get<double>();
        sol.log.push_back(std::move(s));
    }
    return sol;
}

json metrics_summary_to_json(const MetricsLog& log, bool include_timing) {
    RunSummary sum = summarize_run(log);
    json j;
    j["format"] = "sdvo-metrics";
    j["version"] = 1;
    j["policy"] = policy_name(log.policy);
    j["instance_seed"] = log.instance_seed;
    j["scenario_seed"] = log.scenario_seed;
    j["config_hash"] = log.config_hash;
    j["health"] = {{"median_pct", sum.health.health.median},
                   {"q1_pct", sum.health.health.q1},
                   {"q3_pct", sum.health.health.q3},
                   {"n_samples", sum.health.n_samples},
                   {"excluded_samples", sum.health.excluded_samples}};
    j["per_state_health"] = json::array();
    for (const auto& s : sum.health.per_state)
        j["per_state_health"].push_back({{"state", s.state_index},
                                         {"median_pct", s.health.median},
                                         {"q1_pct", s.health.q1},
                                         {"q3_pct", s.health.q3},
                                         {"n_samples", s.n_samples}});
    j["usage"] = {{"mean_cpu_pct", sum.usage.mean_cpu_pct},
                  {"peak_cpu_pct", sum.usage.peak_cpu_pct},
                  {"peak_mem_mb", sum.usage.peak_mem_mb},
                  {"cpu_saturated_ticks", sum.usage.cpu_saturated_ticks}};
    j["states"] = json::array();
    for (const auto& s : log.states) {
        json js;
        js["state"] = s.state_index;
        js["requested"] = s.requested;
        js["levels"] = s.assignment.levels;
        js["starts"] = s.starts;
        js["stops"] = s.stops;
        js["container_transition_s"] = s.container_transition_s;
        js["transition_ticks"] = s.transition_ticks;
        js["solve_time_s"] = include_timing ? s.solve_time_s : 0.0;
        j["states"].push_back(std::move(js));
    }
    j["timing"] = {{"total_solve_s", include_timing ? sum.total_solve_time_s : 0.0},
                   {"total_container_s", sum.total_container_time_s},
                   {"total_transition_s",
                    include_timing ? sum.total_transition_time_s : sum.total_container_time_s}};
    return j;
}

json app_manifest_to_json(const Instance& instance, int app_id) {
    const auto& app = instance.app(app_id);
    json j;
    j["format"] = "sdvo-manifest";
    j["app_id"] = app.app_id;
    j["host_ecu"] = app.host_ecu;
    j["modes"] = json::array();
    for (const auto& m : app.modes) {
        json jm;
        jm["level"] = m.level;
        jm["axil"] = m.axil;
        jm["cpu_pct"] = m.cpu_pct;
        jm["mem_mb"] = m.mem_mb;
        jm["deps"] = json::array();
        for (const auto& d : m.deps) jm["deps"].push_back(mode_ref_to_json(d));
        jm["flows"] = json::array();
        for (const auto& f : m.flows)
            jm["flows"].push_back({{"flow_id", f.flow_id},
                                   {"dst", mode_ref_to_json(f.dst)},
                                   {"target_mbps", f.target_mbps}});
        j["modes"].push_back(std::move(jm));
    }
    return j;
}

std::string metrics_to_csv(const MetricsLog& log) {
    std::ostringstream out;
    out << "tick,state,transition,flow_id,target_mbps,observed_mbps,health_pct,ecu,cpu_pct,mem_mb\n";
    out.precision(10);
    for (const auto& tick : log.ticks) {
        for (const auto& f : tick.flows)
            out << tick.tick << ',' << tick.state_index << ',' << (tick.transition ? 1 : 0) << ','
                << f.flow_id << ',' << f.target_mbps << ',' << f.observed_mbps << ','
                << f.health_pct << ",,,\n";
        for (const auto& e : tick.ecus)
            out << tick.tick << ',' << tick.state_index << ',' << (tick.transition ? 1 : 0)
                << ",,,,," << e.ecu << ',' << e.cpu_pct << ',' << e.mem_mb << '\n';
    }
    return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("write failed for " + path.string());
}

json load_json(const std::filesystem::path& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError("invalid JSON in " + path.string() + ": " + e.what());
    }
}

void save_json(const std::filesystem::path& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

}  // namespace sdvo
