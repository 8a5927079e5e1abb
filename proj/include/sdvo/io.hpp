#ifndef SDVO_IO_HPP
#define SDVO_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "sdvo/generator.hpp"
#include "sdvo/metrics.hpp"
#include "sdvo/model.hpp"
#include "sdvo/simulator.hpp"
#include "sdvo/solver.hpp"

namespace sdvo {

using json = nlohmann::ordered_json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Document schemas are described in docs/file-formats.md. All serializers are
// deterministic: the same value always produces the same bytes, and
// parse(serialize(x)) == x.

json instance_to_json(const Instance& instance);
Instance instance_from_json(const json& j);

json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const json& j);

// include_timing=false zeroes the measured solve time, for byte comparisons.
json solution_to_json(const Solution& solution, bool include_timing = true);
Solution solution_from_json(const json& j);

json metrics_summary_to_json(const MetricsLog& log, bool include_timing = true);

// Per-app manifest view: host, modes, requirements, deps, flows of one app.
json app_manifest_to_json(const Instance& instance, int app_id);

// Flat per-tick table. Flow rows carry tick,state,transition,flow_id,target,
// observed,health; ECU rows carry tick,state,transition,ecu,cpu,mem. Rows are
// ordered by tick, flows first (by flow id), then ECUs.
std::string metrics_to_csv(const MetricsLog& log);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const json& j);

}  // namespace sdvo

#endif
