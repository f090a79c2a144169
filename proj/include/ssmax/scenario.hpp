#pragma once

#include "ssmax/configuration.hpp"
#include "ssmax/daemon.hpp"
#include "ssmax/engine.hpp"
#include "ssmax/faults.hpp"
#include "ssmax/metric.hpp"
#include "ssmax/topology.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ssmax {

/// Everything needed to build and run one engine, as read from a scenario file.
///
/// Members: "name", "nodes" (count or list of labels), "edges" ([u, v, weight]
/// triples), "root", "neighbor_order" (object label -> list), "metric" (name or
/// {"values", "weights", "table", "root"}), "byzantine", "strategy", "daemon"
/// (kind or {"kind", "fairness_bound"}), "seed", "D", "max_steps",
/// "containment_horizon", "init" ("random" or one {"prnt", "level", "dist"}
/// object per node). Unknown members are rejected.
struct Scenario {
    std::string name;
    std::vector<std::string> labels;  ///< node labels, index = ProcessId
    std::shared_ptr<const Topology> topology;
    MetricPtr metric;
    std::vector<ProcessId> byzantine;
    StrategyKind strategy = StrategyKind::Lure;
    DaemonKind daemon = DaemonKind::Central;
    std::optional<std::size_t> fairness_bound;
    std::uint64_t seed = 1;
    std::optional<std::size_t> max_steps;
    std::size_t horizon = 500;
    std::optional<Configuration> initial;

    const std::string& label(ProcessId v) const { return labels.at(v.index); }
    EngineOptions engine_options() const;
};

/// Throws ValidationError naming the offending member path (e.g. "edges[3][2]").
Scenario parse_scenario(const nlohmann::json& doc);
/// Reads and parses a file; I/O and JSON syntax errors surface as ValidationError.
Scenario load_scenario(const std::filesystem::path& path);

/// The inverse of parse_scenario; parse_scenario(scenario_to_json(s)) rebuilds s.
nlohmann::json scenario_to_json(const Scenario& s);

/// A metric from its scenario-file form: a built-in name or an inline table.
MetricPtr parse_metric(const nlohmann::json& node, const std::string& path = "metric");
nlohmann::json metric_to_json(const MetricSpace& ms);

/// Labels "0", "1", … for n processes.
std::vector<std::string> default_labels(std::size_t n);

}  // namespace ssmax
