#pragma once

#include "ssmax/engine.hpp"
#include "ssmax/scenario.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ssmax {

struct ClosureViolation {
    PredicateKind kind;
    std::size_t level;
    std::size_t index;  ///< first configuration where the predicate failed again
};

/// Every IM_{m_i} and LC_{m_i} closure failure in the trace.
std::vector<ClosureViolation> audit_closure(const Trace& trace, std::size_t levels);

struct LadderRow {
    std::string level;
    std::vector<std::string> members;
    std::optional<std::size_t> lc;
    std::optional<std::size_t> saturated;
    std::optional<std::size_t> decayed;
};

struct FinalState {
    std::string node;
    std::optional<std::string> prnt;
    std::string level;
    std::size_t dist = 0;
};

/// Outcome of one scenario run. Serializes deterministically; wall time is
/// only present when requested.
struct RunReport {
    std::string scenario;
    std::uint64_t seed = 0;
    std::string metric;
    std::string daemon;
    std::size_t fairness_bound = 0;
    std::string strategy;
    std::size_t processes = 0;
    std::size_t path_bound = 0;
    std::vector<std::string> byzantine;
    std::vector<std::string> containment_area;
    bool contained = false;
    std::string mode;
    std::optional<std::size_t> first_contained_step;
    std::size_t horizon = 0;
    std::size_t steps_executed = 0;
    std::size_t max_steps = 0;
    bool quiescent = false;
    bool legitimate_final = false;
    std::vector<LadderRow> ladder;
    std::size_t closure_violations = 0;
    std::size_t max_fairness_wait = 0;
    std::vector<FinalState> final_states;
    std::optional<double> wall_time_ms;
};

RunReport make_run_report(const Scenario& s, const Engine& engine, const RunResult& result, std::size_t max_steps);

nlohmann::json to_json(const RunReport& r);
RunReport run_report_from_json(const nlohmann::json& doc);
std::string to_text(const RunReport& r);

/// Graphviz rendering of a configuration: every link with its weight, parent
/// pointers drawn bold and directed, root/Byzantine/S_B membership as colors.
void write_dot(std::ostream& out, const Scenario& s, const Configuration& cfg, const ContainmentArea& area);

}  // namespace ssmax
