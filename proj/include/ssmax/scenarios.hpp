#pragma once

#include "ssmax/analysis.hpp"
#include "ssmax/scenario.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ssmax {

enum class CaseId : std::uint8_t { SingleValued, FixedPoint, NonFixedPoint };

std::string_view to_string(CaseId id);
/// "single-valued", "fixed-point", "non-fixed-point".
std::optional<CaseId> parse_case(std::string_view name);

/// One of the three impossibility constructions: a Byzantine process b whose
/// honest-looking behavior still forces every process of S_B to move.
struct CounterexampleCase {
    CaseId id;
    Scenario scenario;  ///< central daemon, simulate-correct, explicit ρ_0
    std::vector<ProcessId> expected_disturbed;

    ProcessId node(std::string_view label) const;
};

/// Path r-u-v-b under a metric with the single value m.
CounterexampleCase build_case_single_valued();

/// Path r-u-v-b with w_{r,u} = w_{v,b} = w, where m = met(mr, w) ≺ mr is a fixed
/// point. Throws CapabilityError when the metric has no such m.
CounterexampleCase build_case_fixed_point(MetricPtr ms);

/// Diamond r-u-{v, v′}-b with w on the outer edges and w′ on u-v, u-v′; needs
/// m = met(mr, w) ≺ mr and met(m, w′) ≺ m, else CapabilityError.
CounterexampleCase build_case_non_fixed_point(MetricPtr ms, const Weight& w, const Weight& w_prime);

/// The metrics the CLI uses for each case: a one-value table, flow:10 (m = 0
/// via w = 0), and SP with w = w′ = 1.
CounterexampleCase build_case(CaseId id);

struct CounterexampleRun {
    Trace trace;
    Configuration final_configuration;
    std::vector<ProcessId> disturbed;  ///< correct processes whose O-variables changed
    bool settled = false;              ///< reached a configuration nothing changes
    std::size_t steps = 0;
};

/// Runs the case under its central daemon until a step changes nothing while
/// no correct process is enabled, or until max_steps.
CounterexampleRun run_counterexample(const CounterexampleCase& c, std::size_t max_steps = 10000);

struct ExampleSystem {
    std::string name;           ///< "sp-1", …, "reliability-2"
    Scenario scenario;
    ContainmentArea expected;   ///< recomputed from brute-force μ
    MetricValue byzantine_level;
};

/// Six 6-node systems, two per metric (SP, flow with mr = 10, reliability),
/// each with one Byzantine process b.
std::vector<ExampleSystem> build_example_systems();

/// S_B computed from compute_mu_bruteforce alone.
ContainmentArea containment_area_bruteforce(const Topology& t, const MetricSpace& ms,
                                            std::span<const ProcessId> byz);

}  // namespace ssmax
