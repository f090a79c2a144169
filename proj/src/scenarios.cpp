#include "ssmax/scenarios.hpp"

#include "ssmax/errors.hpp"
#include "ssmax/metric_check.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace ssmax {

namespace {

constexpr std::array<std::pair<CaseId, std::string_view>, 3> kNames{{
    {CaseId::SingleValued, "single-valued"},
    {CaseId::FixedPoint, "fixed-point"},
    {CaseId::NonFixedPoint, "non-fixed-point"},
}};

ProcessState state(std::optional<int> parent, MetricValue level, std::size_t dist) {
    ProcessState s;
    if (parent) s.parent = ProcessId{*parent};
    s.level = std::move(level);
    s.dist = dist;
    return s;
}

Scenario counterexample_scenario(std::string name, std::vector<std::string> labels, MetricPtr ms,
                                 std::vector<Edge> edges, ProcessId byzantine, std::vector<ProcessState> init) {
    Scenario s;
    s.name = std::move(name);
    const auto n = labels.size();
    s.labels = std::move(labels);
    s.topology = std::make_shared<Topology>(n, ProcessId{0}, std::move(edges));
    s.metric = std::move(ms);
    s.byzantine = {byzantine};
    s.strategy = StrategyKind::SimulateCorrect;
    s.daemon = DaemonKind::Central;
    s.initial = Configuration(std::move(init));
    return s;
}

// r=0, u=1, v=2, b=3
CounterexampleCase four_path(CaseId id, MetricPtr ms, const Weight& w, const Weight& w_prime, const MetricValue& m) {
    const MetricValue mr = ms->root_value();
    std::vector<Edge> edges{{ProcessId{0}, ProcessId{1}, w}, {ProcessId{1}, ProcessId{2}, w_prime},
                            {ProcessId{2}, ProcessId{3}, w}};
    std::vector<ProcessState> init{state(std::nullopt, mr, 0), state(2, m, 2), state(3, m, 1),
                                   state(std::nullopt, mr, 0)};
    CounterexampleCase c{id,
                         counterexample_scenario(std::string(to_string(id)), {"r", "u", "v", "b"}, std::move(ms),
                                                 std::move(edges), ProcessId{3}, std::move(init)),
                         {ProcessId{1}, ProcessId{2}}};
    return c;
}

}  // namespace

std::string_view to_string(CaseId id) {
    for (const auto& [k, name] : kNames)
        if (k == id) return name;
    return "?";
}

std::optional<CaseId> parse_case(std::string_view name) {
    for (const auto& [k, n] : kNames)
        if (n == name) return k;
    return std::nullopt;
}

ProcessId CounterexampleCase::node(std::string_view label) const {
    const auto& labels = scenario.labels;
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw DomainError("no node labelled " + std::string(label));
    return ProcessId{static_cast<std::size_t>(it - labels.begin())};
}

CounterexampleCase build_case_single_valued() {
    auto ms = std::make_shared<TableMetric>(std::vector<std::string>{"m"}, std::vector<std::string>{"w"},
                                            std::vector<std::vector<std::string>>{{"m"}}, "m");
    const Weight w = *ms->parse_weight("w");
    const MetricValue m = ms->root_value();
    return four_path(CaseId::SingleValued, std::move(ms), w, w, m);
}

CounterexampleCase build_case_fixed_point(MetricPtr ms) {
    const auto weights = ms->enumerate_weights();
    if (!weights || !ms->enumerate_values()) throw CapabilityError("fixed points need enumerable M and W");
    const auto fixed = fixed_points(*ms);
    const MetricValue mr = ms->root_value();
    for (const auto& w : *weights) {
        const MetricValue m = ms->compose(mr, w);
        if (!ms->precedes(m, mr) || std::find(fixed.begin(), fixed.end(), m) == fixed.end()) continue;
        Weight w_prime = w;
        for (const auto& candidate : *weights)
            if (candidate != w) {
                w_prime = candidate;
                break;
            }
        return four_path(CaseId::FixedPoint, std::move(ms), w, w_prime, m);
    }
    throw CapabilityError("metric '" + ms->name() + "' has no fixed point m = met(mr, w) ≺ mr");
}

CounterexampleCase build_case_non_fixed_point(MetricPtr ms, const Weight& w, const Weight& w_prime) {
    if (!ms->contains_weight(w) || !ms->contains_weight(w_prime))
        throw CapabilityError("weights are not members of W");
    const MetricValue mr = ms->root_value();
    const MetricValue m = ms->compose(mr, w);
    if (!ms->precedes(m, mr) || !ms->precedes(ms->compose(m, w_prime), m))
        throw CapabilityError("needs met(mr, w) ≺ mr and met(met(mr, w), w′) ≺ met(mr, w)");
    // r=0, u=1, v=2, v′=3, b=4
    std::vector<Edge> edges{{ProcessId{0}, ProcessId{1}, w},       {ProcessId{1}, ProcessId{2}, w_prime},
                            {ProcessId{1}, ProcessId{3}, w_prime}, {ProcessId{2}, ProcessId{4}, w},
                            {ProcessId{3}, ProcessId{4}, w}};
    std::vector<ProcessState> init{state(std::nullopt, mr, 0), state(0, m, 1), state(4, m, 1), state(4, m, 1),
                                   state(std::nullopt, mr, 0)};
    return CounterexampleCase{CaseId::NonFixedPoint,
                              counterexample_scenario("non-fixed-point", {"r", "u", "v", "v'", "b"}, std::move(ms),
                                                      std::move(edges), ProcessId{4}, std::move(init)),
                              {ProcessId{2}, ProcessId{3}}};
}

CounterexampleCase build_case(CaseId id) {
    switch (id) {
        case CaseId::SingleValued: return build_case_single_valued();
        case CaseId::FixedPoint: return build_case_fixed_point(make_builtin_metric("flow:10"));
        case CaseId::NonFixedPoint:
            return build_case_non_fixed_point(make_builtin_metric("sp"), Weight{1}, Weight{1});
    }
    throw InternalError("unknown counterexample case");
}

CounterexampleRun run_counterexample(const CounterexampleCase& c, std::size_t max_steps) {
    const auto& s = c.scenario;
    Engine engine(s.topology, s.metric, s.byzantine, s.engine_options(), s.initial);
    CounterexampleRun run;
    std::vector<bool> moved(s.topology->size(), false);
    for (std::size_t i = 0; i < max_steps; ++i) {
        const auto& rec = engine.step();
        ++run.steps;
        for (const auto& ch : rec.changes) moved[ch.process.index] = true;
        if (rec.enabled_correct == 0 && rec.changes.empty()) {
            run.settled = true;
            break;
        }
    }
    for (auto v : s.topology->processes())
        if (moved[v.index] && !engine.evaluator().is_byzantine(v)) run.disturbed.push_back(v);
    run.final_configuration = engine.configuration();
    run.trace = engine.trace();
    return run;
}

ContainmentArea containment_area_bruteforce(const Topology& t, const MetricSpace& ms,
                                            std::span<const ProcessId> byz) {
    ContainmentArea area;
    area.byzantine = normalize_byzantine(t, byz);
    if (area.byzantine.empty()) return area;
    const auto from_root = compute_mu_bruteforce(t, ms, t.root());
    std::vector<MuVector> from_byz;
    for (auto b : area.byzantine) from_byz.push_back(compute_mu_bruteforce(t, ms, b));
    for (auto v : t.processes()) {
        if (v == t.root() || std::binary_search(area.byzantine.begin(), area.byzantine.end(), v)) continue;
        MetricValue strongest = from_byz.front()[v.index];
        for (const auto& row : from_byz) strongest = ms.max_of(strongest, row[v.index]);
        if (ms.precedes_or_equal(from_root[v.index], strongest)) area.members.push_back(v);
    }
    return area;
}

namespace {

// r=0, L1=1 (upper left), R1=2 (upper right), L2=3 (lower left), R2=4 (lower right), b=5
enum Link { RL1, RR1, L1R1, R1R2, L1R2, L2R2, L1L2, BR2, L2B, kLinks };

constexpr std::array<std::pair<int, int>, kLinks> kEnds{{
    {0, 1}, {0, 2}, {1, 2}, {2, 4}, {1, 4}, {3, 4}, {1, 3}, {5, 4}, {3, 5},
}};

ExampleSystem example(std::string name, MetricPtr ms, const std::array<const char*, kLinks>& weights) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < kLinks; ++i) {
        const auto w = ms->parse_weight(weights[i]);
        if (!w) throw InternalError("example weight " + std::string(weights[i]) + " is not in W");
        edges.push_back({ProcessId{kEnds[i].first}, ProcessId{kEnds[i].second}, *w});
    }
    Scenario s;
    s.name = name;
    s.labels = {"r", "L1", "R1", "L2", "R2", "b"};
    s.topology = std::make_shared<Topology>(6, ProcessId{0}, std::move(edges));
    s.metric = ms;
    s.byzantine = {ProcessId{5}};
    auto expected = containment_area_bruteforce(*s.topology, *ms, s.byzantine);
    return ExampleSystem{std::move(name), std::move(s), std::move(expected), ms->root_value()};
}

}  // namespace

std::vector<ExampleSystem> build_example_systems() {
    const auto sp = make_builtin_metric("sp");
    const auto flow = make_builtin_metric("flow:10:32");
    const auto reliability = make_builtin_metric("reliability");
    //                                         r-L1  r-R1  L1-R1 R1-R2 L1-R2 L2-R2 L1-L2 b-R2  L2-b
    std::vector<ExampleSystem> out;
    out.push_back(example("sp-1", sp, {"7", "6", "5", "4", "10", "8", "6", "32", "16"}));
    out.push_back(example("sp-2", sp, {"0", "0", "0", "0", "0", "0", "0", "0", "0"}));
    out.push_back(example("flow-1", flow, {"7", "6", "5", "4", "10", "8", "6", "32", "16"}));
    out.push_back(example("flow-2", flow, {"7", "10", "6", "13", "5", "1", "3", "12", "11"}));
    out.push_back(example("reliability-1", reliability, {"0.75", "0.75", "1", "0.3", "0.8", "1", "0.4", "0.75", "0.75"}));
    out.push_back(example("reliability-2", reliability, {"0.25", "0.75", "0.25", "1", "0.5", "1", "0.25", "0.75", "0.5"}));
    return out;
}

}  // namespace ssmax
