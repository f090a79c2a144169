#include "ssmax/faults.hpp"

#include "ssmax/protocol.hpp"

#include <array>
#include <utility>

namespace ssmax {

namespace {

constexpr std::array<std::pair<StrategyKind, std::string_view>, 4> kNames{{
    {StrategyKind::Lure, "lure"},
    {StrategyKind::Random, "random"},
    {StrategyKind::Oscillate, "oscillate"},
    {StrategyKind::SimulateCorrect, "simulate-correct"},
}};

}  // namespace

std::string_view to_string(StrategyKind kind) {
    for (const auto& [k, name] : kNames)
        if (k == kind) return name;
    return "?";
}

std::optional<StrategyKind> parse_strategy(std::string_view name) {
    for (const auto& [k, n] : kNames)
        if (n == name) return k;
    return std::nullopt;
}

ProcessState strategy_lure(const AdversaryContext& ctx) {
    return ProcessState{std::nullopt, ctx.metric.root_value(), 0};
}

ProcessState strategy_random(const AdversaryContext& ctx) {
    const auto nbrs = ctx.topology.neighbors(ctx.process);
    ProcessState s;
    const auto pick = uniform_below(ctx.rng, nbrs.size() + 1);
    if (pick < nbrs.size()) s.parent = nbrs[pick];
    s.level = ctx.metric.draw_level(ctx.rng);
    s.dist = uniform_below(ctx.rng, ctx.topology.path_bound() + 1);
    return s;
}

ProcessState strategy_oscillate(const AdversaryContext& ctx) {
    if (ctx.step % 2 == 0) return strategy_lure(ctx);
    const auto nbrs = ctx.topology.neighbors(ctx.process);
    ProcessState s;
    if (!nbrs.empty()) s.parent = nbrs.front();
    s.level = ctx.weakest;
    s.dist = ctx.topology.path_bound();
    return s;
}

ProcessState strategy_simulate_correct(const AdversaryContext& ctx) {
    const auto& t = ctx.topology;
    const ProcessId v = ctx.process;
    ProcessState current = ctx.config[v];
    if (v == t.root() || (current.parent && t.adjacent(v, *current.parent))) {
        const auto rule = enabled_rules(t, ctx.metric, ctx.config, v).priority();
        return rule ? apply_rule(t, ctx.metric, ctx.config, v, *rule) : current;
    }
    const auto nbrs = t.neighbors(v);
    if (nbrs.empty()) return current;
    Configuration projected = ctx.config;
    projected[v].parent = nbrs.front();
    const auto rule = enabled_rules(t, ctx.metric, projected, v).priority();
    return rule ? apply_rule(t, ctx.metric, projected, v, *rule) : projected[v];
}

ProcessState run_strategy(StrategyKind kind, const AdversaryContext& ctx) {
    switch (kind) {
        case StrategyKind::Lure: return strategy_lure(ctx);
        case StrategyKind::Random: return strategy_random(ctx);
        case StrategyKind::Oscillate: return strategy_oscillate(ctx);
        case StrategyKind::SimulateCorrect: return strategy_simulate_correct(ctx);
    }
    return ctx.config[ctx.process];
}

}  // namespace ssmax
