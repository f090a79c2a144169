#include "ssmax/protocol.hpp"

#include "ssmax/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>

namespace ssmax {

namespace {

constexpr std::array kAllRules{RuleId::Rr, RuleId::R1, RuleId::R2, RuleId::R3};
constexpr std::array kPriority{RuleId::Rr, RuleId::R2, RuleId::R1, RuleId::R3};

bool eligible(const Topology& t, const Configuration& cfg, ProcessId u) { return cfg[u].dist + 1 < t.path_bound(); }

MetricValue offer(const Topology& t, const MetricSpace& ms, const Configuration& cfg, ProcessId v, ProcessId u) {
    return ms.compose(cfg[u].level, t.weight(u, v));
}

ProcessState reattach(const Topology& t, const MetricSpace& ms, const Configuration& cfg, ProcessId v, ProcessId p) {
    return ProcessState{p, offer(t, ms, cfg, v, p), std::min(cfg[p].dist + 1, t.path_bound())};
}

}  // namespace

std::string_view to_string(RuleId rule) {
    switch (rule) {
        case RuleId::Rr: return "Rr";
        case RuleId::R1: return "R1";
        case RuleId::R2: return "R2";
        case RuleId::R3: return "R3";
    }
    return "?";
}

std::optional<RuleId> parse_rule(std::string_view text) {
    for (auto r : kAllRules)
        if (to_string(r) == text) return r;
    return std::nullopt;
}

std::size_t RuleSet::size() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::optional<RuleId> RuleSet::priority() const {
    for (auto r : kPriority)
        if (contains(r)) return r;
    return std::nullopt;
}

std::vector<RuleId> RuleSet::rules() const {
    std::vector<RuleId> out;
    for (auto r : kPriority)
        if (contains(r)) out.push_back(r);
    return out;
}

RuleSet enabled_rules(const Topology& t, const MetricSpace& ms, const Configuration& cfg, ProcessId v) {
    if (!t.contains(v)) throw DomainError("unknown process " + std::to_string(v.index));
    RuleSet rules;
    const auto& s = cfg[v];
    const std::size_t d = t.path_bound();

    if (v == t.root()) {
        if (s.level != ms.root_value() || s.dist != 0) rules.insert(RuleId::Rr);
        return rules;
    }
    if (s.parent && t.adjacent(v, *s.parent)) {
        const auto& sp = cfg[*s.parent];
        if (s.dist != std::min(sp.dist + 1, d) || s.level != offer(t, ms, cfg, v, *s.parent))
            rules.insert(RuleId::R1);
    }
    bool any_eligible = false;
    bool better = false;
    for (auto u : t.neighbors(v)) {
        if (!eligible(t, cfg, u)) continue;
        any_eligible = true;
        if (ms.precedes(s.level, offer(t, ms, cfg, v, u))) better = true;
    }
    if (s.dist == d && any_eligible) rules.insert(RuleId::R2);
    if (better) rules.insert(RuleId::R3);
    return rules;
}

ProcessId choose(const Topology& t, const Configuration& cfg, ProcessId v, std::span<const ProcessId> candidates) {
    if (candidates.empty()) throw DomainError("choose needs at least one candidate");
    std::optional<std::size_t> cursor;
    if (cfg[v].parent) cursor = t.neighbor_rank(v, *cfg[v].parent);

    std::optional<std::pair<std::size_t, ProcessId>> first;
    std::optional<std::pair<std::size_t, ProcessId>> after;
    for (auto c : candidates) {
        const auto rank = t.neighbor_rank(v, c);
        if (!rank) throw DomainError("candidate " + std::to_string(c.index) + " is not a neighbor");
        if (!first || *rank < first->first) first = {*rank, c};
        if (cursor && *rank > *cursor && (!after || *rank < after->first)) after = {*rank, c};
    }
    return after ? after->second : first->second;
}

ProcessState apply_rule(const Topology& t, const MetricSpace& ms, const Configuration& cfg, ProcessId v,
                        RuleId rule) {
    if (!enabled_rules(t, ms, cfg, v).contains(rule))
        throw ContractViolation(std::string(to_string(rule)) + " is not enabled at process " + std::to_string(v.index));

    switch (rule) {
        case RuleId::Rr: return ProcessState{std::nullopt, ms.root_value(), 0};
        case RuleId::R1: return reattach(t, ms, cfg, v, *cfg[v].parent);
        case RuleId::R2: {
            std::vector<ProcessId> candidates;
            for (auto u : t.neighbors(v))
                if (eligible(t, cfg, u)) candidates.push_back(u);
            return reattach(t, ms, cfg, v, choose(t, cfg, v, candidates));
        }
        case RuleId::R3: {
            std::optional<MetricValue> best;
            for (auto u : t.neighbors(v)) {
                if (!eligible(t, cfg, u)) continue;
                auto m = offer(t, ms, cfg, v, u);
                if (!best || ms.precedes(*best, m)) best = m;
            }
            std::vector<ProcessId> candidates;
            for (auto u : t.neighbors(v))
                if (eligible(t, cfg, u) && offer(t, ms, cfg, v, u) == *best) candidates.push_back(u);
            return reattach(t, ms, cfg, v, choose(t, cfg, v, candidates));
        }
    }
    throw InternalError("unknown rule");
}

Configuration resolve_simultaneous(const Topology& t, const MetricSpace& ms, const Configuration& cfg,
                                   std::span<const std::pair<ProcessId, RuleId>> chosen) {
    std::vector<bool> listed(t.size(), false);
    std::vector<std::pair<ProcessId, ProcessState>> writes;
    writes.reserve(chosen.size());
    for (const auto& [v, rule] : chosen) {
        if (!t.contains(v)) throw DomainError("unknown process " + std::to_string(v.index));
        if (listed[v.index]) throw ContractViolation("process " + std::to_string(v.index) + " listed twice");
        listed[v.index] = true;
        writes.emplace_back(v, apply_rule(t, ms, cfg, v, rule));
    }
    Configuration next = cfg;
    for (auto& [v, s] : writes) next[v] = std::move(s);
    return next;
}

bool within_domain(const Topology& t, const MetricSpace& ms, ProcessId v, const ProcessState& s, bool byzantine) {
    if (!t.contains(v)) return false;
    if (!ms.contains_value(s.level) || !ms.precedes_or_equal(s.level, ms.root_value())) return false;
    if (s.dist > t.path_bound()) return false;
    if (v == t.root()) return !s.parent;
    if (!s.parent) return byzantine;
    return t.contains(*s.parent) && t.adjacent(v, *s.parent);
}

Configuration random_configuration(const Topology& t, const MetricSpace& ms, std::span<const ProcessId> byz,
                                   Rng& rng) {
    std::vector<bool> faulty(t.size(), false);
    for (auto b : byz) {
        if (!t.contains(b)) throw DomainError("unknown process " + std::to_string(b.index));
        faulty[b.index] = true;
    }
    std::vector<ProcessState> states;
    states.reserve(t.size());
    for (auto v : t.processes()) {
        ProcessState s;
        const auto nbrs = t.neighbors(v);
        if (v != t.root()) {
            const std::size_t options = nbrs.size() + (faulty[v.index] ? 1 : 0);
            if (options > 0) {
                const auto pick = uniform_below(rng, options);
                if (pick < nbrs.size()) s.parent = nbrs[pick];
            }
        }
        s.level = ms.draw_level(rng);
        s.dist = uniform_below(rng, t.path_bound() + 1);
        states.push_back(std::move(s));
    }
    return Configuration(std::move(states));
}

}  // namespace ssmax
