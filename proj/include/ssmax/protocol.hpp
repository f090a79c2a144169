#pragma once

#include "ssmax/configuration.hpp"
#include "ssmax/metric.hpp"
#include "ssmax/topology.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace ssmax {

enum class RuleId : std::uint8_t { Rr, R1, R2, R3 };

std::string_view to_string(RuleId rule);
std::optional<RuleId> parse_rule(std::string_view text);

/// A set of rules, iterated in priority order Rr > R2 > R1 > R3.
class RuleSet {
public:
    RuleSet() = default;

    bool contains(RuleId r) const { return (bits_ & mask(r)) != 0; }
    void insert(RuleId r) { bits_ |= mask(r); }
    bool empty() const { return bits_ == 0; }
    std::size_t size() const;
    /// The rule fired on activation: the highest-priority member.
    std::optional<RuleId> priority() const;
    std::vector<RuleId> rules() const;

    friend bool operator==(const RuleSet&, const RuleSet&) = default;

private:
    static std::uint8_t mask(RuleId r) { return static_cast<std::uint8_t>(1U << static_cast<unsigned>(r)); }
    std::uint8_t bits_ = 0;
};

/// Guards of Rr, R1, R2, R3 evaluated for v, reading only v and N_v.
/// Byzantine processes are not special-cased: the caller decides whether to ask.
RuleSet enabled_rules(const Topology& t, const MetricSpace& ms, const Configuration& cfg, ProcessId v);

/// The round-robin macro: first candidate strictly after prnt_v in v's
/// neighbor order, wrapping to the order-first candidate. A ⊥ or foreign parent
/// has no position, so the order-first candidate is returned.
/// Throws DomainError when candidates is empty or contains a non-neighbor.
ProcessId choose(const Topology& t, const Configuration& cfg, ProcessId v, std::span<const ProcessId> candidates);

/// The state v takes when firing `rule`; throws ContractViolation unless the
/// guard holds in cfg.
ProcessState apply_rule(const Topology& t, const MetricSpace& ms, const Configuration& cfg, ProcessId v,
                        RuleId rule);

/// Evaluates every rule body against cfg, then writes all results at once.
/// Throws ContractViolation if any pair is not enabled or a process is listed twice.
Configuration resolve_simultaneous(const Topology& t, const MetricSpace& ms, const Configuration& cfg,
                                   std::span<const std::pair<ProcessId, RuleId>> chosen);

/// Domain check for a single state: level ∈ M with level ⪯ mr, dist ≤ D, and
/// the parent restriction (⊥ for the root, a neighbor for other correct
/// processes, a neighbor or ⊥ for Byzantine ones).
bool within_domain(const Topology& t, const MetricSpace& ms, ProcessId v, const ProcessState& s, bool byzantine);

/// An arbitrary configuration within the variable domains, drawn from rng.
/// Throws CapabilityError when the metric can neither enumerate nor sample M.
Configuration random_configuration(const Topology& t, const MetricSpace& ms, std::span<const ProcessId> byz,
                                   Rng& rng);

}  // namespace ssmax
