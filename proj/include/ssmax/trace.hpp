#pragma once

#include "ssmax/analysis.hpp"
#include "ssmax/configuration.hpp"
#include "ssmax/protocol.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

namespace ssmax {

/// What one activated process did: a rule for correct processes, a Byzantine
/// write otherwise.
struct Action {
    ProcessId process;
    std::optional<RuleId> rule;

    bool byzantine() const { return !rule; }
    friend bool operator==(const Action&, const Action&) = default;
};

struct StateChange {
    ProcessId process;
    ProcessState before;
    ProcessState after;
};

struct StepRecord {
    std::size_t index = 0;             ///< configuration index produced by this step (1-based)
    std::vector<ProcessId> eligible;   ///< enabled correct processes ∪ B
    std::vector<ProcessId> activated;  ///< empty for a stutter step
    std::vector<Action> actions;
    std::vector<StateChange> changes;
    Configuration after;
    std::uint64_t digest = 0;
    Annotation annotation;
    std::size_t enabled_correct = 0;

    bool stutter() const { return activated.empty(); }
};

/// An execution prefix ρ_0, ρ_1, …, ρ_s with per-configuration annotations.
struct Trace {
    Configuration initial;
    Annotation initial_annotation;
    std::vector<StepRecord> steps;

    /// Number of configurations, s + 1.
    std::size_t size() const { return steps.size() + 1; }
    const Configuration& configuration(std::size_t i) const { return i == 0 ? initial : steps.at(i - 1).after; }
    const Annotation& annotation(std::size_t i) const {
        return i == 0 ? initial_annotation : steps.at(i - 1).annotation;
    }
};

enum class ContainmentMode : std::uint8_t { ExactLC, Horizon };

std::string_view to_string(ContainmentMode mode);

struct ContainmentVerdict {
    std::optional<std::size_t> first_contained_step;
    ContainmentMode mode = ContainmentMode::ExactLC;
    std::size_t horizon = 0;

    bool contained() const { return first_contained_step.has_value(); }
};

/// Earliest configuration index from which the system is contained. Returns
/// the first index in 𝓛𝓒 when there is one (exact-LC). Otherwise the earliest j
/// such that, over the next min(K, remaining) steps (at least one), every
/// S_B-correct process satisfies spec and keeps its O-variables (horizon).
ContainmentVerdict detect_containment(const Trace& trace, const Evaluator& ev, std::size_t horizon);

struct LevelProgress {
    std::optional<std::size_t> lc;      ///< first index where LC_{m_i} holds
    std::optional<std::size_t> saturated;  ///< first index of the level-m_i ⇒ dist-D milestone
    std::optional<std::size_t> decayed;  ///< first index where every I_{m_i} level is ≺ m_i
};

std::vector<LevelProgress> ladder_progress(const Trace& trace, const LadderIndex& ladder);

enum class PredicateKind : std::uint8_t { IM, LC };

struct ClosureResult {
    bool closed = true;
    std::optional<std::size_t> first_violation;
};

/// True iff once the predicate (IM_{m_i} or LC_{m_i}) holds it keeps holding.
ClosureResult check_closure(const Trace& trace, PredicateKind kind, std::size_t level);
ClosureResult check_closure(const std::vector<bool>& series);

/// Longest run of consecutive steps a process spent eligible without activation.
std::size_t max_fairness_wait(const Trace& trace, std::size_t process_count);

/// Line-delimited JSON: a header line for ρ_0 with a full snapshot, then one
/// line per step. Full snapshots are repeated whenever an annotation changes.
void write_trace_jsonl(std::ostream& out, const Trace& trace, const MetricSpace& ms);

}  // namespace ssmax
