#pragma once

#include "ssmax/random.hpp"
#include "ssmax/topology.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ssmax {

enum class DaemonKind : std::uint8_t { Central, Synchronous, RandomSubset, AdversarialFair };

std::string_view to_string(DaemonKind kind);
/// "central", "synchronous", "random-subset", "adversarial-fair".
std::optional<DaemonKind> parse_daemon(std::string_view name);

/// Picks the activated set among eligible processes (enabled correct ones plus
/// every Byzantine one) while enforcing bounded fairness: nobody stays eligible
/// for F consecutive steps without being activated.
///
/// central: one process per step. Processes whose wait reached max(0, F − n)
///   are served earliest-deadline-first; otherwise the pick is uniform.
/// synchronous: every eligible process.
/// random-subset: each eligible process with probability 1/2, plus everyone
///   whose wait reached F − 1; never empty.
/// adversarial-fair: only Byzantine processes and those about to exceed the
///   bound; a single uniform pick when that leaves nobody.
class Daemon {
public:
    Daemon(DaemonKind kind, std::size_t fairness_bound, std::size_t process_count);

    DaemonKind kind() const { return kind_; }
    std::size_t fairness_bound() const { return fairness_bound_; }

    /// `eligible` must be ascending; `byzantine` is a per-process mask. Returns
    /// an ascending subset, empty only when `eligible` is.
    std::vector<ProcessId> select(std::span<const ProcessId> eligible, const std::vector<bool>& byzantine, Rng& rng);

    /// Consecutive steps v has been eligible without activation.
    std::size_t wait(ProcessId v) const { return wait_.at(v.index); }

private:
    void account(std::span<const ProcessId> eligible, std::span<const ProcessId> activated);

    DaemonKind kind_;
    std::size_t fairness_bound_;
    std::vector<std::size_t> wait_;
};

}  // namespace ssmax
