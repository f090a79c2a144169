#pragma once

#include "ssmax/metric.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ssmax {

enum class Outcome { Pass, Fail };

/// Values (and the weight, when the property involves one) refuting a property.
struct Witness {
    std::vector<MetricValue> values;
    std::optional<Weight> weight;
};

struct CheckVerdict {
    Outcome outcome = Outcome::Pass;
    bool exhaustive = true;        ///< false means "sampled": a PASS is evidence, not proof
    std::size_t cases_examined = 0;
    std::optional<Witness> witness;

    bool passed() const { return outcome == Outcome::Pass; }
    /// "PASS (exhaustive, 16 cases)", "PASS (sampled, 10000 cases)", "FAIL witness m=1 w=1".
    std::string describe(const MetricSpace& ms) const;
};

/// met(m, w) ⪯ m for all m ∈ M, w ∈ W. Exhaustive when M and W enumerate,
/// otherwise `sample_budget` seeded draws. Throws CapabilityError when the
/// metric has neither enumerations nor a sampler.
CheckVerdict check_bounded(const MetricSpace& ms, std::size_t sample_budget, std::uint64_t seed = 1);

/// m ≺ m' ⇒ met(m, w) ⪯ met(m', w). Witness values are (m, m').
CheckVerdict check_monotonic(const MetricSpace& ms, std::size_t sample_budget, std::uint64_t seed = 1);

/// Irreflexivity, transitivity and totality of ≺ (exhaustive over triples when
/// enumerable, sampled triples otherwise).
CheckVerdict check_order_laws(const MetricSpace& ms, std::size_t sample_budget, std::uint64_t seed = 1);

/// Every m ∈ M \ {mr} is reachable from mr through a chain of met applications
/// with weights in W. Chains are explored breadth-first, at most `depth_bound`
/// long (|M| when unset). Requires enumerable M and W; throws CapabilityError
/// otherwise.
CheckVerdict check_utility(const MetricSpace& ms, std::optional<std::size_t> depth_bound = std::nullopt);

/// All m ∈ M with met(m, w) = m for every w ∈ W, in enumeration order.
/// Throws CapabilityError unless M and W both enumerate.
std::vector<MetricValue> fixed_points(const MetricSpace& ms);

}  // namespace ssmax
