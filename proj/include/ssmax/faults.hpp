#pragma once

#include "ssmax/configuration.hpp"
#include "ssmax/metric.hpp"
#include "ssmax/random.hpp"
#include "ssmax/topology.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace ssmax {

enum class StrategyKind : std::uint8_t { Lure, Random, Oscillate, SimulateCorrect };

std::string_view to_string(StrategyKind kind);
/// Accepts the scenario-file names "lure", "random", "oscillate", "simulate-correct".
std::optional<StrategyKind> parse_strategy(std::string_view name);

/// What a Byzantine process sees when the daemon activates it.
struct AdversaryContext {
    const Topology& topology;
    const MetricSpace& metric;
    const Configuration& config;  ///< pre-step configuration
    ProcessId process;
    std::uint64_t step;           ///< index of the step being taken, starting at 1
    Rng& rng;                     ///< this process's private stream
    MetricValue weakest;          ///< a ≺-minimal realized value (bottom of the ladder)
};

/// (⊥, mr, 0): the chain-root shape, the most attractive state there is.
ProcessState strategy_lure(const AdversaryContext& ctx);

/// Uniform over prnt ∈ N_b ∪ {⊥}, levels from draw_level, dist ∈ {0..D}.
ProcessState strategy_random(const AdversaryContext& ctx);

/// Lure on even steps; on odd steps (first neighbor, weakest, D).
ProcessState strategy_oscillate(const AdversaryContext& ctx);

/// Fires the process's own highest-priority enabled SSMAX rule, or keeps the
/// state when none is enabled. A non-root process holding ⊥ has no legal
/// correct state; its parent is first projected onto the order-first neighbor.
ProcessState strategy_simulate_correct(const AdversaryContext& ctx);

ProcessState run_strategy(StrategyKind kind, const AdversaryContext& ctx);

}  // namespace ssmax
