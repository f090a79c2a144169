#pragma once

#include "ssmax/analysis.hpp"
#include "ssmax/daemon.hpp"
#include "ssmax/faults.hpp"
#include "ssmax/trace.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace ssmax {

/// Picks which enabled rule an activated correct process fires. The default
/// is RuleSet::priority.
using RuleSelector = std::function<RuleId(ProcessId, const RuleSet&)>;

struct EngineOptions {
    DaemonKind daemon = DaemonKind::Central;
    std::optional<std::size_t> fairness_bound;  ///< default 4n
    StrategyKind strategy = StrategyKind::Lure;
    std::uint64_t seed = 1;
    std::size_t horizon = 500;                  ///< K, steps kept after containment
    RuleSelector rule_selector;
};

struct RunResult {
    ContainmentVerdict verdict;
    std::size_t steps_executed = 0;
    bool quiescent = false;  ///< stopped because nothing was eligible any more
};

/// One simulation. Owns the configuration, the daemon state and the random
/// streams; deterministic given (scenario, options).
class Engine {
public:
    /// Without `initial`, the starting configuration is drawn from the seed.
    /// Throws DomainError on invalid topologies or out-of-domain initial states.
    Engine(std::shared_ptr<const Topology> topology, MetricPtr metric, std::vector<ProcessId> byzantine,
           EngineOptions options, std::optional<Configuration> initial = std::nullopt);

    const StepRecord& step();
    /// Steps until containment has been observed for K further steps, until the
    /// system is quiescent, or until max_steps. Throws DomainError for
    /// max_steps = 0.
    RunResult run(std::size_t max_steps);

    const Configuration& configuration() const { return current_; }
    const Trace& trace() const { return trace_; }
    const Evaluator& evaluator() const { return evaluator_; }
    const Daemon& daemon() const { return daemon_; }
    const EngineOptions& options() const { return options_; }
    std::size_t fairness_bound() const { return daemon_.fairness_bound(); }

private:
    std::shared_ptr<const Topology> topology_;
    MetricPtr metric_;
    EngineOptions options_;
    Evaluator evaluator_;
    std::vector<bool> byzantine_;
    Daemon daemon_;
    Rng daemon_rng_;
    std::vector<Rng> adversary_rngs_;
    Configuration current_;
    Trace trace_;
};

/// The default step budget, 50 · n · |realized values| · F.
std::size_t default_max_steps(const Evaluator& ev, std::size_t fairness_bound);

}  // namespace ssmax
