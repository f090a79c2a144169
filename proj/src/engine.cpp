#include "ssmax/engine.hpp"

#include "ssmax/errors.hpp"
#include "ssmax/protocol.hpp"

#include <algorithm>

namespace ssmax {

namespace {

constexpr std::uint64_t kDaemonSalt = 0;
constexpr std::uint64_t kInitialSalt = 1;
constexpr std::uint64_t kAdversarySalt = 2;

std::shared_ptr<const Topology> checked(std::shared_ptr<const Topology> t, const MetricPtr& ms) {
    if (!t || !ms) throw DomainError("engine needs a topology and a metric");
    const auto problems = validate(*t, *ms);
    if (!problems.empty()) {
        std::string text = "invalid topology:";
        for (const auto& p : problems) text += " [" + p.kind + ": " + p.detail + "]";
        throw DomainError(text);
    }
    return t;
}

}  // namespace

Engine::Engine(std::shared_ptr<const Topology> topology, MetricPtr metric, std::vector<ProcessId> byzantine,
               EngineOptions options, std::optional<Configuration> initial)
    : topology_(checked(std::move(topology), metric)),
      metric_(std::move(metric)),
      options_(std::move(options)),
      evaluator_(topology_, metric_, byzantine),
      byzantine_(topology_->size(), false),
      daemon_(options_.daemon, options_.fairness_bound.value_or(4 * topology_->size()), topology_->size()),
      daemon_rng_(mix_seed(options_.seed, kDaemonSalt)) {
    const auto& t = *topology_;
    for (auto b : evaluator_.mu().byzantine()) byzantine_[b.index] = true;
    for (auto v : t.processes()) adversary_rngs_.emplace_back(mix_seed(options_.seed, kAdversarySalt + v.index));

    if (initial) {
        if (initial->size() != t.size()) throw DomainError("initial configuration has the wrong number of processes");
        for (auto v : t.processes())
            if (!within_domain(t, *metric_, v, (*initial)[v], byzantine_[v.index]))
                throw DomainError("initial state of process " + std::to_string(v.index) + " is outside its domain");
        current_ = std::move(*initial);
    } else {
        Rng rng(mix_seed(options_.seed, kInitialSalt));
        current_ = random_configuration(t, *metric_, evaluator_.mu().byzantine(), rng);
    }
    trace_.initial = current_;
    trace_.initial_annotation = evaluator_.annotate(current_);
}

const StepRecord& Engine::step() {
    const auto& t = *topology_;
    const auto& ms = *metric_;
    StepRecord rec;
    rec.index = trace_.steps.size() + 1;

    std::vector<RuleSet> enabled(t.size());
    for (auto v : t.processes()) {
        if (byzantine_[v.index]) {
            rec.eligible.push_back(v);
            continue;
        }
        enabled[v.index] = enabled_rules(t, ms, current_, v);
        if (!enabled[v.index].empty()) {
            rec.eligible.push_back(v);
            ++rec.enabled_correct;
        }
    }
    rec.activated = daemon_.select(rec.eligible, byzantine_, daemon_rng_);

    std::vector<std::pair<ProcessId, RuleId>> fired;
    std::vector<std::pair<ProcessId, ProcessState>> writes;
    const MetricValue weakest = evaluator_.ladder().levels.back();
    for (auto v : rec.activated) {
        if (byzantine_[v.index]) {
            AdversaryContext ctx{t, ms, current_, v, rec.index, adversary_rngs_[v.index], weakest};
            auto s = run_strategy(options_.strategy, ctx);
            if (!within_domain(t, ms, v, s, true))
                throw InternalError("strategy " + std::string(to_string(options_.strategy)) +
                                    " left the domain at process " + std::to_string(v.index));
            writes.emplace_back(v, std::move(s));
            rec.actions.push_back({v, std::nullopt});
        } else {
            const RuleId rule = options_.rule_selector ? options_.rule_selector(v, enabled[v.index])
                                                       : *enabled[v.index].priority();
            fired.emplace_back(v, rule);
            rec.actions.push_back({v, rule});
        }
    }

    Configuration next = resolve_simultaneous(t, ms, current_, fired);
    for (auto& [v, s] : writes) next[v] = std::move(s);

    for (auto v : t.processes())
        if (next[v] != current_[v]) rec.changes.push_back({v, current_[v], next[v]});

    const Annotation& previous = trace_.annotation(trace_.size() - 1);
    rec.annotation = rec.changes.empty() ? previous : evaluator_.annotate(next);
    rec.digest = digest(next);
    rec.after = next;
    current_ = std::move(next);
    trace_.steps.push_back(std::move(rec));
    return trace_.steps.back();
}

RunResult Engine::run(std::size_t max_steps) {
    if (max_steps == 0) throw DomainError("max_steps must be at least 1");
    RunResult result;
    std::optional<std::size_t> contained;
    if (trace_.annotation(trace_.size() - 1).legitimate()) contained = trace_.size() - 1;

    for (std::size_t i = 0; i < max_steps; ++i) {
        const auto& rec = step();
        ++result.steps_executed;
        if (!contained && rec.annotation.legitimate()) contained = rec.index;
        if (contained && rec.index - *contained >= options_.horizon) break;
        if (rec.eligible.empty()) {
            result.quiescent = true;
            break;
        }
    }
    result.verdict = detect_containment(trace_, evaluator_, options_.horizon);
    return result;
}

std::size_t default_max_steps(const Evaluator& ev, std::size_t fairness_bound) {
    return 50 * ev.topology().size() * ev.ladder().levels.size() * fairness_bound;
}

}  // namespace ssmax
