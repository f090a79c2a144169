#include "ssmax/engine.hpp"
#include "ssmax/faults.hpp"
#include "ssmax/protocol.hpp"
#include "support.hpp"

#include <doctest.h>

#include <set>

using namespace ssmax;

namespace {

ProcessId p(int i) { return ProcessId{i}; }
Edge e(int a, int b, std::int64_t weight = 1) { return {p(a), p(b), Weight{weight}}; }

ProcessState st(std::optional<int> parent, std::int64_t level, std::size_t dist) {
    ProcessState s;
    if (parent) s.parent = p(*parent);
    s.level = MetricValue{level};
    s.dist = dist;
    return s;
}

}  // namespace

TEST_SUITE("faults") {

TEST_CASE("strategy names") {
    for (auto k : {StrategyKind::Lure, StrategyKind::Random, StrategyKind::Oscillate, StrategyKind::SimulateCorrect})
        CHECK(parse_strategy(to_string(k)) == k);
    CHECK(to_string(StrategyKind::SimulateCorrect) == "simulate-correct");
    CHECK_FALSE(parse_strategy("sleep"));
}

TEST_CASE("lure claims the root shape") {
    Topology t(2, p(0), {e(0, 1, 4)});
    Configuration cfg({st(std::nullopt, 10, 0), st(0, 4, 1)});
    Rng rng(1);
    FlowMetric flow(10);
    const auto s = strategy_lure({t, flow, cfg, p(1), 1, rng, MetricValue{0}});
    CHECK_FALSE(s.parent);
    CHECK(s.level == MetricValue{10});
    CHECK(s.dist == 0);

    ShortestPathMetric sp;
    const auto z = strategy_lure({t, sp, cfg, p(1), 1, rng, MetricValue{4}});
    CHECK(z.level == MetricValue{0});
    CHECK(within_domain(t, sp, p(1), z, true));
}

TEST_CASE("random draws stay in the domain and are reproducible") {
    Rng graph_rng(8);
    for (const auto& ms : testing::corpus_metrics()) {
        const auto t = testing::random_connected(6, testing::weight_pool(*ms), 0.4, true, graph_rng);
        const auto cfg = random_configuration(t, *ms, {}, graph_rng);
        const ProcessId b = t.root() == p(0) ? p(1) : p(0);
        Rng a(99);
        Rng c(99);
        for (std::uint64_t k = 1; k <= 10000; ++k) {
            const auto s = strategy_random({t, *ms, cfg, b, k, a, ms->root_value()});
            CHECK(within_domain(t, *ms, b, s, true));
            CHECK(s == strategy_random({t, *ms, cfg, b, k, c, ms->root_value()}));
        }
    }
}

TEST_CASE("random levels on a small flow metric") {
    FlowMetric flow(2);
    Topology t(3, p(0), {e(0, 1, 2), e(1, 2, 1)});
    Configuration cfg({st(std::nullopt, 2, 0), st(0, 2, 1), st(1, 1, 2)});
    Rng rng(4);
    std::set<std::int64_t> seen;
    std::set<std::size_t> dists;
    std::size_t bottom = 0;
    for (std::uint64_t k = 1; k <= 2000; ++k) {
        const auto s = strategy_random({t, flow, cfg, p(2), k, rng, MetricValue{0}});
        seen.insert(s.level.value.numerator());
        dists.insert(s.dist);
        if (!s.parent) ++bottom;
    }
    CHECK(seen == std::set<std::int64_t>{0, 1, 2});
    CHECK(dists == std::set<std::size_t>{0, 1, 2, 3});
    CHECK(bottom > 0);
    CHECK(bottom < 2000);
}

TEST_CASE("oscillate alternates by parity") {
    ShortestPathMetric sp;
    Topology t(4, p(0), {e(0, 1), e(1, 2), e(2, 3)});
    Configuration cfg({st(std::nullopt, 0, 0), st(0, 1, 1), st(1, 2, 2), st(2, 3, 3)});
    Rng rng(0);
    const auto even = strategy_oscillate({t, sp, cfg, p(3), 2, rng, MetricValue{2}});
    CHECK(even == strategy_lure({t, sp, cfg, p(3), 2, rng, MetricValue{2}}));
    const auto odd = strategy_oscillate({t, sp, cfg, p(3), 3, rng, MetricValue{2}});
    CHECK(odd.parent == p(2));
    CHECK(odd.level == MetricValue{2});
    CHECK(odd.dist == t.path_bound());
    CHECK(within_domain(t, sp, p(3), odd, true));
}

TEST_CASE("oscillation keeps disturbing its neighbor") {
    auto t = std::make_shared<const Topology>(4, p(0), std::vector<Edge>{e(0, 1), e(1, 2), e(2, 3)});
    auto sp = make_builtin_metric("sp");
    EngineOptions o;
    o.daemon = DaemonKind::Synchronous;
    o.strategy = StrategyKind::Oscillate;
    o.seed = 2;
    Engine engine(t, sp, {p(3)}, o);
    std::size_t v_moves = 0;
    for (int i = 0; i < 200; ++i) {
        const auto& rec = engine.step();
        for (const auto& c : rec.changes)
            if (c.process == p(2)) ++v_moves;
    }
    CHECK(v_moves > 50);
}

TEST_CASE("simulate-correct fires the protocol's own rule") {
    ShortestPathMetric sp;
    Topology t(4, p(0), {e(0, 1), e(1, 2), e(2, 3)});
    Rng rng(0);
    Configuration inconsistent({st(std::nullopt, 0, 0), st(0, 1, 1), st(1, 2, 2), st(2, 3, 1)});
    const auto s = strategy_simulate_correct({t, sp, inconsistent, p(3), 1, rng, MetricValue{3}});
    CHECK(s == apply_rule(t, sp, inconsistent, p(3), RuleId::R1));
    CHECK(s.dist == 3);

    Configuration fixpoint({st(std::nullopt, 0, 0), st(0, 1, 1), st(1, 2, 2), st(2, 3, 3)});
    CHECK(strategy_simulate_correct({t, sp, fixpoint, p(3), 1, rng, MetricValue{3}}) == fixpoint[p(3)]);

    Configuration rooted({st(std::nullopt, 0, 0), st(0, 1, 1), st(1, 2, 2), st(std::nullopt, 0, 0)});
    const auto projected = strategy_simulate_correct({t, sp, rooted, p(3), 1, rng, MetricValue{3}});
    CHECK(projected.parent == p(2));
    CHECK(projected.level == MetricValue{3});
    CHECK(projected.dist == 3);
}

TEST_CASE("simulate-correct reproduces the fault-free run") {
    Rng rng(123);
    for (const auto& ms : testing::corpus_metrics()) {
        for (int trial = 0; trial < 10; ++trial) {
            auto t = std::make_shared<const Topology>(
                testing::random_connected(6, testing::weight_pool(*ms), 0.3, true, rng));
            const auto byz = testing::random_byzantine(*t, 1 + uniform_below(rng, 2), rng);
            const auto initial = random_configuration(*t, *ms, {}, rng);

            EngineOptions o;
            o.daemon = DaemonKind::Synchronous;
            o.seed = static_cast<std::uint64_t>(trial);
            Engine clean(t, ms, {}, o, initial);
            o.strategy = StrategyKind::SimulateCorrect;
            Engine faulty(t, ms, byz, o, initial);

            for (int i = 0; i < 200; ++i) {
                const auto& a = clean.step();
                const auto& b = faulty.step();
                REQUIRE(a.after == b.after);
            }
            CHECK(testing::tree_mismatch(*t, *ms, faulty.configuration()) == "");
        }
    }
}

TEST_CASE("every strategy output is in the domain during runs") {
    auto corpus = testing::graph_corpus(6, 7, 42);
    for (const auto& entry : corpus) {
        Rng rng(entry.topology->size());
        const auto byz = testing::random_byzantine(*entry.topology, 2, rng);
        for (auto kind : {StrategyKind::Lure, StrategyKind::Random, StrategyKind::Oscillate, StrategyKind::SimulateCorrect}) {
            EngineOptions o;
            o.daemon = DaemonKind::RandomSubset;
            o.strategy = kind;
            o.seed = 7;
            Engine engine(entry.topology, entry.metric, byz, o);
            for (int i = 0; i < 300; ++i) {
                const auto& rec = engine.step();
                for (auto b : byz)
                    CHECK(within_domain(*entry.topology, *entry.metric, b, rec.after[b], true));
            }
        }
    }
}

}  // TEST_SUITE
