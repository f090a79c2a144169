#include "ssmax/engine.hpp"
#include "ssmax/errors.hpp"
#include "ssmax/protocol.hpp"
#include "support.hpp"

#include <doctest.h>

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

// star: center 0 is the root's neighbor a=1, b=2, c=3 around v=4
Topology star() { return Topology(5, p(0), {e(0, 1), e(1, 4), e(2, 4), e(3, 4), e(0, 2), e(0, 3)}); }

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("rule priority") {
    RuleSet all;
    for (auto r : {RuleId::R3, RuleId::R1, RuleId::R2}) all.insert(r);
    CHECK(all.priority() == RuleId::R2);
    CHECK(all.rules() == std::vector<RuleId>{RuleId::R2, RuleId::R1, RuleId::R3});
    RuleSet two;
    two.insert(RuleId::R3);
    two.insert(RuleId::R1);
    CHECK(two.priority() == RuleId::R1);
    CHECK(RuleSet{}.priority() == std::nullopt);
    CHECK(parse_rule("R2") == RuleId::R2);
    CHECK_FALSE(parse_rule("R4"));
}

TEST_CASE("guards") {
    ShortestPathMetric sp;
    Topology t(3, p(0), {e(0, 1), e(1, 2)});
    Configuration cfg({st(std::nullopt, 4, 0), st(0, 1, 1), st(1, 2, 2)});
    auto root = enabled_rules(t, sp, cfg, p(0));
    CHECK(root.size() == 1);
    CHECK(root.contains(RuleId::Rr));
    CHECK(enabled_rules(t, sp, cfg, p(1)).priority() == RuleId::R1);
    Configuration fine({st(std::nullopt, 0, 0), st(0, 1, 1), st(1, 2, 2)});
    for (auto v : t.processes()) CHECK(enabled_rules(t, sp, fine, v).empty());

    Configuration saturated({st(std::nullopt, 0, 0), st(0, 1, 1), st(1, 2, 3)});
    CHECK(enabled_rules(t, sp, saturated, p(2)).contains(RuleId::R1));

    Topology four(4, p(0), {e(0, 1), e(1, 2), e(2, 3), e(0, 3)});
    REQUIRE(four.path_bound() == 4);
    Configuration far({st(std::nullopt, 0, 0), st(2, 5, 4), st(1, 6, 4), st(0, 1, 1)});
    const auto rules = enabled_rules(four, sp, far, p(1));
    CHECK(rules.contains(RuleId::R2));
    CHECK(rules.contains(RuleId::R3));
    CHECK(rules.contains(RuleId::R1));
    CHECK(rules.priority() == RuleId::R2);
}

TEST_CASE("converged configurations are silent") {
    Rng rng(5);
    for (const auto& ms : testing::corpus_metrics()) {
        for (int trial = 0; trial < 10; ++trial) {
            auto t = std::make_shared<const Topology>(
                testing::random_connected(7, testing::weight_pool(*ms), 0.3, true, rng));
            EngineOptions o;
            o.daemon = DaemonKind::Central;
            o.seed = static_cast<std::uint64_t>(trial);
            Engine engine(t, ms, {}, o);
            REQUIRE(engine.run(100000).quiescent);
            for (auto v : t->processes()) CHECK(enabled_rules(*t, *ms, engine.configuration(), v).empty());
            CHECK(testing::tree_mismatch(*t, *ms, engine.configuration()) == "");
        }
    }
}

TEST_CASE("choose is round-robin") {
    // v=4 with neighbor order (a=1, b=2, c=3)
    const auto t = star();
    const auto around = t.neighbors(p(4));
    REQUIRE(std::vector<ProcessId>(around.begin(), around.end()) == std::vector<ProcessId>{p(1), p(2), p(3)});
    Configuration cfg({st(std::nullopt, 0, 0), st(0, 1, 1), st(0, 1, 1), st(0, 1, 1), st(1, 2, 2)});
    const std::vector<ProcessId> ac{p(1), p(3)};
    CHECK(choose(t, cfg, p(4), ac) == p(3));
    cfg[p(4)].parent = p(3);
    CHECK(choose(t, cfg, p(4), ac) == p(1));
    cfg[p(4)].parent = p(2);
    const std::vector<ProcessId> b{p(2)};
    CHECK(choose(t, cfg, p(4), b) == p(2));
    CHECK(choose(t, cfg, p(4), ac) == p(3));
    CHECK_THROWS_AS(choose(t, cfg, p(4), std::vector<ProcessId>{}), DomainError);
    CHECK_THROWS_AS(choose(t, cfg, p(4), std::vector<ProcessId>{p(0)}), DomainError);
}

TEST_CASE("choose follows a custom neighbor order") {
    std::vector<std::vector<ProcessId>> order(5);
    order[0] = {p(3), p(2), p(1)};
    order[1] = {p(4), p(0)};
    order[2] = {p(0), p(4)};
    order[3] = {p(4), p(0)};
    order[4] = {p(3), p(1), p(2)};
    Topology t(5, p(0), {e(0, 1), e(1, 4), e(2, 4), e(3, 4), e(0, 2), e(0, 3)}, order);
    Configuration cfg({st(std::nullopt, 0, 0), st(0, 1, 1), st(0, 1, 1), st(0, 1, 1), st(std::nullopt, 2, 2)});
    const std::vector<ProcessId> all{p(1), p(2), p(3)};
    CHECK(choose(t, cfg, p(4), all) == p(3));
    cfg[p(4)].parent = p(1);
    CHECK(choose(t, cfg, p(4), all) == p(2));
}

TEST_CASE("iterating choose visits every candidate") {
    const auto t = star();
    Configuration cfg({st(std::nullopt, 0, 0), st(0, 1, 1), st(0, 1, 1), st(0, 1, 1), st(1, 2, 2)});
    const std::vector<ProcessId> all{p(1), p(2), p(3)};
    std::vector<bool> seen(5, false);
    for (int i = 0; i < 3; ++i) {
        const auto c = choose(t, cfg, p(4), all);
        seen[c.index] = true;
        cfg[p(4)].parent = c;
    }
    CHECK(seen[1]);
    CHECK(seen[2]);
    CHECK(seen[3]);
}

TEST_CASE("rule bodies") {
    ShortestPathMetric sp;
    Topology edge(2, p(0), {e(0, 1)});
    Configuration cfg({st(std::nullopt, 3, 1), st(0, 5, 2)});
    const auto root = apply_rule(edge, sp, cfg, p(0), RuleId::Rr);
    CHECK_FALSE(root.parent);
    CHECK(root.level == sp.root_value());
    CHECK(root.dist == 0);

    Configuration r1({st(std::nullopt, 0, 0), st(0, 5, 2)});
    const auto u = apply_rule(edge, sp, r1, p(1), RuleId::R1);
    CHECK(u.parent == p(0));
    CHECK(u.level == MetricValue{1});
    CHECK(u.dist == 1);

    CHECK_THROWS_AS(apply_rule(edge, sp, r1, p(0), RuleId::Rr), ContractViolation);
    CHECK_THROWS_AS(apply_rule(edge, sp, r1, p(1), RuleId::Rr), ContractViolation);
}

TEST_CASE("R2 re-parents through choose") {
    ShortestPathMetric sp;
    // v=4 with eligible neighbors a=1 (dist 1) and c=3 (dist 0 is impossible; dist 2), b=2 saturated
    Topology t(6, p(0), {e(0, 1), e(1, 4), e(2, 4), e(3, 4), e(0, 3), e(2, 5), e(0, 5)});
    const std::size_t d = t.path_bound();
    Configuration cfg({st(std::nullopt, 0, 0), st(0, 1, 1), st(5, 9, d), st(0, 1, 2), st(2, 9, d), st(0, 1, 1)});
    REQUIRE(enabled_rules(t, sp, cfg, p(4)).contains(RuleId::R2));
    const auto s = apply_rule(t, sp, cfg, p(4), RuleId::R2);
    CHECK(s.parent == p(3));
    CHECK(s.dist == 3);
    CHECK(s.level == MetricValue{2});
}

TEST_CASE("R3 picks the best offer") {
    ShortestPathMetric sp;
    Topology t(4, p(0), {e(0, 1, 1), e(0, 2, 3), e(1, 3, 4), e(2, 3, 1)});
    Configuration cfg({st(std::nullopt, 0, 0), st(0, 1, 1), st(0, 3, 1), st(1, 9, 2)});
    REQUIRE(enabled_rules(t, sp, cfg, p(3)).contains(RuleId::R3));
    const auto s = apply_rule(t, sp, cfg, p(3), RuleId::R3);
    CHECK(s.parent == p(2));
    CHECK(s.level == MetricValue{4});
    CHECK(s.dist == 2);
}

TEST_CASE("apply_rule touches only v") {
    Rng rng(17);
    for (const auto& ms : testing::corpus_metrics()) {
        for (int trial = 0; trial < 50; ++trial) {
            const auto t = testing::random_connected(6, testing::weight_pool(*ms), 0.4, true, rng);
            const auto cfg = random_configuration(t, *ms, {}, rng);
            for (auto v : t.processes()) {
                for (auto rule : enabled_rules(t, *ms, cfg, v).rules()) {
                    const auto s = apply_rule(t, *ms, cfg, v, rule);
                    CHECK(within_domain(t, *ms, v, s, false));
                    const std::vector<std::pair<ProcessId, RuleId>> one{{v, rule}};
                    const auto next = resolve_simultaneous(t, *ms, cfg, one);
                    for (auto x : t.processes()) CHECK(next[x] == (x == v ? s : cfg[x]));
                }
            }
        }
    }
}

TEST_CASE("simultaneous steps read the old configuration") {
    ShortestPathMetric sp;
    Topology t(3, p(0), {e(0, 1), e(1, 2), e(0, 2)});
    Configuration cfg({st(std::nullopt, 0, 0), st(2, 7, 1), st(1, 4, 1)});
    const std::vector<std::pair<ProcessId, RuleId>> both{{p(1), RuleId::R1}, {p(2), RuleId::R1}};
    const auto next = resolve_simultaneous(t, sp, cfg, both);
    CHECK(next[p(1)].level == MetricValue{5});
    CHECK(next[p(1)].dist == 2);
    CHECK(next[p(2)].level == MetricValue{8});
    CHECK(next[p(2)].dist == 2);

    CHECK(resolve_simultaneous(t, sp, cfg, {}) == cfg);
    const std::vector<std::pair<ProcessId, RuleId>> twice{{p(1), RuleId::R1}, {p(1), RuleId::R1}};
    CHECK_THROWS_AS(resolve_simultaneous(t, sp, cfg, twice), ContractViolation);
    const std::vector<std::pair<ProcessId, RuleId>> disabled{{p(0), RuleId::Rr}};
    CHECK_THROWS_AS(resolve_simultaneous(t, sp, cfg, disabled), ContractViolation);
}

TEST_CASE("random configurations respect domains") {
    Rng rng(3);
    for (const auto& ms : testing::corpus_metrics()) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto t = testing::random_connected(6, testing::weight_pool(*ms), 0.3, true, rng);
            const auto byz = testing::random_byzantine(t, 2, rng);
            const auto cfg = random_configuration(t, *ms, byz, rng);
            for (auto v : t.processes()) {
                const bool b = std::find(byz.begin(), byz.end(), v) != byz.end();
                CHECK(within_domain(t, *ms, v, cfg[v], b));
                if (v == t.root()) CHECK_FALSE(cfg[v].parent);
                else if (!b) CHECK(cfg[v].parent);
            }
        }
    }
}

}  // TEST_SUITE
