#include "ssmax/errors.hpp"
#include "ssmax/metric.hpp"
#include "ssmax/metric_check.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ssmax;

namespace {

MetricValue v(std::int64_t x) { return MetricValue{x}; }
MetricValue v(std::int64_t num, std::int64_t den) { return MetricValue{Rational(num, den)}; }
Weight w(std::int64_t x) { return Weight{x}; }
Weight w(std::int64_t num, std::int64_t den) { return Weight{Rational(num, den)}; }

std::vector<Rational> quarter_grid() {
    return {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
}

}  // namespace

TEST_SUITE("metric") {

TEST_CASE("rational parsing is exact") {
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("0.75") == Rational(3, 4));
    CHECK(parse_rational("-0.5") == Rational(-1, 2));
    CHECK_FALSE(parse_rational("abc"));
    CHECK_FALSE(parse_rational("1/0"));
    CHECK(format_decimal(Rational(3, 4)) == "0.75");
    CHECK(format_decimal(Rational(1, 3)) == "1/3");
    CHECK(format_fraction(Rational(6, 8)) == "3/4");
}

TEST_CASE("met composes the three built-ins") {
    ShortestPathMetric sp;
    FlowMetric flow(10);
    ReliabilityMetric rel;
    CHECK(met(sp, v(3), w(2)) == v(5));
    CHECK(met(flow, v(10), w(4)) == v(4));
    CHECK(met(rel, v(1), w(3, 4)) == v(3, 4));
    CHECK(met(rel, v(1, 2), w(1, 2)) == v(1, 4));
}

TEST_CASE("met rejects arguments outside the domains") {
    FlowMetric flow(10);
    CHECK_THROWS_AS(met(flow, v(11), w(1)), DomainError);
    CHECK_THROWS_AS(met(flow, v(3), w(-1)), DomainError);
    ReliabilityMetric rel;
    CHECK_THROWS_AS(met(rel, v(2), w(1)), DomainError);
    ShortestPathMetric sp;
    CHECK_THROWS_AS(met(sp, v(-1), w(0)), DomainError);
}

TEST_CASE("flow weight cap widens W but keeps M") {
    FlowMetric flow(10, 32);
    CHECK(flow.contains_weight(w(32)));
    CHECK_FALSE(flow.contains_value(v(32)));
    CHECK(met(flow, v(10), w(32)) == v(10));
    CHECK(flow.name() == "flow:10:32");
}

TEST_CASE("max_by_order follows the metric's order") {
    ShortestPathMetric sp;
    FlowMetric flow(10);
    const std::vector<MetricValue> a{v(3), v(5), v(1)};
    CHECK(max_by_order(sp, a) == v(1));
    const std::vector<MetricValue> b{v(2), v(7), v(7)};
    CHECK(max_by_order(flow, b) == v(7));
    const std::vector<MetricValue> single{v(4)};
    CHECK(max_by_order(flow, single) == v(4));
    CHECK_THROWS_AS(max_by_order(flow, std::span<const MetricValue>{}), DomainError);
}

TEST_CASE("max_by_order agrees with pairwise comparison on short sequences") {
    FlowMetric flow(3);
    const auto values = *flow.enumerate_values();
    Rng rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t len = 1 + uniform_below(rng, 5);
        std::vector<MetricValue> seq;
        for (std::size_t i = 0; i < len; ++i) seq.push_back(values[uniform_below(rng, values.size())]);
        const auto got = max_by_order(flow, seq);
        for (const auto& x : seq) CHECK_FALSE(flow.precedes(got, x));
        CHECK(std::find(seq.begin(), seq.end(), got) != seq.end());
    }
}

TEST_CASE("built-ins are bounded and monotonic") {
    SUBCASE("flow(3) exhaustive") {
        FlowMetric flow(3);
        const auto b = check_bounded(flow, 100);
        CHECK(b.passed());
        CHECK(b.exhaustive);
        CHECK(b.cases_examined == 16);
        CHECK(check_monotonic(flow, 100).passed());
        CHECK(check_order_laws(flow, 100).passed());
    }
    SUBCASE("sp on a bounded window") {
        ShortestPathMetric sp(std::vector<std::int64_t>{0, 1, 2, 3, 4, 5}, std::vector<std::int64_t>{0, 1, 2});
        const auto b = check_bounded(sp, 100);
        CHECK(b.passed());
        CHECK(b.exhaustive);
    }
    SUBCASE("sp sampled") {
        ShortestPathMetric sp;
        const auto b = check_bounded(sp, 10000);
        CHECK(b.passed());
        CHECK_FALSE(b.exhaustive);
        CHECK(b.cases_examined == 10000);
        CHECK(b.describe(sp).find("sampled") != std::string::npos);
        CHECK(check_monotonic(sp, 10000).passed());
    }
    SUBCASE("reliability on a quarter grid") {
        ReliabilityMetric rel(quarter_grid());
        CHECK(check_bounded(rel, 100).passed());
        const auto m = check_monotonic(rel, 100);
        CHECK(m.passed());
        CHECK(m.exhaustive);
    }
}

TEST_CASE("non-maximizable fixtures fail with witnesses") {
    SUBCASE("monus violates boundedness at (1, 1)") {
        const auto ms = testing::monus_metric();
        const auto b = check_bounded(*ms, 100);
        REQUIRE_FALSE(b.passed());
        REQUIRE(b.witness);
        CHECK(ms->format_value(b.witness->values.at(0)) == "1");
        CHECK(ms->format_weight(*b.witness->weight) == "1");
        CHECK(b.describe(*ms).find("m=1") != std::string::npos);
    }
    SUBCASE("absolute difference is not monotonic") {
        const auto metric = testing::abs_difference_metric();
        const auto& ms = *metric;
        const auto verdict = check_monotonic(ms, 100);
        REQUIRE_FALSE(verdict.passed());
        REQUIRE(verdict.witness);
        const auto& wit = *verdict.witness;
        REQUIRE(wit.values.size() == 2);
        CHECK(ms.precedes(wit.values[0], wit.values[1]));
        CHECK(ms.precedes(ms.compose(wit.values[1], *wit.weight), ms.compose(wit.values[0], *wit.weight)));
    }
    SUBCASE("collapsing metric is bounded but not monotonic") {
        const auto ms = testing::collapsing_metric();
        CHECK(check_bounded(*ms, 100).passed());
        CHECK_FALSE(check_monotonic(*ms, 100).passed());
    }
}

TEST_CASE("utility") {
    CHECK(check_utility(FlowMetric(2)).passed());
    ShortestPathMetric sp(std::vector<std::int64_t>{0, 1, 2}, std::vector<std::int64_t>{2});
    const auto u = check_utility(sp);
    CHECK_FALSE(u.passed());
    REQUIRE(u.witness);
    CHECK(u.witness->values.at(0) == v(1));
    TableMetric single({"m"}, {"w"}, {{"m"}}, "m");
    CHECK(check_utility(single).passed());
    CHECK_THROWS_AS(check_utility(ShortestPathMetric()), CapabilityError);
}

TEST_CASE("fixed points") {
    const auto flow = fixed_points(FlowMetric(10));
    CHECK(flow == std::vector<MetricValue>{v(0)});
    const auto rel = fixed_points(ReliabilityMetric(quarter_grid()));
    CHECK(std::find(rel.begin(), rel.end(), v(0)) != rel.end());
    ShortestPathMetric sp(std::vector<std::int64_t>{0, 1, 2, 3}, std::vector<std::int64_t>{1, 2});
    CHECK(fixed_points(sp).empty());
    CHECK_THROWS_AS(fixed_points(ShortestPathMetric()), CapabilityError);
}

TEST_CASE("table metrics") {
    TableMetric ms({"low", "mid", "high"}, {"a", "b"}, {{"low", "low"}, {"low", "mid"}, {"mid", "high"}}, "high");
    const auto high = *ms.parse_value("high");
    const auto mid = *ms.parse_value("mid");
    CHECK(ms.root_value() == high);
    CHECK(ms.precedes(mid, high));
    CHECK(ms.format_value(ms.compose(high, *ms.parse_weight("a"))) == "mid");
    CHECK_FALSE(ms.parse_value("nope"));
    CHECK_THROWS_AS(TableMetric({"a", "b"}, {"x"}, {{"a"}, {"b"}}, "a"), DomainError);
    CHECK_THROWS_AS(TableMetric({"a", "b"}, {"x"}, {{"a"}}, "b"), DomainError);
    CHECK_THROWS_AS(TableMetric({"a", "b"}, {"x"}, {{"a"}, {"c"}}, "b"), DomainError);
}

TEST_CASE("builtin names") {
    CHECK(make_builtin_metric("sp")->name() == "sp");
    CHECK(make_builtin_metric("flow:10")->name() == "flow:10");
    CHECK(make_builtin_metric("flow:10:32")->name() == "flow:10:32");
    CHECK(make_builtin_metric("reliability")->name() == "reliability");
    CHECK_THROWS_AS(make_builtin_metric("flow"), DomainError);
    CHECK_THROWS_AS(make_builtin_metric("flow:x"), DomainError);
    CHECK_THROWS_AS(make_builtin_metric("bandwidth"), DomainError);
}

TEST_CASE("level draws stay in the level domain") {
    Rng rng(5);
    FlowMetric flow(2);
    ReliabilityMetric rel;
    ShortestPathMetric sp;
    for (int i = 0; i < 1000; ++i) {
        const auto a = flow.draw_level(rng);
        CHECK((a.value >= 0 && a.value <= 2));
        const auto b = rel.draw_level(rng);
        CHECK((b.value >= 0 && b.value <= 1));
        CHECK(sp.draw_level(rng).value >= 0);
    }
}

}  // TEST_SUITE
