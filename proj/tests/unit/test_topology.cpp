#include "ssmax/errors.hpp"
#include "ssmax/topology.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <deque>

using namespace ssmax;

namespace {

ProcessId p(int i) { return ProcessId{i}; }
Edge e(int a, int b, std::int64_t weight = 1) { return {p(a), p(b), Weight{weight}}; }

bool has_kind(const std::vector<Violation>& vs, const std::string& kind) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == kind; });
}

}  // namespace

TEST_SUITE("topology") {

TEST_CASE("neighbors follow the stored order") {
    Topology path(3, p(0), {e(0, 1), e(1, 2)}, std::vector<std::vector<ProcessId>>{{p(1)}, {p(0), p(2)}, {p(1)}});
    const auto nu = path.neighbors(p(1));
    CHECK(std::vector<ProcessId>(nu.begin(), nu.end()) == std::vector<ProcessId>{p(0), p(2)});

    Topology star(4, p(0), {e(0, 3), e(0, 1), e(0, 2)},
                  std::vector<std::vector<ProcessId>>{{p(1), p(2), p(3)}, {p(0)}, {p(0)}, {p(0)}});
    const auto nr = star.neighbors(p(0));
    CHECK(std::vector<ProcessId>(nr.begin(), nr.end()) == std::vector<ProcessId>{p(1), p(2), p(3)});
    CHECK(star.neighbor_rank(p(0), p(3)) == 2u);
    CHECK_FALSE(star.neighbor_rank(p(1), p(2)));

    CHECK_THROWS_AS(path.neighbors(p(3)), DomainError);
}

TEST_CASE("default order is ascending id") {
    Topology t(4, p(0), {e(2, 0), e(0, 3), e(1, 0)});
    const auto n0 = t.neighbors(p(0));
    CHECK(std::vector<ProcessId>(n0.begin(), n0.end()) == std::vector<ProcessId>{p(1), p(2), p(3)});
    CHECK(t.path_bound() == 4);
}

TEST_CASE("weights are symmetric") {
    Topology t(2, p(0), {e(0, 1, 7)});
    CHECK(t.weight(p(0), p(1)) == Weight{7});
    CHECK(t.weight(p(1), p(0)) == Weight{7});
    Topology u(3, p(0), {e(0, 1), e(1, 2)});
    CHECK_THROWS_AS(u.weight(p(0), p(2)), DomainError);
}

TEST_CASE("distance") {
    Topology path(4, p(0), {e(0, 1), e(1, 2), e(2, 3)});
    CHECK(path.distance(p(2), p(2)) == 0);
    CHECK(path.distance(p(0), p(3)) == 3);
    Topology cycle(4, p(0), {e(0, 1), e(1, 2), e(2, 3), e(3, 0)});
    CHECK(cycle.distance(p(0), p(2)) == 2);
    CHECK(cycle.distance(p(1), p(3)) == 2);
    CHECK_THROWS_AS(cycle.distance(p(0), p(9)), DomainError);
}

TEST_CASE("distance is symmetric and satisfies the triangle inequality") {
    Rng rng(3);
    const std::vector<Weight> pool{Weight{1}};
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + uniform_below(rng, 9);
        const auto t = testing::random_connected(n, pool, 0.3, false, rng);
        REQUIRE(validate(t).empty());
        for (auto a : t.processes()) {
            const auto na = t.neighbors(a);
            std::vector<ProcessId> sorted(na.begin(), na.end());
            std::sort(sorted.begin(), sorted.end());
            CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
            for (auto b : t.processes()) {
                CHECK(t.distance(a, b) == t.distance(b, a));
                for (auto c : t.processes()) CHECK(t.distance(a, c) <= t.distance(a, b) + t.distance(b, c));
            }
        }
    }
}

TEST_CASE("validate reports structural problems") {
    Topology triangle(3, p(0), {e(0, 1), e(1, 2), e(0, 2)});
    CHECK(validate(triangle).empty());

    Topology apart(2, p(0), {});
    const auto v1 = validate(apart);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0].kind == "disconnected");

    Topology missing(3, p(0), {e(0, 1), e(1, 2)}, std::vector<std::vector<ProcessId>>{{p(1)}, {p(0)}, {p(1)}});
    const auto v2 = validate(missing);
    REQUIRE(v2.size() == 1);
    CHECK(v2[0].kind == "order incomplete");

    Topology loop(2, p(0), {e(0, 1), e(1, 1)});
    CHECK(has_kind(validate(loop), "self-loop"));

    Topology twice(2, p(0), {e(0, 1), e(1, 0)});
    CHECK(has_kind(validate(twice), "parallel edge"));

    Topology foreign(3, p(0), {e(0, 1), e(1, 2)},
                     std::vector<std::vector<ProcessId>>{{p(1), p(2)}, {p(0), p(2)}, {p(1)}});
    CHECK(has_kind(validate(foreign), "order invalid"));

    Topology tight(3, p(0), {e(0, 1), e(1, 2)}, std::nullopt, 1);
    CHECK(has_kind(validate(tight), "path bound"));
    Topology loose(3, p(0), {e(0, 1), e(1, 2)}, std::nullopt, 4);
    CHECK(has_kind(validate(loose), "path bound"));
}

TEST_CASE("validate against a metric checks weights") {
    FlowMetric flow(10);
    Topology t(2, p(0), {e(0, 1, 11)});
    const auto vs = validate(t, flow);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].kind == "weight not in W");
}

TEST_CASE("construction rejects unknown ids") {
    CHECK_THROWS_AS(Topology(2, p(2), {}), DomainError);
    CHECK_THROWS_AS(Topology(2, p(0), {e(0, 5)}), DomainError);
    CHECK_THROWS_AS(Topology(0, p(0), {}), DomainError);
}

}  // TEST_SUITE
