#include "support.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace ssmax::testing {

namespace {

class MonusMetric final : public MetricSpace {
public:
    std::string name() const override { return "monus"; }
    MetricValue compose(const MetricValue& m, const Weight& w) const override {
        return MetricValue{std::max(m.value - w.value, Rational(0))};
    }
    bool precedes(const MetricValue& a, const MetricValue& b) const override { return a.value > b.value; }
    MetricValue root_value() const override { return MetricValue{0}; }
    bool contains_value(const MetricValue& m) const override { return in_range(m.value); }
    bool contains_weight(const Weight& w) const override { return in_range(w.value); }
    std::optional<std::vector<MetricValue>> enumerate_values() const override {
        std::vector<MetricValue> out;
        for (int i = 0; i <= 3; ++i) out.emplace_back(i);
        return out;
    }
    std::optional<std::vector<Weight>> enumerate_weights() const override {
        std::vector<Weight> out;
        for (int i = 0; i <= 3; ++i) out.emplace_back(i);
        return out;
    }

private:
    static bool in_range(const Rational& x) { return x.denominator() == 1 && x >= 0 && x <= 3; }
};

}  // namespace

MetricPtr monus_metric() { return std::make_shared<MonusMetric>(); }

MetricPtr collapsing_metric() {
    std::vector<std::string> values{"0", "1", "2", "3"};
    std::vector<std::string> weights{"0", "1"};
    std::vector<std::vector<std::string>> table{{"0", "0"}, {"1", "1"}, {"2", "2"}, {"3", "0"}};
    return std::make_shared<TableMetric>(values, weights, table, "3");
}

MetricPtr abs_difference_metric() {
    std::vector<std::string> labels{"0", "1", "2", "3"};
    std::vector<std::vector<std::string>> table;
    for (int m = 0; m < 4; ++m) {
        std::vector<std::string> row;
        for (int w = 0; w < 4; ++w) row.push_back(std::to_string(std::abs(m - w)));
        table.push_back(row);
    }
    return std::make_shared<TableMetric>(labels, labels, table, "3");
}

Topology random_connected(std::size_t n, const std::vector<Weight>& weights, double density, bool shuffle_order,
                          Rng& rng) {
    const auto draw_weight = [&] { return weights[uniform_below(rng, weights.size())]; };
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);

    std::vector<std::vector<bool>> linked(n, std::vector<bool>(n, false));
    std::vector<Edge> edges;
    const auto link = [&](std::size_t a, std::size_t b) {
        linked[a][b] = linked[b][a] = true;
        edges.push_back({ProcessId{a}, ProcessId{b}, draw_weight()});
    };
    for (std::size_t i = 1; i < n; ++i) link(perm[i], perm[uniform_below(rng, i)]);
    const auto threshold = static_cast<std::uint64_t>(density * 1000.0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (!linked[a][b] && uniform_below(rng, 1000) < threshold) link(a, b);

    std::optional<std::vector<std::vector<ProcessId>>> order;
    if (shuffle_order) {
        order.emplace(n);
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t u = 0; u < n; ++u)
                if (linked[v][u]) (*order)[v].push_back(ProcessId{u});
            auto& seq = (*order)[v];
            for (std::size_t i = seq.size(); i > 1; --i) std::swap(seq[i - 1], seq[uniform_below(rng, i)]);
        }
    }
    const ProcessId root{uniform_below(rng, n)};
    return Topology(n, root, std::move(edges), std::move(order));
}

std::vector<Weight> weight_pool(const MetricSpace& ms) {
    const auto name = ms.name();
    std::vector<Weight> out;
    if (name == "sp") {
        for (int w = 0; w <= 5; ++w) out.emplace_back(w);
    } else if (name.rfind("flow", 0) == 0) {
        for (int w = 0; w <= 10; ++w) out.emplace_back(w);
    } else {
        for (auto [a, b] : {std::pair{0, 1}, {1, 4}, {1, 2}, {3, 4}, {4, 5}, {9, 10}, {1, 1}}) out.emplace_back(Rational(a, b));
    }
    return out;
}

std::vector<MetricPtr> corpus_metrics() {
    return {make_builtin_metric("sp"), make_builtin_metric("flow:10"), make_builtin_metric("reliability")};
}

std::vector<CorpusEntry> graph_corpus(std::size_t count, std::size_t max_n, std::uint64_t seed) {
    Rng rng(seed);
    const auto metrics = corpus_metrics();
    std::vector<CorpusEntry> out;
    for (std::size_t i = 0; i < count; ++i) {
        const auto& ms = metrics[i % metrics.size()];
        const std::size_t n = 3 + uniform_below(rng, max_n - 2);
        const double density = 0.15 + 0.1 * static_cast<double>(uniform_below(rng, 5));
        auto t = std::make_shared<const Topology>(random_connected(n, weight_pool(*ms), density, i % 2 == 1, rng));
        out.push_back({std::move(t), ms});
    }
    return out;
}

std::vector<ProcessId> random_byzantine(const Topology& t, std::size_t size, Rng& rng) {
    std::vector<ProcessId> pool;
    for (auto v : t.processes())
        if (v != t.root()) pool.push_back(v);
    for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[uniform_below(rng, i)]);
    pool.resize(std::min(size, pool.size()));
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::string tree_mismatch(const Topology& t, const MetricSpace& ms, const Configuration& cfg) {
    const auto mu = compute_mu_bruteforce(t, ms, t.root());
    const auto oracle = max_metric_tree_oracle(t, ms);
    for (auto v : t.processes()) {
        const auto& s = cfg[v];
        const auto name = std::to_string(v.index);
        if (s.level != mu[v.index]) return "level of " + name + " differs from μ";
        if (v == t.root()) {
            if (s.parent || s.dist != 0) return "root state";
            continue;
        }
        if (!s.parent || !t.adjacent(v, *s.parent)) return "parent of " + name;
        if (ms.compose(mu[s.parent->index], t.weight(v, *s.parent)) != mu[v.index])
            return "parent link of " + name + " does not realize μ";
        if (!oracle[v.index]) return "oracle has no parent for " + name;
        std::size_t depth = 0;
        ProcessId cur = v;
        while (cur != t.root()) {
            if (++depth > t.size()) return "parent chain of " + name + " is cyclic";
            const auto& p = cfg[cur].parent;
            if (!p) return "parent chain of " + name + " does not reach the root";
            cur = *p;
        }
        if (s.dist != depth) return "dist of " + name + " is not its depth";
    }
    return {};
}

}  // namespace ssmax::testing
