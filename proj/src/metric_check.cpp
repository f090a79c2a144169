#include "ssmax/metric_check.hpp"

#include "ssmax/errors.hpp"

#include <deque>
#include <set>

namespace ssmax {

namespace {

struct Domains {
    std::optional<std::vector<MetricValue>> values;
    std::optional<std::vector<Weight>> weights;

    explicit Domains(const MetricSpace& ms) : values(ms.enumerate_values()), weights(ms.enumerate_weights()) {}

    bool exhaustive() const { return values && weights; }
};

void require_checkable(const MetricSpace& ms, const Domains& d) {
    if (d.exhaustive() || ms.has_sampler()) return;
    throw CapabilityError("metric '" + ms.name() + "' is neither enumerable nor sampleable");
}

MetricValue draw_value(const MetricSpace& ms, const Domains& d, Rng& rng) {
    if (d.values) return (*d.values)[uniform_below(rng, d.values->size())];
    return ms.sample_value(rng);
}

Weight draw_weight(const MetricSpace& ms, const Domains& d, Rng& rng) {
    if (d.weights) return (*d.weights)[uniform_below(rng, d.weights->size())];
    return ms.sample_weight(rng);
}

CheckVerdict fail(CheckVerdict v, std::vector<MetricValue> values, std::optional<Weight> w = std::nullopt) {
    v.outcome = Outcome::Fail;
    v.witness = Witness{std::move(values), w};
    return v;
}

}  // namespace

std::string CheckVerdict::describe(const MetricSpace& ms) const {
    std::string out = passed() ? "PASS" : "FAIL";
    out += exhaustive ? " (exhaustive, " : " (sampled, ";
    out += std::to_string(cases_examined) + " cases)";
    if (!witness) return out;

    const auto& vals = witness->values;
    out += " witness: ";
    if (vals.size() == 1) {
        out += "m=" + ms.format_value(vals[0]);
    } else if (vals.size() == 2) {
        out += "m=" + ms.format_value(vals[0]) + ", m'=" + ms.format_value(vals[1]);
    } else {
        out += "(";
        for (std::size_t i = 0; i < vals.size(); ++i) out += (i ? ", " : "") + ms.format_value(vals[i]);
        out += ")";
    }
    if (witness->weight) out += ", w=" + ms.format_weight(*witness->weight);
    return out;
}

CheckVerdict check_bounded(const MetricSpace& ms, std::size_t sample_budget, std::uint64_t seed) {
    Domains d(ms);
    require_checkable(ms, d);
    CheckVerdict v;
    v.exhaustive = d.exhaustive();
    auto violates = [&](const MetricValue& m, const Weight& w) { return ms.precedes(m, ms.compose(m, w)); };

    if (v.exhaustive) {
        for (const auto& m : *d.values)
            for (const auto& w : *d.weights) {
                ++v.cases_examined;
                if (violates(m, w)) return fail(v, {m}, w);
            }
        return v;
    }
    Rng rng(seed);
    for (std::size_t i = 0; i < sample_budget; ++i) {
        MetricValue m = draw_value(ms, d, rng);
        Weight w = draw_weight(ms, d, rng);
        ++v.cases_examined;
        if (violates(m, w)) return fail(v, {m}, w);
    }
    return v;
}

CheckVerdict check_monotonic(const MetricSpace& ms, std::size_t sample_budget, std::uint64_t seed) {
    Domains d(ms);
    require_checkable(ms, d);
    CheckVerdict v;
    v.exhaustive = d.exhaustive();
    // m ≺ m' must not produce met(m', w) ≺ met(m, w)
    auto violates = [&](const MetricValue& lo, const MetricValue& hi, const Weight& w) {
        return ms.precedes(lo, hi) && ms.precedes(ms.compose(hi, w), ms.compose(lo, w));
    };

    if (v.exhaustive) {
        for (const auto& m : *d.values)
            for (const auto& m2 : *d.values) {
                if (!ms.precedes(m, m2)) continue;
                for (const auto& w : *d.weights) {
                    ++v.cases_examined;
                    if (violates(m, m2, w)) return fail(v, {m, m2}, w);
                }
            }
        return v;
    }
    Rng rng(seed);
    for (std::size_t i = 0; i < sample_budget; ++i) {
        MetricValue a = draw_value(ms, d, rng);
        MetricValue b = draw_value(ms, d, rng);
        Weight w = draw_weight(ms, d, rng);
        if (ms.precedes(b, a)) std::swap(a, b);
        ++v.cases_examined;
        if (violates(a, b, w)) return fail(v, {a, b}, w);
    }
    return v;
}

CheckVerdict check_order_laws(const MetricSpace& ms, std::size_t sample_budget, std::uint64_t seed) {
    Domains d(ms);
    if (!d.values && !ms.has_sampler())
        throw CapabilityError("metric '" + ms.name() + "' is neither enumerable nor sampleable");
    CheckVerdict v;
    v.exhaustive = d.values.has_value();

    auto check_triple = [&](const MetricValue& a, const MetricValue& b, const MetricValue& c) -> bool {
        ++v.cases_examined;
        if (ms.precedes(a, a)) return false;
        const int relations = int(ms.precedes(a, b)) + int(ms.precedes(b, a)) + int(a == b);
        if (relations != 1) return false;
        if (ms.precedes(a, b) && ms.precedes(b, c) && !ms.precedes(a, c)) return false;
        return true;
    };

    if (v.exhaustive) {
        for (const auto& a : *d.values)
            for (const auto& b : *d.values)
                for (const auto& c : *d.values)
                    if (!check_triple(a, b, c)) return fail(v, {a, b, c});
        return v;
    }
    Rng rng(seed);
    for (std::size_t i = 0; i < sample_budget; ++i) {
        MetricValue a = ms.sample_value(rng);
        MetricValue b = ms.sample_value(rng);
        MetricValue c = ms.sample_value(rng);
        if (!check_triple(a, b, c)) return fail(v, {a, b, c});
    }
    return v;
}

CheckVerdict check_utility(const MetricSpace& ms, std::optional<std::size_t> depth_bound) {
    Domains d(ms);
    if (!d.exhaustive())
        throw CapabilityError("utility check of '" + ms.name() + "' needs enumerable M and W");
    const auto& values = *d.values;
    const std::size_t depth = depth_bound.value_or(values.size());

    std::set<MetricValue, NumericLess> reached{ms.root_value()};
    std::vector<MetricValue> frontier{ms.root_value()};
    CheckVerdict v;
    for (std::size_t step = 0; step < depth && !frontier.empty(); ++step) {
        std::vector<MetricValue> next;
        for (const auto& m : frontier)
            for (const auto& w : *d.weights) {
                ++v.cases_examined;
                MetricValue out = ms.compose(m, w);
                if (!ms.contains_value(out)) continue;  // chains must stay inside M
                if (reached.insert(out).second) next.push_back(out);
            }
        frontier = std::move(next);
    }
    for (const auto& m : values)
        if (!reached.contains(m)) return fail(v, {m});
    return v;
}

std::vector<MetricValue> fixed_points(const MetricSpace& ms) {
    Domains d(ms);
    if (!d.exhaustive())
        throw CapabilityError("fixed points of '" + ms.name() + "' need enumerable M and W");
    std::vector<MetricValue> out;
    for (const auto& m : *d.values) {
        bool fixed = true;
        for (const auto& w : *d.weights)
            if (!(ms.compose(m, w) == m)) {
                fixed = false;
                break;
            }
        if (fixed) out.push_back(m);
    }
    return out;
}

}  // namespace ssmax
