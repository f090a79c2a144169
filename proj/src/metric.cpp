#include "ssmax/metric.hpp"

#include "ssmax/errors.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace ssmax {

MetricValue MetricSpace::sample_value(Rng&) const {
    throw CapabilityError("metric '" + name() + "' has no value sampler");
}

Weight MetricSpace::sample_weight(Rng&) const {
    throw CapabilityError("metric '" + name() + "' has no weight sampler");
}

std::optional<MetricValue> MetricSpace::parse_value(std::string_view text) const {
    auto parsed = parse_rational(text);
    if (!parsed) return std::nullopt;
    MetricValue value{*parsed};
    if (!contains_value(value)) return std::nullopt;
    return value;
}

std::optional<Weight> MetricSpace::parse_weight(std::string_view text) const {
    auto parsed = parse_rational(text);
    if (!parsed) return std::nullopt;
    Weight weight{*parsed};
    if (!contains_weight(weight)) return std::nullopt;
    return weight;
}

MetricValue MetricSpace::draw_level(Rng& rng) const {
    if (auto values = enumerate_values()) {
        std::vector<MetricValue> levels;
        const MetricValue mr = root_value();
        for (const auto& m : *values)
            if (precedes_or_equal(m, mr)) levels.push_back(m);
        return levels.at(uniform_below(rng, levels.size()));
    }
    if (has_sampler()) return sample_value(rng);
    throw CapabilityError("metric '" + name() + "' has neither a value enumeration nor a sampler");
}

MetricValue met(const MetricSpace& ms, const MetricValue& m, const Weight& w) {
    if (!ms.contains_value(m))
        throw DomainError("metric value " + ms.format_value(m) + " is not in M of '" + ms.name() + "'");
    if (!ms.contains_weight(w))
        throw DomainError("weight " + ms.format_weight(w) + " is not in W of '" + ms.name() + "'");
    return ms.compose(m, w);
}

MetricValue max_by_order(const MetricSpace& ms, std::span<const MetricValue> values) {
    if (values.empty()) throw DomainError("max_by_order of an empty sequence");
    MetricValue best = values.front();
    for (const auto& m : values.subspan(1))
        if (ms.precedes(best, m)) best = m;
    return best;
}

// ---------------------------------------------------------------------------

namespace {

bool is_natural(const Rational& r) { return r.denominator() == 1 && r.numerator() >= 0; }

bool contains(const std::optional<std::vector<std::int64_t>>& set, const Rational& r) {
    if (!is_natural(r)) return false;
    if (!set) return true;
    return std::find(set->begin(), set->end(), r.numerator()) != set->end();
}

std::string join_list(const std::vector<std::int64_t>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(xs[i]);
    }
    return out;
}

}  // namespace

ShortestPathMetric::ShortestPathMetric(std::optional<std::vector<std::int64_t>> values,
                                       std::optional<std::vector<std::int64_t>> weights)
    : values_(std::move(values)), weights_(std::move(weights)) {
    for (const auto* set : {&values_, &weights_}) {
        if (!*set) continue;
        for (auto x : **set)
            if (x < 0) throw DomainError("shortest-path domains are natural numbers");
    }
    if (values_ && std::find(values_->begin(), values_->end(), 0) == values_->end())
        throw DomainError("restricted shortest-path M must contain mr = 0");
}

std::string ShortestPathMetric::name() const {
    if (!values_ && !weights_) return "sp";
    std::string out = "sp[";
    out += values_ ? "M={" + join_list(*values_) + "}" : "M=N";
    out += ",";
    out += weights_ ? "W={" + join_list(*weights_) + "}" : "W=N";
    return out + "]";
}

MetricValue ShortestPathMetric::compose(const MetricValue& m, const Weight& w) const {
    return MetricValue{checked_add(m.value, w.value)};
}

bool ShortestPathMetric::contains_value(const MetricValue& m) const { return contains(values_, m.value); }
bool ShortestPathMetric::contains_weight(const Weight& w) const { return contains(weights_, w.value); }

std::optional<std::vector<MetricValue>> ShortestPathMetric::enumerate_values() const {
    if (!values_) return std::nullopt;
    std::vector<MetricValue> out;
    for (auto x : *values_) out.emplace_back(x);
    return out;
}

std::optional<std::vector<Weight>> ShortestPathMetric::enumerate_weights() const {
    if (!weights_) return std::nullopt;
    std::vector<Weight> out;
    for (auto x : *weights_) out.emplace_back(x);
    return out;
}

MetricValue ShortestPathMetric::sample_value(Rng& rng) const {
    if (values_) return MetricValue{(*values_)[uniform_below(rng, values_->size())]};
    return MetricValue{static_cast<std::int64_t>(uniform_below(rng, kSampleCeiling + 1))};
}

Weight ShortestPathMetric::sample_weight(Rng& rng) const {
    if (weights_) return Weight{(*weights_)[uniform_below(rng, weights_->size())]};
    return Weight{static_cast<std::int64_t>(uniform_below(rng, kSampleCeiling + 1))};
}

// ---------------------------------------------------------------------------

FlowMetric::FlowMetric(std::int64_t mr, std::optional<std::int64_t> weight_cap)
    : mr_(mr), weight_cap_(weight_cap.value_or(mr)) {
    if (mr_ < 0) throw DomainError("flow mr must be a natural number");
    if (weight_cap_ < 0) throw DomainError("flow weight cap must be a natural number");
}

std::string FlowMetric::name() const {
    if (weight_cap_ == mr_) return "flow:" + std::to_string(mr_);
    return "flow:" + std::to_string(mr_) + ":" + std::to_string(weight_cap_);
}

MetricValue FlowMetric::compose(const MetricValue& m, const Weight& w) const {
    return MetricValue{std::min(m.value, w.value)};
}

bool FlowMetric::contains_value(const MetricValue& m) const {
    return is_natural(m.value) && m.value.numerator() <= mr_;
}

bool FlowMetric::contains_weight(const Weight& w) const {
    return is_natural(w.value) && w.value.numerator() <= weight_cap_;
}

std::optional<std::vector<MetricValue>> FlowMetric::enumerate_values() const {
    std::vector<MetricValue> out;
    for (std::int64_t m = 0; m <= mr_; ++m) out.emplace_back(m);
    return out;
}

std::optional<std::vector<Weight>> FlowMetric::enumerate_weights() const {
    std::vector<Weight> out;
    for (std::int64_t w = 0; w <= weight_cap_; ++w) out.emplace_back(w);
    return out;
}

// ---------------------------------------------------------------------------

ReliabilityMetric::ReliabilityMetric(std::vector<Rational> grid) {
    for (const auto& g : grid)
        if (g < 0 || g > 1) throw DomainError("reliability grid values must lie in [0, 1]");
    if (std::find(grid.begin(), grid.end(), Rational(1)) == grid.end())
        throw DomainError("reliability grid must contain mr = 1");
    grid_ = std::move(grid);
}

bool ReliabilityMetric::contains_value(const MetricValue& m) const {
    if (grid_) return std::find(grid_->begin(), grid_->end(), m.value) != grid_->end();
    return m.value >= 0 && m.value <= 1;
}

bool ReliabilityMetric::contains_weight(const Weight& w) const {
    if (grid_) return std::find(grid_->begin(), grid_->end(), w.value) != grid_->end();
    return w.value >= 0 && w.value <= 1;
}

std::optional<std::vector<MetricValue>> ReliabilityMetric::enumerate_values() const {
    if (!grid_) return std::nullopt;
    std::vector<MetricValue> out;
    for (const auto& g : *grid_) out.emplace_back(g);
    return out;
}

std::optional<std::vector<Weight>> ReliabilityMetric::enumerate_weights() const {
    if (!grid_) return std::nullopt;
    std::vector<Weight> out;
    for (const auto& g : *grid_) out.emplace_back(g);
    return out;
}

MetricValue ReliabilityMetric::sample_value(Rng& rng) const {
    if (grid_) return MetricValue{(*grid_)[uniform_below(rng, grid_->size())]};
    auto k = static_cast<std::int64_t>(uniform_below(rng, kSampleDenominator + 1));
    return MetricValue{Rational(k, kSampleDenominator)};
}

Weight ReliabilityMetric::sample_weight(Rng& rng) const {
    if (grid_) return Weight{(*grid_)[uniform_below(rng, grid_->size())]};
    auto k = static_cast<std::int64_t>(uniform_below(rng, kSampleDenominator + 1));
    return Weight{Rational(k, kSampleDenominator)};
}

// ---------------------------------------------------------------------------

namespace {

std::optional<std::size_t> index_of(const std::vector<std::string>& labels, std::string_view label) {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels.begin());
}

std::optional<std::size_t> as_index(const Rational& r, std::size_t size) {
    if (r.denominator() != 1 || r.numerator() < 0) return std::nullopt;
    auto i = static_cast<std::size_t>(r.numerator());
    if (i >= size) return std::nullopt;
    return i;
}

void require_unique(const std::vector<std::string>& labels, const char* what) {
    std::map<std::string, int> seen;
    for (const auto& l : labels)
        if (seen[l]++) throw DomainError(std::string("duplicate ") + what + " label '" + l + "'");
}

}  // namespace

TableMetric::TableMetric(std::vector<std::string> value_labels, std::vector<std::string> weight_labels,
                         std::vector<std::vector<std::string>> table, std::string root_label)
    : value_labels_(std::move(value_labels)), weight_labels_(std::move(weight_labels)) {
    if (value_labels_.empty()) throw DomainError("table metric needs at least one value");
    if (weight_labels_.empty()) throw DomainError("table metric needs at least one weight");
    require_unique(value_labels_, "value");
    require_unique(weight_labels_, "weight");
    if (value_labels_.back() != root_label)
        throw DomainError("table metric mr '" + root_label + "' must be the last (≺-greatest) listed value");
    if (table.size() != value_labels_.size())
        throw DomainError("met table must have one row per value");
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i].size() != weight_labels_.size())
            throw DomainError("met table row " + std::to_string(i) + " must have one entry per weight");
        std::vector<std::size_t> row;
        for (const auto& entry : table[i]) {
            auto idx = index_of(value_labels_, entry);
            if (!idx) throw DomainError("met table entry '" + entry + "' is not a listed value");
            row.push_back(*idx);
        }
        table_.push_back(std::move(row));
    }
}

MetricValue TableMetric::compose(const MetricValue& m, const Weight& w) const {
    auto mi = as_index(m.value, value_labels_.size());
    auto wi = as_index(w.value, weight_labels_.size());
    if (!mi || !wi) throw DomainError("table metric lookup outside M x W");
    return MetricValue{static_cast<std::int64_t>(table_[*mi][*wi])};
}

MetricValue TableMetric::root_value() const {
    return MetricValue{static_cast<std::int64_t>(value_labels_.size() - 1)};
}

bool TableMetric::contains_value(const MetricValue& m) const {
    return as_index(m.value, value_labels_.size()).has_value();
}

bool TableMetric::contains_weight(const Weight& w) const {
    return as_index(w.value, weight_labels_.size()).has_value();
}

std::optional<std::vector<MetricValue>> TableMetric::enumerate_values() const {
    std::vector<MetricValue> out;
    for (std::size_t i = 0; i < value_labels_.size(); ++i) out.emplace_back(static_cast<std::int64_t>(i));
    return out;
}

std::optional<std::vector<Weight>> TableMetric::enumerate_weights() const {
    std::vector<Weight> out;
    for (std::size_t i = 0; i < weight_labels_.size(); ++i) out.emplace_back(static_cast<std::int64_t>(i));
    return out;
}

std::string TableMetric::format_value(const MetricValue& m) const {
    auto i = as_index(m.value, value_labels_.size());
    return i ? value_labels_[*i] : "<invalid:" + format_fraction(m.value) + ">";
}

std::string TableMetric::format_weight(const Weight& w) const {
    auto i = as_index(w.value, weight_labels_.size());
    return i ? weight_labels_[*i] : "<invalid:" + format_fraction(w.value) + ">";
}

std::optional<MetricValue> TableMetric::parse_value(std::string_view text) const {
    auto i = index_of(value_labels_, text);
    if (!i) return std::nullopt;
    return MetricValue{static_cast<std::int64_t>(*i)};
}

std::optional<Weight> TableMetric::parse_weight(std::string_view text) const {
    auto i = index_of(weight_labels_, text);
    if (!i) return std::nullopt;
    return Weight{static_cast<std::int64_t>(*i)};
}

const std::string& TableMetric::table_entry(std::size_t value_index, std::size_t weight_index) const {
    return value_labels_.at(table_.at(value_index).at(weight_index));
}

// ---------------------------------------------------------------------------

namespace {

std::optional<std::int64_t> parse_natural(std::string_view text) {
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size() || out < 0) return std::nullopt;
    return out;
}

}  // namespace

MetricPtr make_builtin_metric(std::string_view spec) {
    if (spec == "sp") return std::make_shared<ShortestPathMetric>();
    if (spec == "reliability") return std::make_shared<ReliabilityMetric>();
    if (spec.starts_with("flow:")) {
        std::string_view rest = spec.substr(5);
        std::optional<std::int64_t> cap;
        if (auto colon = rest.find(':'); colon != std::string_view::npos) {
            cap = parse_natural(rest.substr(colon + 1));
            if (!cap) throw DomainError("bad flow weight cap in '" + std::string(spec) + "'");
            rest = rest.substr(0, colon);
        }
        auto mr = parse_natural(rest);
        if (!mr) throw DomainError("bad flow mr in '" + std::string(spec) + "'");
        return std::make_shared<FlowMetric>(*mr, cap);
    }
    throw DomainError("unknown metric '" + std::string(spec) + "' (expected sp, flow:<mr>, reliability)");
}

}  // namespace ssmax
