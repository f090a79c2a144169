#pragma once

#include "ssmax/random.hpp"
#include "ssmax/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ssmax {

/// A value of M. Deliberately has no operator<: the only meaningful order is
/// the metric's own `precedes`, which is reversed for shortest-path.
struct MetricValue {
    Rational value{0};

    MetricValue() = default;
    explicit MetricValue(Rational v) : value(v) {}
    explicit MetricValue(std::int64_t v) : value(v) {}

    friend bool operator==(const MetricValue&, const MetricValue&) = default;
};

/// An edge weight, a member of W.
struct Weight {
    Rational value{0};

    Weight() = default;
    explicit Weight(Rational v) : value(v) {}
    explicit Weight(std::int64_t v) : value(v) {}

    friend bool operator==(const Weight&, const Weight&) = default;
};

/// Numeric ordering for use as a container key only; unrelated to `precedes`.
struct NumericLess {
    bool operator()(const MetricValue& a, const MetricValue& b) const { return a.value < b.value; }
    bool operator()(const Weight& a, const Weight& b) const { return a.value < b.value; }
};

/// The routing-metric five-tuple (M, W, met, mr, ≺).
///
/// Implementations must keep `compose` closed over M × W, make `precedes` a
/// strict total order and keep `root_value` ≺-maximal. Domains that are finite
/// expose enumerations so the checkers can run exhaustively; infinite ones
/// provide samplers instead.
class MetricSpace {
public:
    virtual ~MetricSpace() = default;

    /// Canonical name as accepted in scenario files ("sp", "flow:10", ...).
    virtual std::string name() const = 0;

    /// met(m, w) without domain checks; see `met` for the checked version.
    virtual MetricValue compose(const MetricValue& m, const Weight& w) const = 0;

    /// a ≺ b.
    virtual bool precedes(const MetricValue& a, const MetricValue& b) const = 0;

    virtual MetricValue root_value() const = 0;

    virtual bool contains_value(const MetricValue& m) const = 0;
    virtual bool contains_weight(const Weight& w) const = 0;

    virtual std::optional<std::vector<MetricValue>> enumerate_values() const { return std::nullopt; }
    virtual std::optional<std::vector<Weight>> enumerate_weights() const { return std::nullopt; }

    virtual bool has_sampler() const { return false; }
    virtual MetricValue sample_value(Rng& rng) const;
    virtual Weight sample_weight(Rng& rng) const;

    virtual std::string format_value(const MetricValue& m) const { return format_decimal(m.value); }
    virtual std::string format_weight(const Weight& w) const { return format_decimal(w.value); }
    virtual std::optional<MetricValue> parse_value(std::string_view text) const;
    virtual std::optional<Weight> parse_weight(std::string_view text) const;

    bool precedes_or_equal(const MetricValue& a, const MetricValue& b) const { return a == b || precedes(a, b); }

    /// The ≺-larger of two values.
    const MetricValue& max_of(const MetricValue& a, const MetricValue& b) const { return precedes(a, b) ? b : a; }

    /// Uniform draw from the level domain {m ∈ M | m ⪯ mr}: the enumeration when
    /// finite, the sampler otherwise. Throws CapabilityError when neither exists.
    MetricValue draw_level(Rng& rng) const;
};

using MetricPtr = std::shared_ptr<const MetricSpace>;

/// met(m, w) with domain checks; throws DomainError for m ∉ M or w ∉ W.
MetricValue met(const MetricSpace& ms, const MetricValue& m, const Weight& w);

/// The ≺-maximal element of a nonempty sequence; throws DomainError when empty.
MetricValue max_by_order(const MetricSpace& ms, std::span<const MetricValue> values);

/// SP: met = m + w over the naturals, ≺ is numeric ">", mr = 0.
/// Optional finite value/weight sets restrict M and W (used for exhaustive checks
/// on bounded windows); compose is still plain addition.
class ShortestPathMetric final : public MetricSpace {
public:
    ShortestPathMetric() = default;
    ShortestPathMetric(std::optional<std::vector<std::int64_t>> values,
                       std::optional<std::vector<std::int64_t>> weights);

    std::string name() const override;
    MetricValue compose(const MetricValue& m, const Weight& w) const override;
    bool precedes(const MetricValue& a, const MetricValue& b) const override { return a.value > b.value; }
    MetricValue root_value() const override { return MetricValue{0}; }
    bool contains_value(const MetricValue& m) const override;
    bool contains_weight(const Weight& w) const override;
    std::optional<std::vector<MetricValue>> enumerate_values() const override;
    std::optional<std::vector<Weight>> enumerate_weights() const override;
    bool has_sampler() const override { return true; }
    MetricValue sample_value(Rng& rng) const override;
    Weight sample_weight(Rng& rng) const override;

    static constexpr std::int64_t kSampleCeiling = 256;

private:
    std::optional<std::vector<std::int64_t>> values_;
    std::optional<std::vector<std::int64_t>> weights_;
};

/// Flow (bottleneck): met = min(m, w), ≺ is numeric "<", M = {0..mr}.
/// W = {0..weight_cap}; weight_cap defaults to mr. Larger caps keep met closed
/// over M since min never exceeds m.
class FlowMetric final : public MetricSpace {
public:
    explicit FlowMetric(std::int64_t mr, std::optional<std::int64_t> weight_cap = std::nullopt);

    std::string name() const override;
    MetricValue compose(const MetricValue& m, const Weight& w) const override;
    bool precedes(const MetricValue& a, const MetricValue& b) const override { return a.value < b.value; }
    MetricValue root_value() const override { return MetricValue{mr_}; }
    bool contains_value(const MetricValue& m) const override;
    bool contains_weight(const Weight& w) const override;
    std::optional<std::vector<MetricValue>> enumerate_values() const override;
    std::optional<std::vector<Weight>> enumerate_weights() const override;

    std::int64_t max_value() const { return mr_; }
    std::int64_t weight_cap() const { return weight_cap_; }

private:
    std::int64_t mr_;
    std::int64_t weight_cap_;
};

/// Reliability: met = m · w on [0, 1], ≺ is numeric "<", mr = 1. Arithmetic is
/// exact. With a grid, M and W are both restricted to it (enumerable); compose
/// still multiplies, so products may leave the grid.
class ReliabilityMetric final : public MetricSpace {
public:
    ReliabilityMetric() = default;
    explicit ReliabilityMetric(std::vector<Rational> grid);

    std::string name() const override { return "reliability"; }
    MetricValue compose(const MetricValue& m, const Weight& w) const override { return MetricValue{checked_mul(m.value, w.value)}; }
    bool precedes(const MetricValue& a, const MetricValue& b) const override { return a.value < b.value; }
    MetricValue root_value() const override { return MetricValue{1}; }
    bool contains_value(const MetricValue& m) const override;
    bool contains_weight(const Weight& w) const override;
    std::optional<std::vector<MetricValue>> enumerate_values() const override;
    std::optional<std::vector<Weight>> enumerate_weights() const override;
    bool has_sampler() const override { return true; }
    MetricValue sample_value(Rng& rng) const override;
    Weight sample_weight(Rng& rng) const override;

    /// Sampled values are k / kSampleDenominator.
    static constexpr std::int64_t kSampleDenominator = 200;

private:
    std::optional<std::vector<Rational>> grid_;
};

/// A finite metric given as explicit tables. Values are listed in ≺-ascending
/// order (the last one is mr); compose is a lookup table indexed
/// [value index][weight index]. Values are stored as their list index.
class TableMetric final : public MetricSpace {
public:
    /// Throws DomainError when the table is ragged, references unknown values,
    /// repeats a label, or `root_label` is not the last listed value.
    TableMetric(std::vector<std::string> value_labels, std::vector<std::string> weight_labels,
                std::vector<std::vector<std::string>> table, std::string root_label);

    std::string name() const override { return "table"; }
    MetricValue compose(const MetricValue& m, const Weight& w) const override;
    bool precedes(const MetricValue& a, const MetricValue& b) const override { return a.value < b.value; }
    MetricValue root_value() const override;
    bool contains_value(const MetricValue& m) const override;
    bool contains_weight(const Weight& w) const override;
    std::optional<std::vector<MetricValue>> enumerate_values() const override;
    std::optional<std::vector<Weight>> enumerate_weights() const override;
    std::string format_value(const MetricValue& m) const override;
    std::string format_weight(const Weight& w) const override;
    std::optional<MetricValue> parse_value(std::string_view text) const override;
    std::optional<Weight> parse_weight(std::string_view text) const override;

    const std::vector<std::string>& value_labels() const { return value_labels_; }
    const std::vector<std::string>& weight_labels() const { return weight_labels_; }
    const std::string& table_entry(std::size_t value_index, std::size_t weight_index) const;

private:
    std::vector<std::string> value_labels_;
    std::vector<std::string> weight_labels_;
    std::vector<std::vector<std::size_t>> table_;
};

/// Builds a metric from its scenario-file name: "sp", "flow:{mr}",
/// "flow:{mr}:{weight_cap}", "reliability". Throws DomainError on anything else.
MetricPtr make_builtin_metric(std::string_view spec);

}  // namespace ssmax
