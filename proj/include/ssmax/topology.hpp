#pragma once

#include "ssmax/metric.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ssmax {

/// Dense process index in [0, n).
struct ProcessId {
    std::uint32_t index = 0;

    constexpr ProcessId() = default;
    constexpr explicit ProcessId(std::uint32_t i) : index(i) {}
    constexpr explicit ProcessId(std::size_t i) : index(static_cast<std::uint32_t>(i)) {}
    constexpr explicit ProcessId(int i) : index(static_cast<std::uint32_t>(i)) {}

    friend constexpr auto operator<=>(const ProcessId&, const ProcessId&) = default;
};

struct Edge {
    ProcessId a;
    ProcessId b;
    Weight weight;
};

/// A problem found by `validate`; `kind` is a stable tag, `detail` names the
/// offending element.
struct Violation {
    std::string kind;
    std::string detail;
};

/// The system S = (P, L): an undirected edge-weighted graph with a root, a
/// per-process neighbor order and the simple-path bound D.
///
/// Construction only rejects ids that are out of range; structural invariants
/// (connectivity, order completeness, ...) are reported by `validate` so that
/// scenario diagnostics can list every problem at once. Immutable once built.
class Topology {
public:
    /// `neighbor_order` defaults to ascending ids; `path_bound` (D) defaults to
    /// max(n, 2).
    Topology(std::size_t process_count, ProcessId root, std::vector<Edge> edges,
             std::optional<std::vector<std::vector<ProcessId>>> neighbor_order = std::nullopt,
             std::optional<std::size_t> path_bound = std::nullopt);

    std::size_t size() const { return process_count_; }
    ProcessId root() const { return root_; }
    std::size_t path_bound() const { return path_bound_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool contains(ProcessId v) const { return v.index < process_count_; }
    bool adjacent(ProcessId u, ProcessId v) const;

    /// N_v in its configured order. Throws DomainError for unknown ids.
    std::span<const ProcessId> neighbors(ProcessId v) const;

    /// Position of `u` in v's neighbor order, if `u` is listed there.
    std::optional<std::size_t> neighbor_rank(ProcessId v, ProcessId u) const;

    /// w_{u,v}; throws DomainError unless u and v are adjacent.
    const Weight& weight(ProcessId u, ProcessId v) const;

    /// Hop-count shortest-path length; throws DomainError for unknown ids or
    /// when v is unreachable from u.
    std::size_t distance(ProcessId u, ProcessId v) const;

    std::vector<ProcessId> processes() const;

private:
    const std::optional<Weight>& slot(ProcessId u, ProcessId v) const {
        return weights_[std::size_t{u.index} * process_count_ + v.index];
    }
    void require(ProcessId v) const;

    std::size_t process_count_;
    ProcessId root_;
    std::vector<Edge> edges_;
    std::vector<std::vector<ProcessId>> order_;
    std::vector<std::optional<Weight>> weights_;  // dense n×n
    std::size_t path_bound_;
};

/// Structural invariants: connected, no self-loops, no parallel edges, every
/// neighbor order a permutation of the adjacency, 2 ≤ D ≤ max(n, 2).
std::vector<Violation> validate(const Topology& t);

/// Structural invariants plus every weight being a member of W.
std::vector<Violation> validate(const Topology& t, const MetricSpace& ms);

}  // namespace ssmax
