#include "ssmax/topology.hpp"

#include "ssmax/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace ssmax {

namespace {

std::string id(ProcessId v) { return std::to_string(v.index); }

}  // namespace

Topology::Topology(std::size_t process_count, ProcessId root, std::vector<Edge> edges,
                   std::optional<std::vector<std::vector<ProcessId>>> neighbor_order,
                   std::optional<std::size_t> path_bound)
    : process_count_(process_count),
      root_(root),
      edges_(std::move(edges)),
      weights_(process_count * process_count),
      path_bound_(path_bound.value_or(std::max<std::size_t>(process_count, 2))) {
    if (process_count_ == 0) throw DomainError("a topology needs at least one process");
    if (!contains(root_)) throw DomainError("root " + id(root_) + " is not a process");

    std::vector<std::set<ProcessId>> adjacency(process_count_);
    for (const auto& e : edges_) {
        if (!contains(e.a) || !contains(e.b))
            throw DomainError("edge {" + id(e.a) + "," + id(e.b) + "} references an unknown process");
        weights_[std::size_t{e.a.index} * process_count_ + e.b.index] = e.weight;
        weights_[std::size_t{e.b.index} * process_count_ + e.a.index] = e.weight;
        if (e.a != e.b) {
            adjacency[e.a.index].insert(e.b);
            adjacency[e.b.index].insert(e.a);
        }
    }
    if (neighbor_order) {
        if (neighbor_order->size() != process_count_)
            throw DomainError("neighbor order must list one sequence per process");
        for (const auto& seq : *neighbor_order)
            for (auto u : seq)
                if (!contains(u)) throw DomainError("neighbor order references unknown process " + id(u));
        order_ = std::move(*neighbor_order);
    } else {
        order_.reserve(process_count_);
        for (const auto& adj : adjacency) order_.emplace_back(adj.begin(), adj.end());
    }
}

void Topology::require(ProcessId v) const {
    if (!contains(v)) throw DomainError("unknown process id " + id(v));
}

bool Topology::adjacent(ProcessId u, ProcessId v) const {
    return contains(u) && contains(v) && u != v && slot(u, v).has_value();
}

std::span<const ProcessId> Topology::neighbors(ProcessId v) const {
    require(v);
    return order_[v.index];
}

std::optional<std::size_t> Topology::neighbor_rank(ProcessId v, ProcessId u) const {
    const auto& order = order_.at(v.index);
    auto it = std::find(order.begin(), order.end(), u);
    if (it == order.end()) return std::nullopt;
    return static_cast<std::size_t>(it - order.begin());
}

const Weight& Topology::weight(ProcessId u, ProcessId v) const {
    require(u);
    require(v);
    const auto& w = slot(u, v);
    if (!w || u == v) throw DomainError("processes " + id(u) + " and " + id(v) + " are not adjacent");
    return *w;
}

std::size_t Topology::distance(ProcessId u, ProcessId v) const {
    require(u);
    require(v);
    std::vector<std::size_t> dist(process_count_, SIZE_MAX);
    std::deque<ProcessId> queue{u};
    dist[u.index] = 0;
    while (!queue.empty()) {
        ProcessId x = queue.front();
        queue.pop_front();
        if (x == v) return dist[x.index];
        for (auto y : order_[x.index]) {
            if (!adjacent(x, y) || dist[y.index] != SIZE_MAX) continue;
            dist[y.index] = dist[x.index] + 1;
            queue.push_back(y);
        }
    }
    throw DomainError("process " + id(v) + " is unreachable from " + id(u));
}

std::vector<ProcessId> Topology::processes() const {
    std::vector<ProcessId> out;
    out.reserve(process_count_);
    for (std::size_t i = 0; i < process_count_; ++i) out.emplace_back(i);
    return out;
}

std::vector<Violation> validate(const Topology& t) {
    std::vector<Violation> out;
    const std::size_t n = t.size();

    std::map<std::pair<ProcessId, ProcessId>, int> seen;
    std::vector<std::set<ProcessId>> adjacency(n);
    for (const auto& e : t.edges()) {
        if (e.a == e.b) {
            out.push_back({"self-loop", "edge {" + id(e.a) + "," + id(e.b) + "}"});
            continue;
        }
        auto key = std::minmax(e.a, e.b);
        if (seen[{key.first, key.second}]++ == 1)
            out.push_back({"parallel edge", "edge {" + id(key.first) + "," + id(key.second) + "} listed more than once"});
        adjacency[e.a.index].insert(e.b);
        adjacency[e.b.index].insert(e.a);
    }

    std::vector<bool> reached(n, false);
    std::deque<ProcessId> queue{t.root()};
    reached[t.root().index] = true;
    while (!queue.empty()) {
        ProcessId x = queue.front();
        queue.pop_front();
        for (auto y : adjacency[x.index])
            if (!reached[y.index]) {
                reached[y.index] = true;
                queue.push_back(y);
            }
    }
    std::string unreachable;
    for (std::size_t i = 0; i < n; ++i)
        if (!reached[i]) unreachable += (unreachable.empty() ? "" : ",") + std::to_string(i);
    if (!unreachable.empty())
        out.push_back({"disconnected", "processes {" + unreachable + "} unreachable from root " + id(t.root())});

    for (std::size_t i = 0; i < n; ++i) {
        ProcessId v{i};
        auto order = t.neighbors(v);
        std::set<ProcessId> listed(order.begin(), order.end());
        if (listed.size() != order.size())
            out.push_back({"order invalid", "neighbor order of " + id(v) + " repeats a process"});
        for (auto u : listed)
            if (!adjacency[i].contains(u))
                out.push_back({"order invalid", "neighbor order of " + id(v) + " lists non-neighbor " + id(u)});
        for (auto u : adjacency[i])
            if (!listed.contains(u))
                out.push_back({"order incomplete", "neighbor order of " + id(v) + " is missing " + id(u)});
    }

    const std::size_t d = t.path_bound();
    if (d < 2 || d > std::max<std::size_t>(n, 2))
        out.push_back({"path bound", "D = " + std::to_string(d) + " must satisfy 2 <= D <= max(n, 2)"});
    return out;
}

std::vector<Violation> validate(const Topology& t, const MetricSpace& ms) {
    auto out = validate(t);
    for (const auto& e : t.edges())
        if (!ms.contains_weight(e.weight))
            out.push_back({"weight not in W", "edge {" + id(e.a) + "," + id(e.b) + "} has weight " +
                                                  ms.format_weight(e.weight) + " outside W of '" + ms.name() + "'"});
    return out;
}

}  // namespace ssmax
