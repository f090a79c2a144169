#pragma once

#include "ssmax/metric.hpp"
#include "ssmax/topology.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ssmax {

/// The O-variables of one process. An empty parent is ⊥.
struct ProcessState {
    std::optional<ProcessId> parent;
    MetricValue level;
    std::size_t dist = 0;

    friend bool operator==(const ProcessState&, const ProcessState&) = default;
};

/// A configuration: one state per process, Byzantine ones included.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::vector<ProcessState> states) : states_(std::move(states)) {}

    std::size_t size() const { return states_.size(); }
    const ProcessState& operator[](ProcessId v) const { return states_[v.index]; }
    ProcessState& operator[](ProcessId v) { return states_[v.index]; }
    const ProcessState& at(ProcessId v) const { return states_.at(v.index); }

    auto begin() const { return states_.begin(); }
    auto end() const { return states_.end(); }

    friend bool operator==(const Configuration&, const Configuration&) = default;

private:
    std::vector<ProcessState> states_;
};

/// Canonical single-line text form, e.g. "0:_/0/0;1:0/1/1". Stable across runs.
std::string canonical_text(const Configuration& cfg);

/// FNV-1a 64 of canonical_text.
std::uint64_t digest(const Configuration& cfg);

}  // namespace ssmax
