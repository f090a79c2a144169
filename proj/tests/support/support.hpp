#pragma once

#include "ssmax/analysis.hpp"
#include "ssmax/metric.hpp"
#include "ssmax/random.hpp"
#include "ssmax/topology.hpp"

#include <memory>
#include <string>
#include <vector>

namespace ssmax::testing {

/// met(m, w) = max(m − w, 0) on {0..3} with mr = 0 and ≺ = ">": subtraction
/// makes values better, so boundedness fails first at m = 1, w = 1.
MetricPtr monus_metric();

/// Bounded but not monotonic on {0..3} under "<", mr = 3: met(3, 1) collapses
/// to 0 while met(2, 1) = 2.
MetricPtr collapsing_metric();

/// met(m, w) = |m − w| on {0..3} under "<" with mr = 3: not monotonic.
MetricPtr abs_difference_metric();

/// A random connected graph: a random spanning tree plus extra edges with
/// probability `density`, weights drawn from `weights`, optionally shuffled
/// neighbor orders.
Topology random_connected(std::size_t n, const std::vector<Weight>& weights, double density, bool shuffle_order,
                          Rng& rng);

/// Weight pools used by the corpora, per built-in metric name.
std::vector<Weight> weight_pool(const MetricSpace& ms);

struct CorpusEntry {
    std::shared_ptr<const Topology> topology;
    MetricPtr metric;
};

/// `count` graphs with 3 ≤ n ≤ max_n, rotating through sp, flow:10, reliability.
std::vector<CorpusEntry> graph_corpus(std::size_t count, std::size_t max_n, std::uint64_t seed);

/// The three built-in metrics used by the corpora.
std::vector<MetricPtr> corpus_metrics();

/// Random Byzantine set of the given size, never containing the root.
std::vector<ProcessId> random_byzantine(const Topology& t, std::size_t size, Rng& rng);

/// Checks that cfg is a maximum metric tree for the fault-free system: levels
/// equal brute-force μ(·, r), every parent link realizes its child's level, the
/// parent pointers form a tree rooted at r, and dist is the tree depth. Returns
/// an empty string on success, otherwise what failed.
std::string tree_mismatch(const Topology& t, const MetricSpace& ms, const Configuration& cfg);

}  // namespace ssmax::testing
