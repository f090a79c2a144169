#pragma once

#include "ssmax/configuration.hpp"
#include "ssmax/metric.hpp"
#include "ssmax/topology.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ssmax {

/// μ(·, x) for one candidate root x, indexed by process.
using MuVector = std::vector<MetricValue>;

/// Maximum metric of every process when `candidate_root` plays the root.
///
/// Best-first label setting keyed by ≺ (ties broken by ascending id). Exact for
/// bounded and monotonic metrics: extending a path never ≺-improves its label,
/// so the first label a process is settled with is final.
MuVector compute_mu(const Topology& t, const MetricSpace& ms, ProcessId candidate_root);

/// Processes above which the simple-path enumeration refuses to run.
inline constexpr std::size_t kBruteForceLimit = 12;

/// Exhaustive enumeration of simple rooted paths. Independent oracle for
/// compute_mu; throws CapabilityError for n > kBruteForceLimit.
MuVector compute_mu_bruteforce(const Topology& t, const MetricSpace& ms, ProcessId candidate_root);

/// Sorted, duplicate-free Byzantine set. Throws DomainError for unknown ids or
/// when the root is listed.
std::vector<ProcessId> normalize_byzantine(const Topology& t, std::span<const ProcessId> byz);

/// μ(v, x) for every v and every x ∈ B ∪ {r}.
class MuTable {
public:
    MuTable(const Topology& t, const MetricSpace& ms, std::span<const ProcessId> byz);

    const std::vector<ProcessId>& byzantine() const { return byzantine_; }
    bool is_byzantine(ProcessId v) const { return byzantine_mask_[v.index]; }

    /// μ(·, x); throws DomainError unless x ∈ B ∪ {r}.
    const MuVector& from(ProcessId candidate_root) const;
    const MetricValue& operator()(ProcessId v, ProcessId candidate_root) const { return from(candidate_root)[v.index]; }

    /// max_≺ over x ∈ B ∪ {r} of μ(v, x).
    const MetricValue& best(ProcessId v) const { return best_[v.index]; }

private:
    std::vector<ProcessId> byzantine_;
    std::vector<bool> byzantine_mask_;
    std::map<ProcessId, MuVector> tables_;
    MuVector best_;
};

struct ContainmentArea {
    std::vector<ProcessId> byzantine;
    std::vector<ProcessId> members;  ///< S_B, ascending

    bool contains(ProcessId v) const;
};

/// S_B = {v ∈ V \ B | μ(v, r) ⪯ max_≺ μ(v, b), b ∈ B} \ {r}; empty when B is.
ContainmentArea containment_area(const Topology& t, const MetricSpace& ms, std::span<const ProcessId> byz);
ContainmentArea containment_area(const Topology& t, const MetricSpace& ms, const MuTable& mu);

struct SpecCheck {
    bool holds = false;
    std::string diagnostic;  ///< empty when holds; otherwise the first violated condition

    explicit operator bool() const { return holds; }
};

/// spec(v): for the root, prnt = ⊥, level = mr, dist = 0. Otherwise v ends a
/// finite parent chain v_0..v_k (k ≥ 1) rooted at some v_0 ∈ B ∪ {r} holding
/// (⊥, mr, 0), each link consistent in level and dist, no neighbor with
/// dist < D−1 offering a ≺-better value than the parent, and
/// level_v = μ(v, v_0).
SpecCheck check_spec(const Topology& t, const MetricSpace& ms, const MuTable& mu, const Configuration& cfg,
                     ProcessId v);

/// IM_m: every process, Byzantine ones included, has
/// level ⪯ max_≺{m, max_≺ μ(v, ·)}.
bool check_IM(const Topology& t, const MetricSpace& ms, const MuTable& mu, const Configuration& cfg,
              const MetricValue& m);

/// The realized values m_0 = mr ≻ m_1 ≻ … ≻ m_k and the per-level sets.
///
/// Realized values are mr together with max_≺ μ(v, ·) over all v. P_i holds the
/// correct processes outside S_B whose μ(v, r) is m_i; Byzantine processes never
/// appear in P.
struct LadderIndex {
    std::vector<MetricValue> levels;
    std::vector<std::vector<ProcessId>> members;   ///< P_{m_i}
    std::vector<std::vector<ProcessId>> inferior;  ///< I_{m_i} = {v | max_≺ μ(v, ·) ≺ m_i}

    std::size_t top() const { return levels.size() - 1; }  ///< k
    /// V_{m_i} = P_{m_0} ∪ … ∪ P_{m_i}, ascending.
    std::vector<ProcessId> covered(std::size_t i) const;
};

LadderIndex ladder_index(const Topology& t, const MetricSpace& ms, std::span<const ProcessId> byz);
LadderIndex ladder_index(const MetricSpace& ms, const MuTable& mu, const ContainmentArea& area, std::size_t n);

/// LC_{m_i}: spec holds on V_{m_i} and IM_{m_i} holds. i = top() is 𝓛𝓒.
bool check_LC(const Topology& t, const MetricSpace& ms, const MuTable& mu, const LadderIndex& ladder,
              const Configuration& cfg, std::size_t i);

/// A witness maximum metric tree for the fault-free system, derived from
/// compute_mu_bruteforce: each non-root v gets a neighbor p with
/// μ(v, r) = met(μ(p, r), w_{v,p}), attaching processes outward from the root so
/// the result is acyclic. Throws CapabilityError above kBruteForceLimit.
std::vector<std::optional<ProcessId>> max_metric_tree_oracle(const Topology& t, const MetricSpace& ms);

/// Correct processes at hop distance greater than c from every Byzantine one.
std::vector<ProcessId> c_correct_set(const Topology& t, std::span<const ProcessId> byz, std::size_t c);

/// Per-configuration predicate outcomes, one entry per ladder level.
struct Annotation {
    std::vector<bool> spec;    ///< per process
    std::vector<bool> im;      ///< IM_{m_i}
    std::vector<bool> lc;      ///< LC_{m_i}
    std::vector<bool> saturated;  ///< ∀v ∈ I_{m_i}: level_v = m_i ⇒ dist_v = D
    std::vector<bool> decayed;  ///< ∀v ∈ I_{m_i}: level_v ≺ m_i

    bool legitimate() const { return !lc.empty() && lc.back(); }
    friend bool operator==(const Annotation&, const Annotation&) = default;
};

/// Precomputed static analysis for one (topology, metric, B) triple.
class Evaluator {
public:
    Evaluator(std::shared_ptr<const Topology> t, MetricPtr ms, std::span<const ProcessId> byz);

    const Topology& topology() const { return *topology_; }
    const MetricSpace& metric() const { return *metric_; }
    const MuTable& mu() const { return mu_; }
    const ContainmentArea& area() const { return area_; }
    const LadderIndex& ladder() const { return ladder_; }
    bool is_byzantine(ProcessId v) const { return mu_.is_byzantine(v); }
    /// Correct and outside S_B.
    bool is_area_correct(ProcessId v) const { return area_correct_[v.index]; }

    Annotation annotate(const Configuration& cfg) const;

private:
    std::shared_ptr<const Topology> topology_;
    MetricPtr metric_;
    MuTable mu_;
    ContainmentArea area_;
    LadderIndex ladder_;
    std::vector<bool> area_correct_;
};

}  // namespace ssmax
