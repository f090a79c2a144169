#include "ssmax/analysis.hpp"

#include "ssmax/errors.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace ssmax {

namespace {

std::string id(ProcessId v) { return std::to_string(v.index); }

void require_process(const Topology& t, ProcessId v) {
    if (!t.contains(v)) throw DomainError("unknown process " + id(v));
}

}  // namespace

MuVector compute_mu(const Topology& t, const MetricSpace& ms, ProcessId candidate_root) {
    require_process(t, candidate_root);
    const std::size_t n = t.size();
    std::vector<std::optional<MetricValue>> label(n);
    std::vector<bool> settled(n, false);
    label[candidate_root.index] = ms.root_value();

    for (std::size_t round = 0; round < n; ++round) {
        std::optional<std::size_t> pick;
        for (std::size_t v = 0; v < n; ++v) {
            if (settled[v] || !label[v]) continue;
            if (!pick || ms.precedes(*label[*pick], *label[v])) pick = v;
        }
        if (!pick) throw DomainError("topology is disconnected; μ is undefined");
        settled[*pick] = true;
        const ProcessId x{*pick};
        for (auto y : t.neighbors(x)) {
            if (settled[y.index]) continue;
            MetricValue candidate = ms.compose(*label[x.index], t.weight(x, y));
            if (!label[y.index] || ms.precedes(*label[y.index], candidate)) label[y.index] = candidate;
        }
    }
    MuVector out;
    out.reserve(n);
    for (auto& l : label) out.push_back(*l);
    return out;
}

MuVector compute_mu_bruteforce(const Topology& t, const MetricSpace& ms, ProcessId candidate_root) {
    require_process(t, candidate_root);
    const std::size_t n = t.size();
    if (n > kBruteForceLimit)
        throw CapabilityError("simple-path enumeration is limited to " + std::to_string(kBruteForceLimit) +
                              " processes");
    std::vector<std::optional<MetricValue>> best(n);
    std::vector<bool> on_path(n, false);

    std::function<void(ProcessId, const MetricValue&)> walk = [&](ProcessId x, const MetricValue& m) {
        auto& b = best[x.index];
        if (!b || ms.precedes(*b, m)) b = m;
        on_path[x.index] = true;
        for (auto y : t.neighbors(x))
            if (!on_path[y.index]) walk(y, ms.compose(m, t.weight(x, y)));
        on_path[x.index] = false;
    };
    walk(candidate_root, ms.root_value());

    MuVector out;
    out.reserve(n);
    for (auto& b : best) {
        if (!b) throw DomainError("topology is disconnected; μ is undefined");
        out.push_back(*b);
    }
    return out;
}

std::vector<ProcessId> normalize_byzantine(const Topology& t, std::span<const ProcessId> byz) {
    std::vector<ProcessId> out(byz.begin(), byz.end());
    for (auto b : out) {
        require_process(t, b);
        if (b == t.root()) throw DomainError("the root cannot be Byzantine");
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

MuTable::MuTable(const Topology& t, const MetricSpace& ms, std::span<const ProcessId> byz)
    : byzantine_(normalize_byzantine(t, byz)), byzantine_mask_(t.size(), false) {
    for (auto b : byzantine_) byzantine_mask_[b.index] = true;
    tables_.emplace(t.root(), compute_mu(t, ms, t.root()));
    for (auto b : byzantine_) tables_.emplace(b, compute_mu(t, ms, b));
    best_ = tables_.at(t.root());
    for (auto b : byzantine_) {
        const auto& row = tables_.at(b);
        for (std::size_t v = 0; v < best_.size(); ++v) best_[v] = ms.max_of(best_[v], row[v]);
    }
}

const MuVector& MuTable::from(ProcessId candidate_root) const {
    auto it = tables_.find(candidate_root);
    if (it == tables_.end()) throw DomainError("process " + id(candidate_root) + " is neither the root nor Byzantine");
    return it->second;
}

bool ContainmentArea::contains(ProcessId v) const { return std::binary_search(members.begin(), members.end(), v); }

ContainmentArea containment_area(const Topology& t, const MetricSpace& ms, std::span<const ProcessId> byz) {
    return containment_area(t, ms, MuTable(t, ms, byz));
}

ContainmentArea containment_area(const Topology& t, const MetricSpace& ms, const MuTable& mu) {
    ContainmentArea area;
    area.byzantine = mu.byzantine();
    if (area.byzantine.empty()) return area;
    const auto& from_root = mu.from(t.root());
    for (auto v : t.processes()) {
        if (v == t.root() || mu.is_byzantine(v)) continue;
        std::optional<MetricValue> strongest;
        for (auto b : area.byzantine) {
            const auto& m = mu(v, b);
            strongest = strongest ? ms.max_of(*strongest, m) : m;
        }
        if (ms.precedes_or_equal(from_root[v.index], *strongest)) area.members.push_back(v);
    }
    return area;
}

SpecCheck check_spec(const Topology& t, const MetricSpace& ms, const MuTable& mu, const Configuration& cfg,
                     ProcessId v) {
    require_process(t, v);
    if (cfg.size() != t.size()) throw DomainError("configuration size does not match the topology");
    const auto fail = [](std::string why) { return SpecCheck{false, std::move(why)}; };
    const auto& sv = cfg[v];

    if (v == t.root()) {
        if (sv.parent) return fail("root parent");
        if (sv.level != ms.root_value()) return fail("root level");
        if (sv.dist != 0) return fail("root dist");
        return {true, {}};
    }

    // path[0] = v, path.back() = v_0
    std::vector<ProcessId> path{v};
    std::vector<bool> seen(t.size(), false);
    seen[v.index] = true;
    while (cfg[path.back()].parent) {
        const ProcessId next = *cfg[path.back()].parent;
        if (!t.contains(next) || !t.adjacent(path.back(), next)) return fail("parent not a neighbor");
        if (seen[next.index]) return fail("cyclic parent chain");
        seen[next.index] = true;
        path.push_back(next);
    }
    if (path.size() < 2) return fail("no parent");

    const ProcessId origin = path.back();
    const auto& so = cfg[origin];
    if (origin != t.root() && !mu.is_byzantine(origin)) return fail("chain origin not in B ∪ {r}");
    if (so.level != ms.root_value() || so.dist != 0) return fail("chain origin state");

    const std::size_t k = path.size() - 1;
    const std::size_t d = t.path_bound();
    for (std::size_t i = 1; i <= k; ++i) {
        const ProcessId x = path[k - i];
        const ProcessId p = path[k - i + 1];
        const auto& sx = cfg[x];
        const MetricValue offer = ms.compose(cfg[p].level, t.weight(x, p));
        if (sx.level != offer) return fail("level inconsistent at " + id(x));
        if (sx.dist != i) return fail("dist inconsistent at " + id(x));
        for (auto u : t.neighbors(x)) {
            if (cfg[u].dist + 1 >= d) continue;
            if (ms.precedes(offer, ms.compose(cfg[u].level, t.weight(x, u))))
                return fail("better neighbor at " + id(x));
        }
    }
    if (sv.level != mu(v, origin)) return fail("level below μ");
    return {true, {}};
}

bool check_IM(const Topology& t, const MetricSpace& ms, const MuTable& mu, const Configuration& cfg,
              const MetricValue& m) {
    if (cfg.size() != t.size()) throw DomainError("configuration size does not match the topology");
    for (auto v : t.processes())
        if (!ms.precedes_or_equal(cfg[v].level, ms.max_of(m, mu.best(v)))) return false;
    return true;
}

std::vector<ProcessId> LadderIndex::covered(std::size_t i) const {
    if (i >= levels.size()) throw DomainError("ladder index out of range");
    std::vector<ProcessId> out;
    for (std::size_t j = 0; j <= i; ++j) out.insert(out.end(), members[j].begin(), members[j].end());
    std::sort(out.begin(), out.end());
    return out;
}

LadderIndex ladder_index(const Topology& t, const MetricSpace& ms, std::span<const ProcessId> byz) {
    MuTable mu(t, ms, byz);
    return ladder_index(ms, mu, containment_area(t, ms, mu), t.size());
}

LadderIndex ladder_index(const MetricSpace& ms, const MuTable& mu, const ContainmentArea& area, std::size_t n) {
    LadderIndex ladder;
    auto& levels = ladder.levels;
    levels.push_back(ms.root_value());
    for (std::size_t v = 0; v < n; ++v) {
        const auto& m = mu.best(ProcessId{v});
        if (std::find(levels.begin(), levels.end(), m) == levels.end()) levels.push_back(m);
    }
    std::sort(levels.begin(), levels.end(), [&](const auto& a, const auto& b) { return ms.precedes(b, a); });

    ladder.members.resize(levels.size());
    ladder.inferior.resize(levels.size());
    for (std::size_t v = 0; v < n; ++v) {
        const ProcessId p{v};
        const auto& best = mu.best(p);
        for (std::size_t i = 0; i < levels.size(); ++i) {
            if (ms.precedes(best, levels[i])) ladder.inferior[i].push_back(p);
            if (!mu.is_byzantine(p) && !area.contains(p) && best == levels[i]) ladder.members[i].push_back(p);
        }
    }
    return ladder;
}

bool check_LC(const Topology& t, const MetricSpace& ms, const MuTable& mu, const LadderIndex& ladder,
              const Configuration& cfg, std::size_t i) {
    if (i >= ladder.levels.size()) throw DomainError("ladder index out of range");
    for (std::size_t j = 0; j <= i; ++j)
        for (auto v : ladder.members[j])
            if (!check_spec(t, ms, mu, cfg, v)) return false;
    return check_IM(t, ms, mu, cfg, ladder.levels[i]);
}

std::vector<std::optional<ProcessId>> max_metric_tree_oracle(const Topology& t, const MetricSpace& ms) {
    const auto mu = compute_mu_bruteforce(t, ms, t.root());
    const std::size_t n = t.size();
    std::vector<std::optional<ProcessId>> parent(n);
    std::vector<bool> attached(n, false);
    attached[t.root().index] = true;
    std::size_t remaining = n - 1;
    while (remaining > 0) {
        bool progress = false;
        for (std::size_t v = 0; v < n; ++v) {
            if (attached[v]) continue;
            const ProcessId pv{v};
            for (auto p : t.neighbors(pv)) {
                if (!attached[p.index] || ms.compose(mu[p.index], t.weight(pv, p)) != mu[v]) continue;
                parent[v] = p;
                attached[v] = true;
                --remaining;
                progress = true;
                break;
            }
        }
        if (!progress) throw InternalError("no maximum metric tree; is the metric maximizable?");
    }
    return parent;
}

std::vector<ProcessId> c_correct_set(const Topology& t, std::span<const ProcessId> byz, std::size_t c) {
    const auto faulty = normalize_byzantine(t, byz);
    const std::size_t n = t.size();
    constexpr std::size_t unreached = static_cast<std::size_t>(-1);
    std::vector<std::size_t> hops(n, unreached);
    std::deque<ProcessId> queue;
    for (auto b : faulty) {
        hops[b.index] = 0;
        queue.push_back(b);
    }
    while (!queue.empty()) {
        const ProcessId x = queue.front();
        queue.pop_front();
        for (auto y : t.neighbors(x)) {
            if (hops[y.index] != unreached) continue;
            hops[y.index] = hops[x.index] + 1;
            queue.push_back(y);
        }
    }
    std::vector<ProcessId> out;
    for (std::size_t v = 0; v < n; ++v)
        if (hops[v] == unreached || hops[v] > c) out.push_back(ProcessId{v});
    return out;
}

Evaluator::Evaluator(std::shared_ptr<const Topology> t, MetricPtr ms, std::span<const ProcessId> byz)
    : topology_(std::move(t)),
      metric_(std::move(ms)),
      mu_(*topology_, *metric_, byz),
      area_(containment_area(*topology_, *metric_, mu_)),
      ladder_(ladder_index(*metric_, mu_, area_, topology_->size())),
      area_correct_(topology_->size(), false) {
    for (auto v : topology_->processes()) area_correct_[v.index] = !mu_.is_byzantine(v) && !area_.contains(v);
}

Annotation Evaluator::annotate(const Configuration& cfg) const {
    const auto& t = *topology_;
    const auto& ms = *metric_;
    const std::size_t n = t.size();
    const std::size_t levels = ladder_.levels.size();
    Annotation a;
    a.spec.resize(n);
    for (auto v : t.processes()) a.spec[v.index] = mu_.is_byzantine(v) ? false : check_spec(t, ms, mu_, cfg, v).holds;

    a.im.resize(levels);
    a.lc.resize(levels);
    a.saturated.resize(levels);
    a.decayed.resize(levels);
    bool prefix_spec = true;
    for (std::size_t i = 0; i < levels; ++i) {
        const auto& m = ladder_.levels[i];
        bool im = true;
        for (std::size_t v = 0; v < n && im; ++v)
            im = ms.precedes_or_equal(cfg[ProcessId{v}].level, ms.max_of(m, mu_.best(ProcessId{v})));
        for (auto v : ladder_.members[i]) prefix_spec = prefix_spec && a.spec[v.index];
        bool l5 = true;
        bool l6 = true;
        for (auto v : ladder_.inferior[i]) {
            const auto& s = cfg[v];
            if (s.level == m && s.dist != t.path_bound()) l5 = false;
            if (!ms.precedes(s.level, m)) l6 = false;
        }
        a.im[i] = im;
        a.lc[i] = prefix_spec && im;
        a.saturated[i] = l5;
        a.decayed[i] = l6;
    }
    return a;
}

}  // namespace ssmax
