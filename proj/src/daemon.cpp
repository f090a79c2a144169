#include "ssmax/daemon.hpp"

#include "ssmax/errors.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <utility>

namespace ssmax {

namespace {

constexpr std::array<std::pair<DaemonKind, std::string_view>, 4> kNames{{
    {DaemonKind::Central, "central"},
    {DaemonKind::Synchronous, "synchronous"},
    {DaemonKind::RandomSubset, "random-subset"},
    {DaemonKind::AdversarialFair, "adversarial-fair"},
}};

}  // namespace

std::string_view to_string(DaemonKind kind) {
    for (const auto& [k, name] : kNames)
        if (k == kind) return name;
    return "?";
}

std::optional<DaemonKind> parse_daemon(std::string_view name) {
    for (const auto& [k, n] : kNames)
        if (n == name) return k;
    return std::nullopt;
}

Daemon::Daemon(DaemonKind kind, std::size_t fairness_bound, std::size_t process_count)
    : kind_(kind), fairness_bound_(fairness_bound), wait_(process_count, 0) {
    if (fairness_bound_ == 0) throw DomainError("fairness bound must be at least 1");
    if (kind_ == DaemonKind::Central && fairness_bound_ < process_count)
        throw DomainError("central daemon needs a fairness bound of at least n = " + std::to_string(process_count));
}

std::vector<ProcessId> Daemon::select(std::span<const ProcessId> eligible, const std::vector<bool>& byzantine,
                                      Rng& rng) {
    std::vector<ProcessId> picked;
    if (eligible.empty()) {
        account(eligible, picked);
        return picked;
    }
    const auto due = [&](ProcessId v) { return wait_[v.index] + 1 >= fairness_bound_; };
    const auto any = [&] { return eligible[uniform_below(rng, eligible.size())]; };

    switch (kind_) {
        case DaemonKind::Central: {
            const std::size_t n = wait_.size();
            const std::size_t threshold = fairness_bound_ > n ? fairness_bound_ - n : 0;
            std::optional<ProcessId> urgent;
            for (auto v : eligible)
                if (wait_[v.index] >= threshold && (!urgent || wait_[v.index] > wait_[urgent->index])) urgent = v;
            picked.push_back(urgent ? *urgent : any());
            break;
        }
        case DaemonKind::Synchronous:
            picked.assign(eligible.begin(), eligible.end());
            break;
        case DaemonKind::RandomSubset:
            for (auto v : eligible)
                if (coin_flip(rng) || due(v)) picked.push_back(v);
            if (picked.empty()) picked.push_back(any());
            break;
        case DaemonKind::AdversarialFair:
            for (auto v : eligible)
                if (byzantine[v.index] || due(v)) picked.push_back(v);
            if (picked.empty()) picked.push_back(any());
            break;
    }
    account(eligible, picked);
    return picked;
}

void Daemon::account(std::span<const ProcessId> eligible, std::span<const ProcessId> activated) {
    std::vector<std::size_t> next(wait_.size(), 0);
    for (auto v : eligible) next[v.index] = wait_[v.index] + 1;
    for (auto v : activated) next[v.index] = 0;
    wait_ = std::move(next);
}

}  // namespace ssmax
