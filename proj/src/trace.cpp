#include "ssmax/trace.hpp"

#include "ssmax/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>

namespace ssmax {

using nlohmann::json;

std::string_view to_string(ContainmentMode mode) { return mode == ContainmentMode::ExactLC ? "exact-LC" : "horizon"; }

ContainmentVerdict detect_containment(const Trace& trace, const Evaluator& ev, std::size_t horizon) {
    ContainmentVerdict verdict;
    verdict.horizon = horizon;
    const std::size_t count = trace.size();
    for (std::size_t i = 0; i < count; ++i) {
        if (trace.annotation(i).legitimate()) {
            verdict.first_contained_step = i;
            verdict.mode = ContainmentMode::ExactLC;
            return verdict;
        }
    }
    verdict.mode = ContainmentMode::Horizon;

    const auto& t = ev.topology();
    std::vector<bool> settled(count);  // every S_B-correct process satisfies spec
    for (std::size_t i = 0; i < count; ++i) {
        const auto& spec = trace.annotation(i).spec;
        bool ok = true;
        for (auto v : t.processes())
            if (ev.is_area_correct(v) && !spec[v.index]) ok = false;
        settled[i] = ok;
    }
    std::vector<bool> moved(count, false);  // step into configuration i changed an S_B-correct process
    for (std::size_t i = 1; i < count; ++i)
        for (const auto& c : trace.steps[i - 1].changes)
            if (ev.is_area_correct(c.process)) moved[i] = true;

    for (std::size_t j = 0; j + 1 < count; ++j) {
        const std::size_t end = std::min(count - 1, j + horizon);
        if (end == j) break;
        bool holds = settled[j];
        for (std::size_t i = j + 1; i <= end && holds; ++i) holds = settled[i] && !moved[i];
        if (holds) {
            verdict.first_contained_step = j;
            return verdict;
        }
    }
    return verdict;
}

std::vector<LevelProgress> ladder_progress(const Trace& trace, const LadderIndex& ladder) {
    std::vector<LevelProgress> out(ladder.levels.size());
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& a = trace.annotation(i);
        for (std::size_t l = 0; l < out.size(); ++l) {
            if (!out[l].lc && a.lc.at(l)) out[l].lc = i;
            if (!out[l].saturated && a.saturated.at(l)) out[l].saturated = i;
            if (!out[l].decayed && a.decayed.at(l)) out[l].decayed = i;
        }
    }
    return out;
}

ClosureResult check_closure(const std::vector<bool>& series) {
    bool seen = false;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series[i]) seen = true;
        else if (seen) return {false, i};
    }
    return {};
}

ClosureResult check_closure(const Trace& trace, PredicateKind kind, std::size_t level) {
    std::vector<bool> series;
    series.reserve(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& a = trace.annotation(i);
        series.push_back(kind == PredicateKind::IM ? a.im.at(level) : a.lc.at(level));
    }
    return check_closure(series);
}

std::size_t max_fairness_wait(const Trace& trace, std::size_t process_count) {
    std::vector<std::size_t> wait(process_count, 0);
    std::size_t worst = 0;
    for (const auto& rec : trace.steps) {
        std::vector<std::size_t> next(process_count, 0);
        for (auto v : rec.eligible) next[v.index] = wait[v.index] + 1;
        for (auto v : rec.activated) next[v.index] = 0;
        wait = std::move(next);
        worst = std::max(worst, *std::max_element(wait.begin(), wait.end()));
    }
    return worst;
}

namespace {

json state_json(const ProcessState& s, const MetricSpace& ms) {
    return json{{"prnt", s.parent ? json(s.parent->index) : json(nullptr)},
                {"level", ms.format_value(s.level)},
                {"dist", s.dist}};
}

json snapshot_json(const Configuration& cfg, const MetricSpace& ms) {
    json out = json::array();
    for (const auto& s : cfg) out.push_back(state_json(s, ms));
    return out;
}

json bits(const std::vector<bool>& v) {
    json out = json::array();
    for (bool b : v) out.push_back(b);
    return out;
}

json annotation_json(const Annotation& a) {
    return json{{"IM", bits(a.im)}, {"LC", bits(a.lc)}, {"saturated", bits(a.saturated)}, {"decayed", bits(a.decayed)}};
}

std::string hex(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

}  // namespace

void write_trace_jsonl(std::ostream& out, const Trace& trace, const MetricSpace& ms) {
    json head{{"step", 0},
              {"digest", hex(digest(trace.initial))},
              {"annotations", annotation_json(trace.initial_annotation)},
              {"snapshot", snapshot_json(trace.initial, ms)}};
    out << head.dump() << '\n';
    const Annotation* previous = &trace.initial_annotation;
    for (const auto& rec : trace.steps) {
        json line{{"step", rec.index}};
        json activated = json::array();
        for (auto v : rec.activated) activated.push_back(v.index);
        line["activated"] = activated;
        json fired = json::array();
        for (const auto& a : rec.actions)
            fired.push_back(json{{"process", a.process.index},
                                 {"rule", a.rule ? std::string(to_string(*a.rule)) : std::string("byzantine")}});
        line["fired"] = fired;
        json changes = json::array();
        for (const auto& c : rec.changes) {
            json entry{{"process", c.process.index}};
            if (c.before.parent != c.after.parent)
                entry["prnt"] = {c.before.parent ? json(c.before.parent->index) : json(nullptr),
                                 c.after.parent ? json(c.after.parent->index) : json(nullptr)};
            if (c.before.level != c.after.level)
                entry["level"] = {ms.format_value(c.before.level), ms.format_value(c.after.level)};
            if (c.before.dist != c.after.dist) entry["dist"] = {c.before.dist, c.after.dist};
            changes.push_back(entry);
        }
        line["changes"] = changes;
        line["enabled"] = rec.enabled_correct;
        line["digest"] = hex(rec.digest);
        if (rec.annotation != *previous) {
            line["annotations"] = annotation_json(rec.annotation);
            line["snapshot"] = snapshot_json(rec.after, ms);
        }
        previous = &rec.annotation;
        out << line.dump() << '\n';
    }
}

}  // namespace ssmax
