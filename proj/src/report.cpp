#include "ssmax/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace ssmax {

using nlohmann::json;

std::vector<ClosureViolation> audit_closure(const Trace& trace, std::size_t levels) {
    std::vector<ClosureViolation> out;
    for (auto kind : {PredicateKind::IM, PredicateKind::LC})
        for (std::size_t i = 0; i < levels; ++i) {
            const auto r = check_closure(trace, kind, i);
            if (!r.closed) out.push_back({kind, i, *r.first_violation});
        }
    return out;
}

RunReport make_run_report(const Scenario& s, const Engine& engine, const RunResult& result, std::size_t max_steps) {
    const auto& ev = engine.evaluator();
    const auto& ms = *s.metric;
    const auto& t = *s.topology;
    RunReport r;
    r.scenario = s.name;
    r.seed = engine.options().seed;
    r.metric = ms.name();
    r.daemon = std::string(to_string(engine.options().daemon));
    r.fairness_bound = engine.fairness_bound();
    r.strategy = std::string(to_string(engine.options().strategy));
    r.processes = t.size();
    r.path_bound = t.path_bound();
    for (auto b : ev.area().byzantine) r.byzantine.push_back(s.label(b));
    for (auto v : ev.area().members) r.containment_area.push_back(s.label(v));
    r.contained = result.verdict.contained();
    r.mode = std::string(to_string(result.verdict.mode));
    r.first_contained_step = result.verdict.first_contained_step;
    r.horizon = result.verdict.horizon;
    r.steps_executed = result.steps_executed;
    r.max_steps = max_steps;
    r.quiescent = result.quiescent;
    const auto& trace = engine.trace();
    r.legitimate_final = trace.annotation(trace.size() - 1).legitimate();

    const auto& ladder = ev.ladder();
    const auto progress = ladder_progress(trace, ladder);
    for (std::size_t i = 0; i < ladder.levels.size(); ++i) {
        LadderRow row;
        row.level = ms.format_value(ladder.levels[i]);
        for (auto v : ladder.members[i]) row.members.push_back(s.label(v));
        row.lc = progress[i].lc;
        row.saturated = progress[i].saturated;
        row.decayed = progress[i].decayed;
        r.ladder.push_back(std::move(row));
    }
    r.closure_violations = audit_closure(trace, ladder.levels.size()).size();
    r.max_fairness_wait = max_fairness_wait(trace, t.size());
    for (auto v : t.processes()) {
        const auto& st = engine.configuration()[v];
        FinalState f;
        f.node = s.label(v);
        if (st.parent) f.prnt = s.label(*st.parent);
        f.level = ms.format_value(st.level);
        f.dist = st.dist;
        r.final_states.push_back(std::move(f));
    }
    return r;
}

namespace {

json optional_index(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

std::optional<std::size_t> read_index(const json& v) {
    if (v.is_null()) return std::nullopt;
    return v.get<std::size_t>();
}

std::string show(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "-"; }

std::string join(const std::vector<std::string>& items) {
    std::string out = "{";
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
    return out + "}";
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

json to_json(const RunReport& r) {
    json ladder = json::array();
    for (const auto& row : r.ladder)
        ladder.push_back(json{{"level", row.level},
                              {"members", row.members},
                              {"lc", optional_index(row.lc)},
                              {"saturated", optional_index(row.saturated)},
                              {"decayed", optional_index(row.decayed)}});
    json finals = json::array();
    for (const auto& f : r.final_states)
        finals.push_back(
            json{{"node", f.node}, {"prnt", f.prnt ? json(*f.prnt) : json(nullptr)}, {"level", f.level}, {"dist", f.dist}});
    json doc{{"scenario", r.scenario},
             {"seed", r.seed},
             {"metric", r.metric},
             {"daemon", r.daemon},
             {"fairness_bound", r.fairness_bound},
             {"strategy", r.strategy},
             {"processes", r.processes},
             {"D", r.path_bound},
             {"byzantine", r.byzantine},
             {"containment_area", r.containment_area},
             {"verdict",
              json{{"contained", r.contained},
                   {"mode", r.mode},
                   {"first_contained_step", optional_index(r.first_contained_step)},
                   {"horizon", r.horizon}}},
             {"steps_executed", r.steps_executed},
             {"max_steps", r.max_steps},
             {"quiescent", r.quiescent},
             {"legitimate_final", r.legitimate_final},
             {"ladder", ladder},
             {"closure_violations", r.closure_violations},
             {"max_fairness_wait", r.max_fairness_wait},
             {"final_states", finals}};
    if (r.wall_time_ms) doc["wall_time_ms"] = *r.wall_time_ms;
    return doc;
}

RunReport run_report_from_json(const json& doc) {
    RunReport r;
    r.scenario = doc.at("scenario").get<std::string>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.metric = doc.at("metric").get<std::string>();
    r.daemon = doc.at("daemon").get<std::string>();
    r.fairness_bound = doc.at("fairness_bound").get<std::size_t>();
    r.strategy = doc.at("strategy").get<std::string>();
    r.processes = doc.at("processes").get<std::size_t>();
    r.path_bound = doc.at("D").get<std::size_t>();
    r.byzantine = doc.at("byzantine").get<std::vector<std::string>>();
    r.containment_area = doc.at("containment_area").get<std::vector<std::string>>();
    const auto& v = doc.at("verdict");
    r.contained = v.at("contained").get<bool>();
    r.mode = v.at("mode").get<std::string>();
    r.first_contained_step = read_index(v.at("first_contained_step"));
    r.horizon = v.at("horizon").get<std::size_t>();
    r.steps_executed = doc.at("steps_executed").get<std::size_t>();
    r.max_steps = doc.at("max_steps").get<std::size_t>();
    r.quiescent = doc.at("quiescent").get<bool>();
    r.legitimate_final = doc.at("legitimate_final").get<bool>();
    for (const auto& row : doc.at("ladder"))
        r.ladder.push_back(LadderRow{row.at("level").get<std::string>(),
                                     row.at("members").get<std::vector<std::string>>(), read_index(row.at("lc")),
                                     read_index(row.at("saturated")), read_index(row.at("decayed"))});
    r.closure_violations = doc.at("closure_violations").get<std::size_t>();
    r.max_fairness_wait = doc.at("max_fairness_wait").get<std::size_t>();
    for (const auto& f : doc.at("final_states")) {
        FinalState s;
        s.node = f.at("node").get<std::string>();
        if (!f.at("prnt").is_null()) s.prnt = f.at("prnt").get<std::string>();
        s.level = f.at("level").get<std::string>();
        s.dist = f.at("dist").get<std::size_t>();
        r.final_states.push_back(std::move(s));
    }
    if (doc.contains("wall_time_ms")) r.wall_time_ms = doc.at("wall_time_ms").get<double>();
    return r;
}

std::string to_text(const RunReport& r) {
    std::ostringstream out;
    out << "scenario " << (r.scenario.empty() ? "(unnamed)" : r.scenario) << "  seed " << r.seed << '\n';
    out << "metric " << r.metric << "  n=" << r.processes << "  D=" << r.path_bound << '\n';
    out << "daemon " << r.daemon << " (F=" << r.fairness_bound << ")  strategy " << r.strategy << '\n';
    out << "byzantine " << join(r.byzantine) << "  S_B " << join(r.containment_area) << '\n';
    out << "verdict " << (r.contained ? "contained" : "not contained") << " [" << r.mode << "]";
    if (r.first_contained_step) out << " from step " << *r.first_contained_step;
    out << "  K=" << r.horizon << '\n';
    out << "steps " << r.steps_executed << " of " << r.max_steps << (r.quiescent ? " (quiescent)" : "")
        << "  legitimate at end: " << (r.legitimate_final ? "yes" : "no") << '\n';
    out << "closure violations " << r.closure_violations << "  max fairness wait " << r.max_fairness_wait << '\n';
    out << "ladder\n";
    out << "  " << std::left << std::setw(4) << "i" << std::setw(12) << "level" << std::setw(8) << "LC" << std::setw(8)
        << "L5" << std::setw(8) << "L6" << "P\n";
    for (std::size_t i = 0; i < r.ladder.size(); ++i) {
        const auto& row = r.ladder[i];
        out << "  " << std::setw(4) << i << std::setw(12) << row.level << std::setw(8) << show(row.lc) << std::setw(8)
            << show(row.saturated) << std::setw(8) << show(row.decayed) << join(row.members) << '\n';
    }
    out << "final states\n";
    for (const auto& f : r.final_states)
        out << "  " << std::setw(6) << f.node << " prnt=" << std::setw(6) << f.prnt.value_or("_") << " level="
            << std::setw(10) << f.level << " dist=" << f.dist << '\n';
    if (r.wall_time_ms) out << "wall time " << std::fixed << std::setprecision(1) << *r.wall_time_ms << " ms\n";
    return out.str();
}

void write_dot(std::ostream& out, const Scenario& s, const Configuration& cfg, const ContainmentArea& area) {
    const auto& t = *s.topology;
    const auto& ms = *s.metric;
    const auto byzantine = [&](ProcessId v) {
        return std::find(area.byzantine.begin(), area.byzantine.end(), v) != area.byzantine.end();
    };
    out << "graph ssmax {\n";
    out << "  node [shape=circle, style=filled, fillcolor=white];\n";
    for (auto v : t.processes()) {
        const auto& st = cfg[v];
        std::string role = "correct";
        std::string color = "white";
        if (v == t.root()) {
            role = "root";
            color = "lightblue";
        } else if (byzantine(v)) {
            role = "byzantine";
            color = "tomato";
        } else if (area.contains(v)) {
            role = "containment";
            color = "khaki";
        }
        out << "  n" << v.index << " [label=" << quoted(s.label(v) + "\n" + ms.format_value(st.level) + " / " +
                                                        std::to_string(st.dist))
            << ", fillcolor=" << color << ", role=" << role << "];\n";
    }
    for (const auto& e : t.edges()) {
        const auto& sa = cfg[e.a];
        const auto& sb = cfg[e.b];
        out << "  n" << e.a.index << " -- n" << e.b.index << " [label=" << quoted(ms.format_weight(e.weight));
        if (sa.parent == e.b) out << ", penwidth=2.5, dir=forward";
        else if (sb.parent == e.a) out << ", penwidth=2.5, dir=back";
        else out << ", color=gray";
        out << "];\n";
    }
    out << "}\n";
}

}  // namespace ssmax
