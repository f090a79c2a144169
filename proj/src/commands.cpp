#include "ssmax/commands.hpp"

#include "ssmax/errors.hpp"
#include "ssmax/metric_check.hpp"
#include "ssmax/report.hpp"
#include "ssmax/scenarios.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ssmax {

using nlohmann::json;

namespace {

std::vector<std::string> label_list(const Scenario& s, const std::vector<ProcessId>& ids) {
    std::vector<std::string> out;
    for (auto v : ids) out.push_back(s.label(v));
    return out;
}

std::string braces(const std::vector<std::string>& items) {
    std::string out = "{";
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
    return out + "}";
}

bool write_file(const std::filesystem::path& path, const std::string& content, std::ostream& err) {
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f) {
        err << "error: cannot write " << path.string() << '\n';
        return false;
    }
    return true;
}

int exit_for(const RunReport& r) {
    if (r.closure_violations > 0 || r.max_fairness_wait >= r.fairness_bound) return kExitInvariant;
    return r.contained ? kExitOk : kExitBudget;
}

struct Execution {
    std::unique_ptr<Engine> engine;
    RunResult result;
    RunReport report;
};

Execution execute(const Scenario& s) {
    Execution x;
    x.engine = std::make_unique<Engine>(s.topology, s.metric, s.byzantine, s.engine_options(), s.initial);
    const std::size_t max_steps =
        s.max_steps.value_or(default_max_steps(x.engine->evaluator(), x.engine->fairness_bound()));
    x.result = x.engine->run(max_steps);
    x.report = make_run_report(s, *x.engine, x.result, max_steps);
    return x;
}

}  // namespace

int cmd_run(const std::filesystem::path& scenario, const RunFlags& flags, std::ostream& out, std::ostream& err) {
    try {
        Scenario s = load_scenario(scenario);
        if (flags.seed) s.seed = *flags.seed;
        if (flags.max_steps) {
            if (*flags.max_steps == 0) throw ValidationError("max_steps", "must be at least 1");
            s.max_steps = *flags.max_steps;
        }
        const auto start = std::chrono::steady_clock::now();
        auto x = execute(s);
        if (flags.timing)
            x.report.wall_time_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

        if (flags.trace) {
            std::ostringstream buf;
            write_trace_jsonl(buf, x.engine->trace(), *s.metric);
            if (!write_file(*flags.trace, buf.str(), err)) return kExitUsage;
        }
        if (flags.dot) {
            std::ostringstream buf;
            write_dot(buf, s, x.engine->configuration(), x.engine->evaluator().area());
            if (!write_file(*flags.dot, buf.str(), err)) return kExitUsage;
        }
        out << (flags.json ? to_json(x.report).dump(2) + "\n" : to_text(x.report));
        return exit_for(x.report);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const CapabilityError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::logic_error& e) {
        err << "invariant violation: " << e.what() << '\n';
        return kExitInvariant;
    }
}

int cmd_analyze(const std::filesystem::path& scenario, bool as_json, std::ostream& out, std::ostream& err) {
    try {
        const Scenario s = load_scenario(scenario);
        const auto& t = *s.topology;
        const auto& ms = *s.metric;
        const Evaluator ev(s.topology, s.metric, s.byzantine);
        const auto& mu = ev.mu();

        std::vector<ProcessId> candidates{t.root()};
        candidates.insert(candidates.end(), ev.area().byzantine.begin(), ev.area().byzantine.end());

        std::optional<bool> agrees;
        if (t.size() <= kBruteForceLimit) {
            agrees = true;
            for (auto x : candidates)
                if (compute_mu_bruteforce(t, ms, x) != mu.from(x)) agrees = false;
        }

        std::optional<std::size_t> radius;
        for (auto v : ev.area().members) {
            std::size_t nearest = t.size();
            for (auto b : ev.area().byzantine) nearest = std::min(nearest, t.distance(v, b));
            radius = std::max(radius.value_or(0), nearest);
        }
        std::size_t eccentricity = 0;
        for (auto v : t.processes())
            for (auto b : ev.area().byzantine) eccentricity = std::max(eccentricity, t.distance(v, b));

        std::vector<ProcessId> area_correct;
        for (auto v : t.processes())
            if (ev.is_area_correct(v)) area_correct.push_back(v);

        if (as_json) {
            json doc;
            doc["scenario"] = s.name;
            doc["metric"] = ms.name();
            doc["root"] = s.label(t.root());
            doc["byzantine"] = label_list(s, ev.area().byzantine);
            doc["containment_area"] = label_list(s, ev.area().members);
            doc["area_correct"] = label_list(s, area_correct);
            json tables = json::object();
            for (auto x : candidates) {
                json row = json::object();
                for (auto v : t.processes()) row[s.label(v)] = ms.format_value(mu(v, x));
                tables[s.label(x)] = row;
            }
            doc["mu"] = tables;
            json best = json::object();
            for (auto v : t.processes()) best[s.label(v)] = ms.format_value(mu.best(v));
            doc["best"] = best;
            doc["bruteforce_agrees"] = agrees ? json(*agrees) : json(nullptr);
            json ladder = json::array();
            const auto& l = ev.ladder();
            for (std::size_t i = 0; i < l.levels.size(); ++i)
                ladder.push_back(json{{"level", ms.format_value(l.levels[i])},
                                      {"members", label_list(s, l.members[i])},
                                      {"inferior", label_list(s, l.inferior[i])}});
            doc["ladder"] = ladder;
            doc["area_radius"] = radius ? json(*radius) : json(nullptr);
            json correct = json::array();
            if (!ev.area().byzantine.empty())
                for (std::size_t c = 0; c <= eccentricity; ++c)
                    correct.push_back(
                        json{{"c", c}, {"processes", label_list(s, c_correct_set(t, ev.area().byzantine, c))}});
            doc["c_correct"] = correct;
            out << doc.dump(2) << '\n';
            return kExitOk;
        }

        out << "scenario " << (s.name.empty() ? "(unnamed)" : s.name) << "  metric " << ms.name() << "  root "
            << s.label(t.root()) << '\n';
        out << "byzantine " << braces(label_list(s, ev.area().byzantine)) << '\n';
        out << "S_B " << braces(label_list(s, ev.area().members)) << '\n';
        out << "S_B-correct " << braces(label_list(s, area_correct)) << '\n';
        out << "mu";
        for (auto x : candidates) out << std::setw(10) << ("(·," + s.label(x) + ")");
        out << std::setw(10) << "best" << '\n';
        for (auto v : t.processes()) {
            out << std::setw(6) << s.label(v);
            for (auto x : candidates) out << std::setw(10) << ms.format_value(mu(v, x));
            out << std::setw(10) << ms.format_value(mu.best(v)) << '\n';
        }
        if (agrees) out << "brute-force oracle " << (*agrees ? "agrees" : "DISAGREES") << '\n';
        out << "ladder\n";
        const auto& l = ev.ladder();
        for (std::size_t i = 0; i < l.levels.size(); ++i)
            out << "  m_" << i << " = " << ms.format_value(l.levels[i]) << "  P " << braces(label_list(s, l.members[i]))
                << "  I " << braces(label_list(s, l.inferior[i])) << '\n';
        if (radius) out << "S_B lies within " << *radius << " hops of B\n";
        if (!ev.area().byzantine.empty())
            for (std::size_t c = 0; c <= eccentricity; ++c)
                out << "  " << c << "-correct " << braces(label_list(s, c_correct_set(t, ev.area().byzantine, c)))
                    << '\n';
        return kExitOk;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

int cmd_counterexample(std::string_view name, bool as_json, std::ostream& out, std::ostream& err,
                       const std::optional<std::filesystem::path>& emit_scenario) {
    const auto id = parse_case(name);
    if (!id) {
        err << "error: unknown case '" << name << "' (expected single-valued, fixed-point or non-fixed-point)\n";
        return kExitUsage;
    }
    try {
        const auto c = build_case(*id);
        const auto& s = c.scenario;
        const auto& t = *s.topology;
        if (emit_scenario && !write_file(*emit_scenario, scenario_to_json(s).dump(2) + "\n", err)) return kExitUsage;

        const Evaluator ev(s.topology, s.metric, s.byzantine);
        const auto run = run_counterexample(c);

        bool initial_ok = true;
        for (auto v : t.processes())
            if (ev.is_area_correct(v) && !check_spec(t, *s.metric, ev.mu(), *s.initial, v)) initial_ok = false;
        const auto covers = [](const std::vector<ProcessId>& big, const std::vector<ProcessId>& small) {
            return std::includes(big.begin(), big.end(), small.begin(), small.end());
        };
        const bool disturbed_ok = covers(run.disturbed, c.expected_disturbed);
        const bool inside_area = covers(ev.area().members, c.expected_disturbed);
        const bool ok = run.settled && initial_ok && disturbed_ok && inside_area;

        if (as_json) {
            json doc{{"case", std::string(to_string(*id))},
                     {"metric", s.metric->name()},
                     {"containment_area", label_list(s, ev.area().members)},
                     {"expected_disturbed", label_list(s, c.expected_disturbed)},
                     {"disturbed", label_list(s, run.disturbed)},
                     {"settled", run.settled},
                     {"steps", run.steps},
                     {"initial_legitimate_outside_area", initial_ok},
                     {"disturbed_covers_expected", disturbed_ok},
                     {"expected_within_area", inside_area},
                     {"initial", canonical_text(*s.initial)},
                     {"final", canonical_text(run.final_configuration)}};
            out << doc.dump(2) << '\n';
        } else {
            out << "case " << to_string(*id) << "  metric " << s.metric->name() << '\n';
            out << "S_B " << braces(label_list(s, ev.area().members)) << "  expected disturbed "
                << braces(label_list(s, c.expected_disturbed)) << '\n';
            out << "rho_0 legitimate outside S_B: " << (initial_ok ? "yes" : "no") << '\n';
            out << "disturbed " << braces(label_list(s, run.disturbed)) << " after " << run.steps << " steps"
                << (run.settled ? "" : " (did not settle)") << '\n';
            out << "final\n";
            for (auto v : t.processes()) {
                const auto& st = run.final_configuration[v];
                out << "  " << std::setw(3) << s.label(v) << " prnt=" << std::setw(3)
                    << (st.parent ? s.label(*st.parent) : "_") << " level=" << s.metric->format_value(st.level)
                    << " dist=" << st.dist << '\n';
            }
            out << (ok ? "OK: every process of the expected set was disturbed\n" : "FAILED\n");
        }
        return ok ? kExitOk : kExitInvariant;
    } catch (const CapabilityError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

namespace {

json verdict_json(const CheckVerdict& v, const MetricSpace& ms) {
    json doc{{"outcome", v.passed() ? "PASS" : "FAIL"},
             {"exhaustive", v.exhaustive},
             {"cases", v.cases_examined},
             {"summary", v.describe(ms)}};
    if (v.witness) {
        json values = json::array();
        for (const auto& m : v.witness->values) values.push_back(ms.format_value(m));
        doc["witness"] = {{"values", values},
                          {"weight", v.witness->weight ? json(ms.format_weight(*v.witness->weight)) : json(nullptr)}};
    } else {
        doc["witness"] = nullptr;
    }
    return doc;
}

}  // namespace

int cmd_check_metric(std::string_view spec, std::size_t budget, bool as_json, std::ostream& out, std::ostream& err) {
    MetricPtr ms;
    try {
        if (!spec.empty() && spec.front() == '{') {
            ms = parse_metric(json::parse(spec));
        } else if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
            std::ifstream in{std::string(spec)};
            if (!in) throw ValidationError("", "cannot read " + std::string(spec));
            ms = parse_metric(json::parse(in));
        } else {
            ms = make_builtin_metric(spec);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    const auto bounded = check_bounded(*ms, budget);
    const auto monotonic = check_monotonic(*ms, budget);
    const auto order = check_order_laws(*ms, budget);
    std::optional<CheckVerdict> utility;
    try {
        utility = check_utility(*ms);
    } catch (const CapabilityError&) {
    }
    std::optional<std::vector<MetricValue>> fixed;
    try {
        fixed = fixed_points(*ms);
    } catch (const CapabilityError&) {
    }
    const bool maximizable = bounded.passed() && monotonic.passed();

    if (as_json) {
        json doc{{"metric", ms->name()},
                 {"bounded", verdict_json(bounded, *ms)},
                 {"monotonic", verdict_json(monotonic, *ms)},
                 {"order", verdict_json(order, *ms)},
                 {"utility", utility ? verdict_json(*utility, *ms) : json(nullptr)},
                 {"maximizable", maximizable}};
        if (fixed) {
            json list = json::array();
            for (const auto& m : *fixed) list.push_back(ms->format_value(m));
            doc["fixed_points"] = list;
        } else {
            doc["fixed_points"] = nullptr;
        }
        out << doc.dump(2) << '\n';
        return kExitOk;
    }
    out << "metric " << ms->name() << '\n';
    out << "  bounded      " << bounded.describe(*ms) << '\n';
    out << "  monotonic    " << monotonic.describe(*ms) << '\n';
    out << "  order laws   " << order.describe(*ms) << '\n';
    out << "  utility      " << (utility ? utility->describe(*ms) : "skipped (M or W not enumerable)") << '\n';
    out << "  fixed points ";
    if (fixed) {
        std::vector<std::string> names;
        for (const auto& m : *fixed) names.push_back(ms->format_value(m));
        out << braces(names) << '\n';
    } else {
        out << "skipped (M or W not enumerable)\n";
    }
    out << "  maximizable  " << (maximizable ? "yes" : "no") << '\n';
    return kExitOk;
}

int cmd_batch(const std::filesystem::path& directory, std::size_t repetitions, std::uint64_t seed_base, bool as_json,
              std::ostream& out, std::ostream& err) {
    if (repetitions == 0) {
        err << "error: repetitions must be at least 1\n";
        return kExitUsage;
    }
    std::error_code ec;
    if (!std::filesystem::is_directory(directory, ec)) {
        err << "error: " << directory.string() << " is not a directory\n";
        return kExitValidation;
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(directory))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    struct Row {
        std::string file;
        std::size_t runs = 0;
        std::size_t contained = 0;
        std::vector<std::size_t> steps;
        std::size_t closure_violations = 0;
        std::vector<std::string> errors;
    };
    std::vector<Row> rows;
    for (std::size_t i = 0; i < files.size(); ++i) {
        Row row;
        row.file = files[i].filename().string();
        std::optional<Scenario> base;
        try {
            base = load_scenario(files[i]);
        } catch (const std::exception& e) {
            row.errors.push_back(e.what());
        }
        for (std::size_t r = 0; base && r < repetitions; ++r) {
            Scenario s = *base;
            s.seed = mix_seed(seed_base, (static_cast<std::uint64_t>(i) << 32) + r);
            ++row.runs;
            try {
                const auto x = execute(s);
                row.closure_violations += x.report.closure_violations;
                if (x.report.contained) {
                    ++row.contained;
                    row.steps.push_back(*x.report.first_contained_step);
                }
            } catch (const std::exception& e) {
                row.errors.push_back("seed " + std::to_string(s.seed) + ": " + e.what());
            }
        }
        std::sort(row.steps.begin(), row.steps.end());
        rows.push_back(std::move(row));
    }

    std::size_t runs = 0, contained = 0, violations = 0, errors = 0;
    for (const auto& r : rows) {
        runs += r.runs;
        contained += r.contained;
        violations += r.closure_violations;
        errors += r.errors.size();
    }
    const auto stats = [](const std::vector<std::size_t>& v) {
        if (v.empty()) return json(nullptr);
        return json{{"min", v.front()}, {"median", v[(v.size() - 1) / 2]}, {"max", v.back()}};
    };

    if (as_json) {
        json list = json::array();
        for (const auto& r : rows)
            list.push_back(json{{"file", r.file},
                                {"runs", r.runs},
                                {"contained", r.contained},
                                {"first_contained_step", stats(r.steps)},
                                {"closure_violations", r.closure_violations},
                                {"errors", r.errors}});
        out << json{{"seed_base", seed_base},
                    {"repetitions", repetitions},
                    {"scenarios", list},
                    {"runs", runs},
                    {"contained", contained},
                    {"closure_violations", violations},
                    {"errors", errors}}
                   .dump(2)
            << '\n';
    } else {
        out << "batch " << directory.string() << "  repetitions " << repetitions << "  seed base " << seed_base
            << '\n';
        for (const auto& r : rows) {
            out << "  " << std::left << std::setw(32) << r.file << std::right << " contained " << r.contained << "/"
                << r.runs;
            if (!r.steps.empty())
                out << "  steps min/median/max " << r.steps.front() << "/" << r.steps[(r.steps.size() - 1) / 2] << "/"
                    << r.steps.back();
            out << "  closure violations " << r.closure_violations << '\n';
            for (const auto& e : r.errors) out << "    error: " << e << '\n';
        }
        out << "total contained " << contained << "/" << runs << "  closure violations " << violations
            << "  errors " << errors << '\n';
    }
    if (violations > 0) return kExitInvariant;
    if (errors > 0) return kExitValidation;
    return contained == runs ? kExitOk : kExitBudget;
}

}  // namespace ssmax
