#include "ssmax/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Self-stabilizing maximum metric trees under Byzantine faults"};
    app.require_subcommand(1);

    std::string scenario;
    ssmax::RunFlags run_flags;
    std::string trace_path, dot_path;
    std::uint64_t seed = 0;
    std::size_t max_steps = 0;
    auto* run = app.add_subcommand("run", "simulate a scenario and report containment");
    run->add_option("scenario", scenario, "scenario file")->required();
    auto* trace_opt = run->add_option("--trace", trace_path, "write the step trace (JSON lines)");
    auto* dot_opt = run->add_option("--dot", dot_path, "write the final configuration as Graphviz");
    auto* seed_opt = run->add_option("--seed", seed, "override the scenario seed");
    auto* steps_opt = run->add_option("--max-steps", max_steps, "override the step budget");
    run->add_flag("--json", run_flags.json, "print the report as JSON");
    run->add_flag("--timing", run_flags.timing, "include wall time in the report");

    bool analyze_json = false;
    auto* analyze = app.add_subcommand("analyze", "mu tables, S_B and the ladder, without simulating");
    analyze->add_option("scenario", scenario, "scenario file")->required();
    analyze->add_flag("--json", analyze_json, "print as JSON");

    std::string case_name, emit_path;
    bool case_json = false;
    auto* counter = app.add_subcommand("counterexample", "run an impossibility construction");
    counter->add_option("case", case_name, "single-valued | fixed-point | non-fixed-point")->required();
    counter->add_flag("--json", case_json, "print as JSON");
    auto* emit_opt = counter->add_option("--emit-scenario", emit_path, "also write the case as a scenario file");

    std::string metric_spec;
    std::size_t budget = 10000;
    bool metric_json = false;
    auto* check = app.add_subcommand("check-metric", "boundedness, monotonicity, utility and fixed points");
    check->add_option("metric", metric_spec, "sp | flow:MR[:CAP] | reliability | inline JSON table | file.json")
        ->required();
    check->add_option("--budget", budget, "samples for infinite domains")->capture_default_str();
    check->add_flag("--json", metric_json, "print as JSON");

    std::string directory;
    std::size_t repetitions = 1;
    std::uint64_t seed_base = 1;
    bool batch_json = false;
    auto* batch = app.add_subcommand("batch", "run every scenario in a directory");
    batch->add_option("directory", directory, "directory of *.json scenarios")->required();
    batch->add_option("--repetitions", repetitions, "runs per scenario")->capture_default_str();
    batch->add_option("--seed-base", seed_base, "base for derived seeds")->capture_default_str();
    batch->add_flag("--json", batch_json, "print as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ssmax::kExitUsage;
    }

    if (*run) {
        if (*trace_opt) run_flags.trace = trace_path;
        if (*dot_opt) run_flags.dot = dot_path;
        if (*seed_opt) run_flags.seed = seed;
        if (*steps_opt) run_flags.max_steps = max_steps;
        return ssmax::cmd_run(scenario, run_flags, std::cout, std::cerr);
    }
    if (*analyze) return ssmax::cmd_analyze(scenario, analyze_json, std::cout, std::cerr);
    if (*counter) {
        std::optional<std::filesystem::path> emit;
        if (*emit_opt) emit = emit_path;
        return ssmax::cmd_counterexample(case_name, case_json, std::cout, std::cerr, emit);
    }
    if (*check) return ssmax::cmd_check_metric(metric_spec, budget, metric_json, std::cout, std::cerr);
    if (*batch) return ssmax::cmd_batch(directory, repetitions, seed_base, batch_json, std::cout, std::cerr);
    return ssmax::kExitUsage;
}
