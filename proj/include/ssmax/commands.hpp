#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string_view>

namespace ssmax {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitValidation = 2,
    kExitBudget = 3,
    kExitInvariant = 4,
};

struct RunFlags {
    std::optional<std::filesystem::path> trace;
    std::optional<std::filesystem::path> dot;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> max_steps;
    bool json = false;
    bool timing = false;
};

/// Runs one scenario and prints its report. Exit codes: 0 contained, 2 invalid
/// scenario, 3 no containment within max_steps, 4 closure or fairness broken.
int cmd_run(const std::filesystem::path& scenario, const RunFlags& flags, std::ostream& out, std::ostream& err);

/// Static analysis only: μ tables, S_B, the ladder and c-correct sets.
int cmd_analyze(const std::filesystem::path& scenario, bool json, std::ostream& out, std::ostream& err);

/// Runs one impossibility construction and checks the disturbed set.
int cmd_counterexample(std::string_view name, bool json, std::ostream& out, std::ostream& err,
                       const std::optional<std::filesystem::path>& emit_scenario = std::nullopt);

/// Boundedness, monotonicity, order laws, utility and fixed points of a metric
/// given by name or as an inline JSON table.
int cmd_check_metric(std::string_view spec, std::size_t budget, bool json, std::ostream& out, std::ostream& err);

/// Every *.json scenario in `directory` × `repetitions`, with seeds derived
/// from `seed_base`.
int cmd_batch(const std::filesystem::path& directory, std::size_t repetitions, std::uint64_t seed_base, bool json,
              std::ostream& out, std::ostream& err);

}  // namespace ssmax
