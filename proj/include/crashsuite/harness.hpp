#pragma once

#include "crashsuite/problem.hpp"

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crashsuite {

enum class Algorithm { RandomSearch, OnePlusOneES };

std::string_view to_string(Algorithm algo);
/// "random-search" or "one-plus-one-es" ("1+1-es" is accepted too).
Algorithm algorithm_from_string(std::string_view name);

struct RunConfig {
    ProblemId problem = ProblemId::StarBox;
    int dim = 1;
    ObjectiveKind objective = ObjectiveKind::PenalizedSEA;
    Algorithm algorithm = Algorithm::RandomSearch;
    int budget = 20;
    std::uint64_t seed = 0;
    /// Empty means the mock solver.
    std::optional<std::filesystem::path> solver_path;
    int cores = 1;
    double timeout_s = kDefaultTimeoutS;
    bool write_vtk = false;
    std::filesystem::path out_dir = ".";
    std::filesystem::path work_root = std::filesystem::temp_directory_path() / "crashsuite";

    bool operator==(const RunConfig&) const = default;
};

/// Defaults of the (1+1)-ES with the one-fifth success rule.
struct EsSettings {
    double initial_sigma = 2.0;
    double increase = 1.5;                       // on success
    double decrease = 0.9036020036098448;        // 1.5^(-1/4), on failure
    double min_sigma = 1e-8;
    double max_sigma = 10.0;
};

struct LogRow {
    int evaluation;  // 1-based
    double y;        // +inf for a failed evaluation
    double best_y;
    std::string status;  // "ok" or the error kind
    std::vector<double> x_normalized;
};

struct RunLog {
    RunConfig config;
    std::vector<LogRow> rows;
};

struct RunSummary {
    std::filesystem::path log_path;
    int evaluations = 0;
    int failures = 0;
    bool aborted = false;  // stopped after too many consecutive failures
    double best_y = std::numeric_limits<double>::infinity();
    std::vector<double> best_x;
    std::string last_error;
};

/// <case>_d<dim>_<algorithm>_s<seed>.csv
std::string run_log_file_name(const RunConfig& cfg);

/// Runs `budget` evaluations and writes the log incrementally to out_dir.
/// Lines starting with '#' hold the configuration as key=value pairs, then
///   evaluation,y,best_y,status,x1,...,xd
/// Failed evaluations are logged with y = inf; the run stops early once the
/// number of consecutive failures exceeds budget / 2. Wall-clock timestamps
/// go to a sidecar file (<log>.timing) so that the log itself is reproducible.
RunSummary run_optimizer(const RunConfig& cfg);

/// Runs independent configurations (typically differing in seed) on up to
/// `parallel` threads. Results keep the input order.
std::vector<RunSummary> run_optimizers(const std::vector<RunConfig>& cfgs, int parallel);

/// Reads a log written by run_optimizer, including its configuration header.
RunLog read_run_log(const std::filesystem::path& path);

}  // namespace crashsuite
