#pragma once

#include "crashsuite/deck.hpp"
#include "crashsuite/time_history.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <variant>

namespace crashsuite {

/// Environment variable naming the solver binary directory when --solver-path is absent.
inline constexpr const char* kSolverPathEnv = "CRASHSUITE_SOLVER_PATH";
/// Twice the slowest single-core runtime observed for the benchmark problems, rounded up.
inline constexpr double kDefaultTimeoutS = 4000.0;
inline constexpr double kMockSampleMs = 0.1;

struct MockSolver {};

/// OpenRadioss installation: the starter and engine run in sequence inside the
/// job directory, then the time-history converter turns <case>T01 into CSV.
struct ExternalSolver {
    std::filesystem::path solver_dir;
    std::string starter_binary = "starter_linux64_gf";
    std::string engine_binary = "engine_linux64_gf";
    std::string th_converter_binary = "th_to_csv_linux64_gf";
    ColumnMapping columns;
};

using SolverMode = std::variant<MockSolver, ExternalSolver>;

/// `explicit_path` when given, else $CRASHSUITE_SOLVER_PATH, else nullopt.
std::optional<std::filesystem::path> resolve_solver_path(const std::optional<std::filesystem::path>& explicit_path);

struct GeometrySummary {
    double extrusion_length_mm;  // length over which the wall cross-section is swept
    double free_length_mm;       // crushable length available to the impactor
};

struct MockInputs {
    double mass_kg;
    SimConfig cfg;
    MaterialModel material;
    GeometrySummary geometry;
};

/// Closed-form crush response. With KE0 = m v^2 / 2, R = sigma_y * m_s / (rho L)
/// and delta = min(0.9 L_free, KE0 / R): contact starts at the second sample
/// with a one-sample spike of 2.2 R, followed by a half-sine of peak 1.8 R over
/// 2 delta / v0; displacement and internal energy ramp as (1 - cos(pi tau)) / 2
/// to delta and min(KE0, R delta); kinetic energy is KE0 minus internal energy.
TimeHistory mock_surrogate(double mass_kg, const SimConfig& cfg, const MaterialModel& material,
                           const GeometrySummary& geometry);

struct SolverJob {
    std::filesystem::path work_dir;
    DeckBundle deck;
    std::string case_name;
    int cores = 1;
    double timeout_s = kDefaultTimeoutS;
    SolverMode mode;
    std::optional<MockInputs> mock;  // required in mock mode
};

enum class ExitStatus { Ok, Failed, TimedOut };

struct SolverOutput {
    std::filesystem::path time_history_csv;
    ExitStatus status;
    std::string log_excerpt;
};

std::string time_history_file_name(const std::string& case_name);  // <case>T01.csv

/// Mock: writes the surrogate CSV and returns Ok. External: runs starter,
/// engine and converter as child processes in work_dir with `cores` threads;
/// the whole job shares one timeout and the process group is killed on expiry.
/// Throws SpawnFailure when a binary cannot be started and MissingOutput when
/// a successful run leaves no time-history CSV.
SolverOutput run(const SolverJob& job);

}  // namespace crashsuite
