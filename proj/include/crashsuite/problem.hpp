#pragma once

#include "crashsuite/deck.hpp"
#include "crashsuite/mesh.hpp"
#include "crashsuite/objectives.hpp"
#include "crashsuite/solver.hpp"
#include "crashsuite/time_history.hpp"
#include "crashsuite/types.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crashsuite {

enum class ObjectiveKind {
    SEA,
    PenalizedSEA,
    Mass,
    PenalizedMass,
    LoadUniformity,
    Intrusion,
    AbsorbedEnergy,
    PeakForce,
    MeanForce,
};

inline constexpr ObjectiveKind kAllObjectives[] = {
    ObjectiveKind::SEA,           ObjectiveKind::PenalizedSEA,   ObjectiveKind::Mass,
    ObjectiveKind::PenalizedMass, ObjectiveKind::LoadUniformity, ObjectiveKind::Intrusion,
    ObjectiveKind::AbsorbedEnergy, ObjectiveKind::PeakForce,     ObjectiveKind::MeanForce,
};

std::string_view to_string(ObjectiveKind kind);
/// Accepts the enumerator name ("PenalizedSEA") case-insensitively; throws UnknownObjective.
ObjectiveKind objective_from_string(std::string_view name);

/// The problem's own minimization objective: PenalizedSEA, PenalizedMass or LoadUniformity.
ObjectiveKind default_objective(ProblemId id);

/// Reported when the caller names no objectives: the problem's own objective
/// followed by SEA, Mass, LoadUniformity and Intrusion.
std::vector<ObjectiveKind> default_objectives(ProblemId id);

struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;
    bool operator==(const Bounds&) const = default;
};

/// Physical bounds in mm for each design variable.
Bounds problem_bounds(ProblemId id, int d);

/// 60 mm for the crash box, 50 mm for the beam, none for the tube.
std::optional<double> constraint_limit_mm(ProblemId id);

class ProblemInstance {
public:
    ProblemId id() const { return id_; }
    int dimension() const { return d_; }
    const Bounds& bounds() const { return bounds_; }
    const std::vector<ObjectiveKind>& objectives() const { return objectives_; }
    const SolverMode& solver_mode() const { return mode_; }
    bool is_mock() const { return std::holds_alternative<MockSolver>(mode_); }

private:
    friend ProblemInstance create_problem(ProblemId, int, std::vector<ObjectiveKind>, SolverMode);
    ProblemInstance(ProblemId id, int d, Bounds b, std::vector<ObjectiveKind> obj, SolverMode mode)
        : id_(id), d_(d), bounds_(std::move(b)), objectives_(std::move(obj)), mode_(std::move(mode))
    {
    }

    ProblemId id_;
    int d_;
    Bounds bounds_;
    std::vector<ObjectiveKind> objectives_;
    SolverMode mode_;
};

/// Throws DimensionOutOfRange for unsupported d and InvalidArgument for an
/// empty objective list. Duplicate objectives are dropped, order kept.
ProblemInstance create_problem(ProblemId id, int d, std::vector<ObjectiveKind> objectives,
                               SolverMode mode = MockSolver{});

/// Affine map from [-5, 5]^d to the physical box. Throws OutOfDomain for a
/// component outside the domain (or NaN) and InvalidArgument on a length mismatch.
std::vector<double> denormalize(const ProblemInstance& p, std::span<const double> x_norm);
std::vector<double> normalize(const ProblemInstance& p, std::span<const double> x_phys);

/// Everything the solver stage needs for one design.
struct Model {
    ShellMesh mesh;
    MaterialModel material;
    SimConfig config;
    GeometrySummary geometry;
    MassReport mass;
};

Model build_model(ProblemId id, int d, std::span<const double> x_phys);

struct EvaluateOptions {
    std::filesystem::path work_root = std::filesystem::temp_directory_path() / "crashsuite";
    bool keep_work_dir = false;
    int cores = 1;
    double timeout_s = kDefaultTimeoutS;
    bool write_vtk = false;
    LoadWindow window;
};

struct EvaluationResult {
    std::map<ObjectiveKind, double> raw;
    bool feasible;
    double intrusion_mm;
    double mass_kg;
    double absorbed_energy_J;
    double peak_force_kN;
    double mean_force_kN;
    std::vector<double> x_normalized;
    std::vector<double> x_physical;
    std::filesystem::path work_dir;  // empty once removed
};

/// Full pipeline in a private working directory below options.work_root.
/// The directory is removed on success unless keep_work_dir is set and kept
/// on failure; its path is appended to the error detail.
EvaluationResult evaluate(const ProblemInstance& p, std::span<const double> x_norm,
                          const EvaluateOptions& options = {});

}  // namespace crashsuite
