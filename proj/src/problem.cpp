#include "crashsuite/problem.hpp"

#include "crashsuite/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <random>

namespace crashsuite {

namespace {

constexpr double kDomainLo = -5.0;
constexpr double kDomainHi = 5.0;

bool iequals(std::string_view a, std::string_view b)
{
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

void check_dimension(ProblemId id, int d)
{
    if (d < 1 || d > max_dimension(id))
        throw Error(ErrorKind::DimensionOutOfRange,
                    fmt::format("{} supports 1 <= d <= {}, got {}", to_string(id), max_dimension(id), d));
}

}  // namespace

std::string_view to_string(ObjectiveKind kind)
{
    switch (kind) {
    case ObjectiveKind::SEA: return "SEA";
    case ObjectiveKind::PenalizedSEA: return "PenalizedSEA";
    case ObjectiveKind::Mass: return "Mass";
    case ObjectiveKind::PenalizedMass: return "PenalizedMass";
    case ObjectiveKind::LoadUniformity: return "LoadUniformity";
    case ObjectiveKind::Intrusion: return "Intrusion";
    case ObjectiveKind::AbsorbedEnergy: return "AbsorbedEnergy";
    case ObjectiveKind::PeakForce: return "PeakForce";
    case ObjectiveKind::MeanForce: return "MeanForce";
    }
    return "?";
}

ObjectiveKind objective_from_string(std::string_view name)
{
    for (auto k : kAllObjectives)
        if (iequals(name, to_string(k)))
            return k;
    throw Error(ErrorKind::UnknownObjective, fmt::format("unknown objective '{}'", name));
}

ObjectiveKind default_objective(ProblemId id)
{
    switch (id) {
    case ProblemId::StarBox: return ObjectiveKind::PenalizedSEA;
    case ProblemId::ThreePointBending: return ObjectiveKind::PenalizedMass;
    case ProblemId::LongCrashTube: return ObjectiveKind::LoadUniformity;
    }
    return ObjectiveKind::PenalizedSEA;
}

std::vector<ObjectiveKind> default_objectives(ProblemId id)
{
    return {default_objective(id), ObjectiveKind::SEA, ObjectiveKind::Mass, ObjectiveKind::LoadUniformity,
            ObjectiveKind::Intrusion};
}

Bounds problem_bounds(ProblemId id, int d)
{
    check_dimension(id, d);
    Bounds b;
    b.lower.reserve(static_cast<std::size_t>(d));
    b.upper.reserve(static_cast<std::size_t>(d));
    auto push = [&](double lo, double hi) {
        b.lower.push_back(lo);
        b.upper.push_back(hi);
    };
    for (int i = 0; i < d; ++i) {
        switch (id) {
        case ProblemId::StarBox:
            if (i < 2)
                push(60.0, 120.0);
            else if (i == 2 && d == 3)
                push(0.7, 3.0);
            else if (i < 4)
                push(0.0, 30.0);
            else
                push(0.7, 3.0);
            break;
        case ProblemId::ThreePointBending:
            push(0.5, 3.0);
            break;
        case ProblemId::LongCrashTube:
            switch (tube_variable_component(i)) {
            case TriggerComponent::Z: push(-40.0, 40.0); break;
            case TriggerComponent::Epsilon: push(-4.0, 4.0); break;
            case TriggerComponent::Height: push(0.0, 16.0); break;
            }
            break;
        }
    }
    return b;
}

std::optional<double> constraint_limit_mm(ProblemId id)
{
    switch (id) {
    case ProblemId::StarBox: return kStarBoxIntrusionLimitMm;
    case ProblemId::ThreePointBending: return kBeamIntrusionLimitMm;
    case ProblemId::LongCrashTube: return std::nullopt;
    }
    return std::nullopt;
}

ProblemInstance create_problem(ProblemId id, int d, std::vector<ObjectiveKind> objectives, SolverMode mode)
{
    check_dimension(id, d);
    if (objectives.empty())
        throw Error(ErrorKind::InvalidArgument, "at least one objective is required");
    std::vector<ObjectiveKind> unique;
    for (auto k : objectives)
        if (std::find(unique.begin(), unique.end(), k) == unique.end())
            unique.push_back(k);
    return ProblemInstance(id, d, problem_bounds(id, d), std::move(unique), std::move(mode));
}

std::vector<double> denormalize(const ProblemInstance& p, std::span<const double> x_norm)
{
    const auto d = static_cast<std::size_t>(p.dimension());
    if (x_norm.size() != d)
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("expected {} design variables, got {}", d, x_norm.size()));
    std::vector<double> out(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double v = x_norm[i];
        if (!(v >= kDomainLo && v <= kDomainHi))
            throw Error(ErrorKind::OutOfDomain, fmt::format("x[{}] = {} is outside [-5, 5]", i, v));
        // Endpoint-exact blend: w = 0 gives lower, w = 1 gives upper.
        const double w = (v - kDomainLo) / (kDomainHi - kDomainLo);
        out[i] = (1.0 - w) * p.bounds().lower[i] + w * p.bounds().upper[i];
    }
    return out;
}

std::vector<double> normalize(const ProblemInstance& p, std::span<const double> x_phys)
{
    const auto d = static_cast<std::size_t>(p.dimension());
    if (x_phys.size() != d)
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("expected {} design variables, got {}", d, x_phys.size()));
    std::vector<double> out(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double lo = p.bounds().lower[i];
        const double hi = p.bounds().upper[i];
        if (!(x_phys[i] >= lo && x_phys[i] <= hi))
            throw Error(ErrorKind::OutOfDomain, fmt::format("x[{}] = {} is outside [{}, {}]", i, x_phys[i], lo, hi));
        const double w = (x_phys[i] - lo) / (hi - lo);
        out[i] = (1.0 - w) * kDomainLo + w * kDomainHi;
    }
    return out;
}

Model build_model(ProblemId id, int d, std::span<const double> x_phys)
{
    check_dimension(id, d);
    if (x_phys.size() != static_cast<std::size_t>(d))
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("expected {} design variables, got {}", d, x_phys.size()));
    Model m{{}, material_for(id), sim_config_for(id), {}, {}};
    switch (id) {
    case ProblemId::StarBox: {
        const auto g = starbox_geometry(d, x_phys);
        m.mesh = mesh_starbox(g.section, g.profile);
        m.geometry = {g.section.extrusion_length_mm, kStarBoxHeightMm};
        break;
    }
    case ProblemId::ThreePointBending: {
        const BeamDims dims;
        m.mesh = mesh_beam(beam_rib_layout(d, x_phys), dims);
        m.geometry = {dims.length_mm, dims.height_mm};
        break;
    }
    case ProblemId::LongCrashTube: {
        const TubeDims dims;
        m.mesh = mesh_crashtube(trigger_mapping(d, x_phys), dims);
        m.geometry = {dims.height_mm, dims.height_mm};
        break;
    }
    }
    m.mass = compute_mass(m.mesh, m.material.rho_kg_m3);
    return m;
}

namespace {

std::filesystem::path make_work_dir(const std::filesystem::path& root, const std::string& case_name)
{
    static std::atomic<unsigned> counter{0};
    std::filesystem::create_directories(root);
    std::random_device rd;
    for (int attempt = 0; attempt < 100; ++attempt) {
        const auto tag = fmt::format("{}_{:08x}{:04x}", case_name, rd(), counter.fetch_add(1) & 0xffffu);
        auto dir = root / tag;
        if (std::filesystem::create_directory(dir))
            return dir;
    }
    throw Error(ErrorKind::Io, "could not create a unique working directory in " + root.string());
}

double objective_value(ObjectiveKind kind, const SimulationRecord& rec, double lu)
{
    switch (kind) {
    case ObjectiveKind::SEA: return sea(rec.e_abs_J, rec.m_s_kg);
    case ObjectiveKind::PenalizedSEA:
        // The infeasible branch does not need SEA.
        if (rec.delta_mm > kStarBoxIntrusionLimitMm)
            return penalized_sea(0.0, rec.delta_mm);
        return penalized_sea(sea(rec.e_abs_J, rec.m_s_kg), rec.delta_mm);
    case ObjectiveKind::Mass: return rec.m_s_kg;
    case ObjectiveKind::PenalizedMass: return penalized_mass(rec.m_s_kg, rec.delta_mm);
    case ObjectiveKind::LoadUniformity: return lu;
    case ObjectiveKind::Intrusion: return rec.delta_mm;
    case ObjectiveKind::AbsorbedEnergy: return rec.e_abs_J;
    case ObjectiveKind::PeakForce: return rec.f_peak_kN;
    case ObjectiveKind::MeanForce: return rec.f_mean_kN;
    }
    return 0.0;
}

EvaluationResult run_pipeline(const ProblemInstance& p, std::vector<double> x_norm, std::vector<double> x_phys,
                              const std::filesystem::path& dir, const EvaluateOptions& options)
{
    auto model = build_model(p.id(), p.dimension(), x_phys);
    model.config.write_vtk = options.write_vtk;
    const auto deck = build_deck(model.mesh, model.material, model.config);
    write_deck(deck, model.config.case_name, dir);

    SolverJob job{dir, deck, model.config.case_name, options.cores, options.timeout_s, p.solver_mode(), std::nullopt};
    ColumnMapping columns;
    if (const auto* ext = std::get_if<ExternalSolver>(&p.solver_mode()))
        columns = ext->columns;
    else
        job.mock = MockInputs{model.mass.total_kg, model.config, model.material, model.geometry};

    const auto out = run(job);
    if (out.status == ExitStatus::TimedOut)
        throw Error(ErrorKind::Timeout, fmt::format("solver exceeded {} s", options.timeout_s));
    if (out.status == ExitStatus::Failed)
        throw Error(ErrorKind::SolverFailed, out.log_excerpt);

    const auto th = read_time_history(out.time_history_csv, columns);
    const auto rec = extract_scalars(th, model.mass, constraint_limit_mm(p.id()), options.window);
    const double lu = rec.f_peak_kN / rec.f_mean_kN;

    EvaluationResult r{{}, rec.within_limit, rec.delta_mm, rec.m_s_kg, rec.e_abs_J, rec.f_peak_kN,
                       rec.f_mean_kN, std::move(x_norm), std::move(x_phys), dir};
    for (auto k : p.objectives())
        r.raw[k] = objective_value(k, rec, lu);
    return r;
}

}  // namespace

EvaluationResult evaluate(const ProblemInstance& p, std::span<const double> x_norm, const EvaluateOptions& options)
{
    auto x_phys = denormalize(p, x_norm);
    const auto dir = make_work_dir(options.work_root, std::string(to_string(p.id())));
    try {
        auto r = run_pipeline(p, {x_norm.begin(), x_norm.end()}, std::move(x_phys), dir, options);
        if (!options.keep_work_dir) {
            std::error_code ec;
            std::filesystem::remove_all(dir, ec);
            r.work_dir.clear();
        }
        return r;
    } catch (const Error& e) {
        throw Error(e.kind(), fmt::format("{} [work dir: {}]", e.detail(), dir.string()));
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Io, fmt::format("{} [work dir: {}]", e.what(), dir.string()));
    }
}

}  // namespace crashsuite
