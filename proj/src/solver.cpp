#include "crashsuite/solver.hpp"

#include "crashsuite/error.hpp"
#include "process.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace crashsuite {

std::optional<std::filesystem::path> resolve_solver_path(const std::optional<std::filesystem::path>& explicit_path)
{
    if (explicit_path && !explicit_path->empty())
        return explicit_path;
    if (const char* env = std::getenv(kSolverPathEnv); env && *env)
        return std::filesystem::path(env);
    return std::nullopt;
}

TimeHistory mock_surrogate(double mass_kg, const SimConfig& cfg, const MaterialModel& material,
                           const GeometrySummary& geometry)
{
    if (!(mass_kg > 0.0))
        throw Error(ErrorKind::NonPositiveMass, "mock surrogate needs a positive structural mass");
    if (!(geometry.extrusion_length_mm > 0.0) || !(material.rho_kg_m3 > 0.0))
        throw Error(ErrorKind::InvalidArgument, "mock surrogate needs positive extrusion length and density");

    const double v0 = cfg.impactor_velocity_mm_per_ms();  // m/s
    const double ke0 = 0.5 * cfg.impactor_mass_kg * v0 * v0;  // J
    const double area_mm2 = mass_kg / (material.rho_kg_m3 * 1e-9 * geometry.extrusion_length_mm);
    const double resistance_N = material.sigma_y_MPa * area_mm2;
    const double delta_mm = std::min(0.9 * geometry.free_length_mm, 1e3 * ke0 / resistance_N);
    const double energy_J = std::min(ke0, resistance_N * delta_mm * 1e-3);

    const double dt = kMockSampleMs;
    const auto samples = static_cast<std::size_t>(std::lround(cfg.sim_time_ms / dt)) + 1;
    double crush_ms = v0 > 0.0 ? 2.0 * delta_mm / v0 : 0.0;
    crush_ms = std::clamp(crush_ms, dt, std::max(dt, cfg.sim_time_ms - dt));

    const double r_kN = resistance_N * 1e-3;
    TimeHistory th;
    th.samples.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) * dt;
        double force = 0.0;
        double phase = 0.0;
        if (k >= 1 && ke0 > 0.0) {
            const double tau = static_cast<double>(k - 1) * dt / crush_ms;
            if (k == 1) {
                force = 2.2 * r_kN;
            } else if (tau < 1.0) {
                force = 1.8 * r_kN * std::sin(std::numbers::pi * tau);
                phase = 0.5 * (1.0 - std::cos(std::numbers::pi * tau));
            } else {
                phase = 1.0;
            }
        }
        const double internal = energy_J * phase;
        th.samples.push_back({t, force, delta_mm * phase, internal, ke0 - internal});
    }
    return th;
}

std::string time_history_file_name(const std::string& case_name) { return case_name + "T01.csv"; }

namespace {

std::string tail_of(const std::filesystem::path& log, std::size_t max_bytes = 2000)
{
    std::ifstream in(log, std::ios::binary);
    if (!in)
        return {};
    std::ostringstream ss;
    ss << in.rdbuf();
    auto s = ss.str();
    return s.size() > max_bytes ? s.substr(s.size() - max_bytes) : s;
}

SolverOutput run_mock(const SolverJob& job)
{
    if (!job.mock)
        throw Error(ErrorKind::InvalidArgument, "mock solver job without mock inputs");
    const auto& m = *job.mock;
    const auto th = mock_surrogate(m.mass_kg, m.cfg, m.material, m.geometry);
    const auto csv = job.work_dir / time_history_file_name(job.case_name);
    std::ofstream out(csv, std::ios::binary);
    const auto text = write_time_history(th);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw Error(ErrorKind::Io, "cannot write " + csv.string());
    return {csv, ExitStatus::Ok, "mock solver"};
}

SolverOutput run_external(const SolverJob& job, const ExternalSolver& ext)
{
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(std::max(0.0, job.timeout_s)));
    const auto log = job.work_dir / (job.case_name + "_solver.log");
    const std::string threads = std::to_string(std::max(1, job.cores));
    const std::vector<std::pair<std::string, std::string>> env{{"OMP_NUM_THREADS", threads},
                                                               {"OMP_STACKSIZE", "400m"}};
    const auto csv = job.work_dir / time_history_file_name(job.case_name);

    auto step = [&](const std::vector<std::string>& argv) -> std::optional<SolverOutput> {
        const auto r = detail::run_process(argv, job.work_dir, env, log, deadline);
        if (r.timed_out)
            return SolverOutput{csv, ExitStatus::TimedOut, tail_of(log)};
        if (r.exit_code != 0)
            return SolverOutput{csv, ExitStatus::Failed,
                                fmt::format("{} exited with {}\n{}", argv[0], r.exit_code, tail_of(log))};
        return std::nullopt;
    };

    const auto bin = [&](const std::string& name) { return (ext.solver_dir / name).string(); };
    if (auto r = step({bin(ext.starter_binary), "-i", starter_file_name(job.case_name), "-nt", threads}))
        return *r;
    if (auto r = step({bin(ext.engine_binary), "-i", engine_file_name(job.case_name), "-nt", threads}))
        return *r;
    if (std::filesystem::exists(ext.solver_dir / ext.th_converter_binary)) {
        if (auto r = step({bin(ext.th_converter_binary), job.case_name + "T01"}))
            return *r;
    }
    if (!std::filesystem::exists(csv))
        throw Error(ErrorKind::MissingOutput, "solver finished without writing " + csv.string());
    return {csv, ExitStatus::Ok, tail_of(log)};
}

}  // namespace

SolverOutput run(const SolverJob& job)
{
    if (job.cores < 1)
        throw Error(ErrorKind::InvalidArgument, "cores must be >= 1");
    if (!std::filesystem::is_directory(job.work_dir))
        throw Error(ErrorKind::Io, "work directory does not exist: " + job.work_dir.string());
    if (const auto* ext = std::get_if<ExternalSolver>(&job.mode))
        return run_external(job, *ext);
    return run_mock(job);
}

}  // namespace crashsuite
