#include "crashsuite/cli.hpp"

#include "crashsuite/error.hpp"
#include "crashsuite/harness.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <sstream>

namespace crashsuite {

namespace {

std::string join(const std::vector<double>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += fmt::format("{}{}", i ? "," : "", v[i]);
    return s;
}

struct SolverFlags {
    bool mock = false;
    std::string solver_path;
    std::string columns;
    int cores = 1;
    double timeout_s = kDefaultTimeoutS;
    bool vtk = false;
    std::string work_root = (std::filesystem::temp_directory_path() / "crashsuite").string();

    void add_to(CLI::App& cmd)
    {
        auto* m = cmd.add_flag("--mock", mock, "Use the built-in analytic mock solver");
        auto* s = cmd.add_option("--solver-path", solver_path,
                                 fmt::format("Directory with the solver binaries (default ${})", kSolverPathEnv));
        m->excludes(s);
        cmd.add_option("--columns", columns, "Column-mapping file for external time-history CSV")->check(CLI::ExistingFile);
        cmd.add_option("--cores", cores, "Solver threads")->check(CLI::PositiveNumber);
        cmd.add_option("--timeout", timeout_s, "Solver timeout in seconds")->check(CLI::NonNegativeNumber);
        cmd.add_flag("--vtk", vtk, "Ask the solver for animation output");
        cmd.add_option("--work-root", work_root, "Parent directory of per-evaluation working directories");
    }

    SolverMode mode() const
    {
        if (mock)
            return MockSolver{};
        const auto path = resolve_solver_path(solver_path.empty() ? std::nullopt
                                                                  : std::optional<std::filesystem::path>(solver_path));
        if (!path)
            throw Error(ErrorKind::InvalidArgument,
                        fmt::format("no solver selected: pass --mock or --solver-path, or set {}", kSolverPathEnv));
        ExternalSolver ext;
        ext.solver_dir = *path;
        if (!columns.empty())
            ext.columns = ColumnMapping::from_file(columns);
        return ext;
    }
};

std::vector<ObjectiveKind> parse_objectives(const std::vector<std::string>& names, ProblemId id)
{
    std::vector<ObjectiveKind> out;
    for (const auto& n : names)
        out.push_back(objective_from_string(n));
    if (out.empty())
        out = default_objectives(id);
    return out;
}

}  // namespace

std::string format_evaluation(const ProblemInstance& p, const EvaluationResult& r)
{
    std::string s;
    s += fmt::format("problem={}\n", to_int(p.id()));
    s += fmt::format("case={}\n", to_string(p.id()));
    s += fmt::format("dim={}\n", p.dimension());
    s += fmt::format("feasible={}\n", r.feasible ? "true" : "false");
    s += fmt::format("intrusion_mm={}\n", r.intrusion_mm);
    s += fmt::format("mass_kg={}\n", r.mass_kg);
    s += fmt::format("absorbed_energy_J={}\n", r.absorbed_energy_J);
    s += fmt::format("peak_force_kN={}\n", r.peak_force_kN);
    s += fmt::format("mean_force_kN={}\n", r.mean_force_kN);
    s += fmt::format("x_normalized={}\n", join(r.x_normalized));
    s += fmt::format("x_physical={}\n", join(r.x_physical));
    for (auto k : p.objectives())
        s += fmt::format("{}={}\n", to_string(k), r.raw.at(k));
    if (!r.work_dir.empty())
        s += fmt::format("work_dir={}\n", r.work_dir.string());
    return s;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Crashworthiness optimization benchmark suite", "crashsuite"};
    app.require_subcommand(1);

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "Evaluate one design point");
    int ev_problem = 0, ev_dim = 0;
    std::vector<std::string> ev_objectives;
    std::vector<double> ev_x;
    bool ev_keep = false;
    std::string ev_dump;
    SolverFlags ev_solver;
    ev->add_option("--problem", ev_problem, "Problem number (1-3)")->required();
    ev->add_option("--dim", ev_dim, "Dimension")->required();
    ev->add_option("--objective", ev_objectives, "Objective name (repeatable)");
    ev->add_option("-x", ev_x, "Normalized design vector in [-5,5], comma separated")
        ->delimiter(',')
        ->allow_extra_args(false)
        ->required();
    ev->add_flag("--keep-workdir", ev_keep, "Keep the working directory after success");
    ev->add_option("--dump-mesh", ev_dump, "Write the mesh listing to this file");
    ev_solver.add_to(*ev);

    // optimize
    auto* op = app.add_subcommand("optimize", "Run a baseline optimizer and write a run log");
    int op_problem = 0, op_dim = 0, op_budget = 20, op_parallel = 1;
    std::string op_objective, op_algo = "random-search", op_out = ".";
    std::vector<std::uint64_t> op_seeds{0};
    SolverFlags op_solver;
    op->add_option("--problem", op_problem, "Problem number (1-3)")->required();
    op->add_option("--dim", op_dim, "Dimension")->required();
    op->add_option("--objective", op_objective, "Objective to minimize (default: the problem's own)");
    op->add_option("--algo", op_algo, "random-search or one-plus-one-es");
    op->add_option("--budget", op_budget, "Evaluations per run")->check(CLI::PositiveNumber);
    op->add_option("--seed", op_seeds, "Seed (repeatable; one run per seed)")->delimiter(',');
    op->add_option("--parallel", op_parallel, "Runs executed concurrently")->check(CLI::PositiveNumber);
    op->add_option("--out", op_out, "Directory for run logs");
    op_solver.add_to(*op);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*ev) {
            const auto id = problem_from_int(ev_problem);
            const auto p = create_problem(id, ev_dim, parse_objectives(ev_objectives, id), ev_solver.mode());
            if (!ev_dump.empty()) {
                const auto model = build_model(id, ev_dim, denormalize(p, ev_x));
                std::ofstream f(ev_dump, std::ios::binary);
                write_mesh_listing(model.mesh, f);
                if (!f)
                    throw Error(ErrorKind::Io, "cannot write " + ev_dump);
            }
            EvaluateOptions opts;
            opts.work_root = ev_solver.work_root;
            opts.keep_work_dir = ev_keep;
            opts.cores = ev_solver.cores;
            opts.timeout_s = ev_solver.timeout_s;
            opts.write_vtk = ev_solver.vtk;
            out << format_evaluation(p, evaluate(p, ev_x, opts));
            return 0;
        }

        const auto id = problem_from_int(op_problem);
        RunConfig base;
        base.problem = id;
        base.dim = op_dim;
        base.objective = op_objective.empty() ? default_objective(id) : objective_from_string(op_objective);
        base.algorithm = algorithm_from_string(op_algo);
        base.budget = op_budget;
        if (const auto mode = op_solver.mode(); const auto* ext = std::get_if<ExternalSolver>(&mode))
            base.solver_path = ext->solver_dir;
        base.cores = op_solver.cores;
        base.timeout_s = op_solver.timeout_s;
        base.write_vtk = op_solver.vtk;
        base.out_dir = op_out;
        base.work_root = op_solver.work_root;
        // Validate once before spawning runs.
        (void)create_problem(id, op_dim, {base.objective});

        std::vector<RunConfig> cfgs;
        for (auto seed : op_seeds) {
            auto c = base;
            c.seed = seed;
            cfgs.push_back(c);
        }
        bool aborted = false;
        for (const auto& s : run_optimizers(cfgs, op_parallel)) {
            out << fmt::format("log={}\nevaluations={}\nfailures={}\nbest_y={}\nbest_x={}\n", s.log_path.string(),
                               s.evaluations, s.failures, s.best_y, join(s.best_x));
            if (s.aborted) {
                aborted = true;
                err << "run aborted after repeated failures: " << s.last_error << '\n';
            }
        }
        return aborted ? exit_code_for(ErrorCategory::Solver) : 0;
    } catch (const Error& e) {
        err << fmt::format("error [{}] {}\n", to_string(e.category()), e.what());
        return exit_code_for(e.category());
    } catch (const std::exception& e) {
        err << "error [solver] " << e.what() << '\n';
        return exit_code_for(ErrorCategory::Solver);
    }
}

}  // namespace crashsuite
