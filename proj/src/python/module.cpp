#include "crashsuite/error.hpp"
#include "crashsuite/problem.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>
#include <mutex>

namespace py = pybind11;
using namespace crashsuite;

namespace {

// One handle serializes its own calls; separate handles run independently.
class ProblemHandle {
public:
    ProblemHandle(ProblemInstance p, EvaluateOptions opts) : problem_(std::move(p)), options_(std::move(opts)) {}

    py::dict evaluate(const std::vector<double>& x)
    {
        const auto r = run(x);
        py::dict out;
        for (auto k : problem_.objectives())
            out[py::str(std::string(to_string(k)))] = r.raw.at(k);
        return out;
    }

    py::dict evaluate_details(const std::vector<double>& x)
    {
        const auto r = run(x);
        py::dict objectives;
        for (auto k : problem_.objectives())
            objectives[py::str(std::string(to_string(k)))] = r.raw.at(k);
        py::dict out;
        out["feasible"] = r.feasible;
        out["intrusion_mm"] = r.intrusion_mm;
        out["mass_kg"] = r.mass_kg;
        out["absorbed_energy_J"] = r.absorbed_energy_J;
        out["peak_force_kN"] = r.peak_force_kN;
        out["mean_force_kN"] = r.mean_force_kN;
        out["x_normalized"] = r.x_normalized;
        out["x_physical"] = r.x_physical;
        out["objectives"] = objectives;
        return out;
    }

    std::vector<double> denormalize(const std::vector<double>& x) const { return crashsuite::denormalize(problem_, x); }

    const ProblemInstance& problem() const { return problem_; }

private:
    EvaluationResult run(const std::vector<double>& x)
    {
        py::gil_scoped_release release;
        std::lock_guard lock(mutex_);
        return crashsuite::evaluate(problem_, x, options_);
    }

    ProblemInstance problem_;
    EvaluateOptions options_;
    std::mutex mutex_;
};

std::unique_ptr<ProblemHandle> make_handle(int problem, int dim, std::optional<std::vector<std::string>> objectives,
                                           bool mock, std::optional<std::filesystem::path> solver_path, int cores,
                                           double timeout_s, std::optional<std::filesystem::path> work_root)
{
    const auto id = problem_from_int(problem);
    std::vector<ObjectiveKind> kinds;
    if (objectives)
        for (const auto& n : *objectives)
            kinds.push_back(objective_from_string(n));
    else
        kinds = default_objectives(id);

    SolverMode mode = MockSolver{};
    if (!mock || solver_path) {
        const auto path = resolve_solver_path(solver_path);
        if (!path)
            throw Error(ErrorKind::InvalidArgument, "mock=False needs solver_path or $" + std::string(kSolverPathEnv));
        ExternalSolver ext;
        ext.solver_dir = *path;
        mode = ext;
    }
    EvaluateOptions opts;
    opts.cores = cores;
    opts.timeout_s = timeout_s;
    if (work_root)
        opts.work_root = *work_root;
    return std::make_unique<ProblemHandle>(create_problem(id, dim, std::move(kinds), std::move(mode)), opts);
}

}  // namespace

PYBIND11_MODULE(_crashsuite, m)
{
    m.doc() = "Crashworthiness optimization benchmark problems";

    static py::exception<Error> crash_error(m, "CrashsuiteError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            const auto msg = "[" + std::string(to_string(e.category())) + "] " + e.what();
            if (e.category() == ErrorCategory::Usage)
                PyErr_SetString(PyExc_ValueError, msg.c_str());
            else
                py::set_error(crash_error, msg.c_str());
        }
    });

    py::class_<ProblemHandle>(m, "Problem")
        .def_property_readonly("problem", [](const ProblemHandle& h) { return to_int(h.problem().id()); })
        .def_property_readonly("name", [](const ProblemHandle& h) { return std::string(to_string(h.problem().id())); })
        .def_property_readonly("dimension", [](const ProblemHandle& h) { return h.problem().dimension(); })
        .def_property_readonly("bounds",
                               [](const ProblemHandle& h) {
                                   return py::make_tuple(h.problem().bounds().lower, h.problem().bounds().upper);
                               })
        .def_property_readonly("objectives",
                               [](const ProblemHandle& h) {
                                   std::vector<std::string> names;
                                   for (auto k : h.problem().objectives())
                                       names.emplace_back(to_string(k));
                                   return names;
                               })
        .def_property_readonly("is_mock", [](const ProblemHandle& h) { return h.problem().is_mock(); })
        .def("denormalize", &ProblemHandle::denormalize, py::arg("x"))
        .def("evaluate", &ProblemHandle::evaluate, py::arg("x"),
             "Objective name -> value for a normalized design in [-5, 5]^d")
        .def("evaluate_details", &ProblemHandle::evaluate_details, py::arg("x"))
        .def("__call__", &ProblemHandle::evaluate, py::arg("x"));

    m.def("create_problem", &make_handle, py::arg("problem"), py::arg("dim"), py::arg("objectives") = py::none(),
          py::arg("mock") = true, py::arg("solver_path") = py::none(), py::arg("cores") = 1,
          py::arg("timeout_s") = kDefaultTimeoutS, py::arg("work_root") = py::none());

    m.attr("SOLVER_PATH_ENV") = kSolverPathEnv;
}
