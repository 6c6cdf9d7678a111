#include "crashsuite/error.hpp"
#include "crashsuite/problem.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

using namespace crashsuite;

namespace {

std::filesystem::path test_root(const char* name)
{
    auto p = std::filesystem::temp_directory_path() / "crashsuite_unit" / name;
    std::filesystem::remove_all(p);
    return p;
}

ErrorKind kind_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no crashsuite::Error thrown");
    return ErrorKind::Io;
}

}  // namespace

TEST_CASE("objective names round-trip")
{
    for (auto k : kAllObjectives)
        CHECK(objective_from_string(to_string(k)) == k);
    CHECK(objective_from_string("penalizedsea") == ObjectiveKind::PenalizedSEA);
    CHECK(kind_of([] { objective_from_string("Beauty"); }) == ErrorKind::UnknownObjective);
}

TEST_CASE("create_problem validates dimension and objectives")
{
    const auto p = create_problem(ProblemId::StarBox, 1, {ObjectiveKind::PenalizedSEA});
    CHECK(p.bounds().lower == std::vector<double>{60.0});
    CHECK(p.bounds().upper == std::vector<double>{120.0});
    CHECK(p.is_mock());

    const auto beam = create_problem(ProblemId::ThreePointBending, 40, {ObjectiveKind::PenalizedMass});
    CHECK(beam.bounds().lower == std::vector<double>(40, 0.5));
    CHECK(beam.bounds().upper == std::vector<double>(40, 3.0));

    CHECK(kind_of([] { create_problem(ProblemId::LongCrashTube, 31, {ObjectiveKind::Mass}); }) ==
          ErrorKind::DimensionOutOfRange);
    CHECK(kind_of([] { create_problem(ProblemId::StarBox, 0, {ObjectiveKind::Mass}); }) ==
          ErrorKind::DimensionOutOfRange);
    CHECK(kind_of([] { create_problem(ProblemId::StarBox, 35, {ObjectiveKind::Mass}); }) ==
          ErrorKind::DimensionOutOfRange);
    CHECK(kind_of([] { create_problem(ProblemId::StarBox, 2, {}); }) == ErrorKind::InvalidArgument);

    const auto dup = create_problem(ProblemId::StarBox, 2, {ObjectiveKind::Mass, ObjectiveKind::SEA, ObjectiveKind::Mass});
    CHECK(dup.objectives() == std::vector<ObjectiveKind>{ObjectiveKind::Mass, ObjectiveKind::SEA});
}

TEST_CASE("bounds per problem")
{
    const auto sb3 = problem_bounds(ProblemId::StarBox, 3);
    CHECK(sb3.lower == std::vector<double>{60, 60, 0.7});
    CHECK(sb3.upper == std::vector<double>{120, 120, 3});
    const auto sb6 = problem_bounds(ProblemId::StarBox, 6);
    CHECK(sb6.lower == std::vector<double>{60, 60, 0, 0, 0.7, 0.7});
    CHECK(sb6.upper == std::vector<double>{120, 120, 30, 30, 3, 3});
    const auto tube = problem_bounds(ProblemId::LongCrashTube, 6);
    CHECK(tube.lower == std::vector<double>{-40, -4, 0, -40, -4, 0});
    CHECK(tube.upper == std::vector<double>{40, 4, 16, 40, 4, 16});
    for (auto id : {ProblemId::StarBox, ProblemId::ThreePointBending, ProblemId::LongCrashTube})
        for (int d = 1; d <= max_dimension(id); ++d) {
            const auto b = problem_bounds(id, d);
            REQUIRE(b.lower.size() == static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i)
                CHECK(b.lower[i] < b.upper[i]);
        }
}

TEST_CASE("denormalize endpoints and midpoint")
{
    const auto p = create_problem(ProblemId::StarBox, 1, {ObjectiveKind::Mass});
    CHECK(denormalize(p, std::vector<double>{-5.0})[0] == 60.0);
    CHECK(denormalize(p, std::vector<double>{0.0})[0] == 90.0);
    CHECK(denormalize(p, std::vector<double>{5.0})[0] == 120.0);
    CHECK(kind_of([&] { denormalize(p, std::vector<double>{5.0000001}); }) == ErrorKind::OutOfDomain);
    CHECK(kind_of([&] { denormalize(p, std::vector<double>{std::nan("")}); }) == ErrorKind::OutOfDomain);
    CHECK(kind_of([&] { denormalize(p, std::vector<double>{0.0, 0.0}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("normalize and denormalize are inverse")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (auto id : {ProblemId::StarBox, ProblemId::ThreePointBending, ProblemId::LongCrashTube}) {
        const int d = max_dimension(id);
        const auto p = create_problem(id, d, {ObjectiveKind::Mass});
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> x(static_cast<std::size_t>(d));
            for (auto& v : x)
                v = u(rng);
            const auto back = normalize(p, denormalize(p, x));
            for (int i = 0; i < d; ++i)
                CHECK(std::abs(back[i] - x[i]) <= 1e-12 * std::max(1.0, std::abs(x[i])));
            const auto phys = denormalize(p, x);
            const auto again = denormalize(p, normalize(p, phys));
            for (int i = 0; i < d; ++i)
                CHECK(std::abs(again[i] - phys[i]) <= 1e-12 * std::max(1.0, std::abs(phys[i])));
        }
    }
}

TEST_CASE("mock evaluate on the crash box midpoint")
{
    EvaluateOptions opts;
    opts.work_root = test_root("mid");
    const auto p = create_problem(ProblemId::StarBox, 1, default_objectives(ProblemId::StarBox));
    const auto r = evaluate(p, std::vector<double>{0.0}, opts);
    CHECK(r.mass_kg == doctest::Approx(0.36 * 0.12 * 0.0021 * 7830).epsilon(1e-9));
    CHECK(std::isfinite(r.raw.at(ObjectiveKind::PenalizedSEA)));
    CHECK(r.raw.size() == p.objectives().size());
    CHECK(r.x_physical == std::vector<double>{90.0});
    CHECK(r.work_dir.empty());
    // nothing left behind
    CHECK(std::filesystem::is_empty(opts.work_root));

    const auto r2 = evaluate(p, std::vector<double>{0.0}, opts);
    CHECK(r2.raw == r.raw);
}

TEST_CASE("feasibility follows the problem's intrusion limit")
{
    EvaluateOptions opts;
    opts.work_root = test_root("feasible");
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (auto id : {ProblemId::StarBox, ProblemId::ThreePointBending, ProblemId::LongCrashTube}) {
        const auto p = create_problem(id, 3, {ObjectiveKind::Intrusion, default_objective(id)});
        for (int trial = 0; trial < 5; ++trial) {
            const std::vector<double> x{u(rng), u(rng), u(rng)};
            const auto r = evaluate(p, x, opts);
            const auto limit = constraint_limit_mm(id);
            CHECK(r.feasible == (!limit || r.intrusion_mm <= *limit));
            CHECK(r.raw.at(ObjectiveKind::Intrusion) == r.intrusion_mm);
        }
    }
}

TEST_CASE("starbox intrusion falls as the wall thickens")
{
    EvaluateOptions opts;
    opts.work_root = test_root("thick");
    const auto p = create_problem(ProblemId::StarBox, 3, {ObjectiveKind::Intrusion, ObjectiveKind::Mass});
    const auto thin = evaluate(p, std::vector<double>{0.0, 0.0, -4.0}, opts);
    const auto thick = evaluate(p, std::vector<double>{0.0, 0.0, 4.0}, opts);
    CHECK(thick.mass_kg > thin.mass_kg);
    CHECK(thick.intrusion_mm < thin.intrusion_mm);
}

TEST_CASE("external mode with a missing solver fails as a solver error with the work dir kept")
{
    EvaluateOptions opts;
    opts.work_root = test_root("missing_solver");
    ExternalSolver ext;
    ext.solver_dir = "/nonexistent/solver/dir";
    const auto p = create_problem(ProblemId::StarBox, 1, {ObjectiveKind::Mass}, ext);
    try {
        evaluate(p, std::vector<double>{0.0}, opts);
        FAIL("expected failure");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SpawnFailure);
        CHECK(e.category() == ErrorCategory::Solver);
        CHECK(std::string(e.what()).find("work dir") != std::string::npos);
    }
    CHECK_FALSE(std::filesystem::is_empty(opts.work_root));
}

TEST_CASE("build_model mass report agrees with compute_mass")
{
    for (auto id : {ProblemId::StarBox, ProblemId::ThreePointBending, ProblemId::LongCrashTube}) {
        const auto p = create_problem(id, 2, {ObjectiveKind::Mass});
        const auto m = build_model(id, 2, denormalize(p, std::vector<double>{1.0, -1.0}));
        double sum = 0.0;
        for (const auto& [part, kg] : m.mass.per_part_kg)
            sum += kg;
        CHECK(m.mass.total_kg == doctest::Approx(sum).epsilon(1e-12));
        CHECK(m.mass.total_kg > 0.0);
    }
}
