// Acceptance suite: one PASS/FAIL line per criterion, tolerances fixed below.

#include "crashsuite/deck.hpp"
#include "crashsuite/error.hpp"
#include "crashsuite/harness.hpp"
#include "crashsuite/objectives.hpp"
#include "crashsuite/problem.hpp"
#include "golden_deck.hpp"
#include "oracles.hpp"
#include "trigger_table.inc"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <tuple>

using namespace crashsuite;

namespace {

constexpr double kPenaltyTol = 1e-12;
constexpr double kInterpTol = 1e-12;
constexpr double kMassRelTol = 0.01;
constexpr double kMirrorTolMm = 1e-9;
constexpr double kEnergyTolJ = 1e-9;
constexpr double kBoundsBudgetS = 1.0;
constexpr double kPenaltyBudgetS = 1.0;
constexpr double kTableBudgetS = 1.0;
constexpr double kMassBudgetS = 5.0;
constexpr double kEndToEndBudgetS = 60.0;

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const ProblemId kProblems[] = {ProblemId::StarBox, ProblemId::ThreePointBending, ProblemId::LongCrashTube};

std::filesystem::path scratch(const std::string& name)
{
    auto p = std::filesystem::temp_directory_path() / "crashsuite_acceptance" / name;
    std::filesystem::remove_all(p);
    return p;
}

// Bounds written out per problem from the published ranges.
Bounds expected_bounds(ProblemId id, int d)
{
    Bounds b;
    for (int i = 1; i <= d; ++i) {
        double lo = 0, hi = 0;
        if (id == ProblemId::StarBox) {
            if (i <= 2)
                std::tie(lo, hi) = std::pair{60.0, 120.0};
            else if (d == 3)
                std::tie(lo, hi) = std::pair{0.7, 3.0};
            else if (i <= 4)
                std::tie(lo, hi) = std::pair{0.0, 30.0};
            else
                std::tie(lo, hi) = std::pair{0.7, 3.0};
        } else if (id == ProblemId::ThreePointBending) {
            std::tie(lo, hi) = std::pair{0.5, 3.0};
        } else {
            const double z[] = {-40.0, 40.0}, e[] = {-4.0, 4.0}, h[] = {0.0, 16.0};
            const double* r = (i - 1) % 3 == 0 ? z : (i - 1) % 3 == 1 ? e : h;
            std::tie(lo, hi) = std::pair{r[0], r[1]};
        }
        b.lower.push_back(lo);
        b.upper.push_back(hi);
    }
    return b;
}

Outcome check_bounds()
{
    const auto t0 = Clock::now();
    int pairs = 0, mismatches = 0;
    for (auto id : kProblems)
        for (int d = 1; d <= max_dimension(id); ++d) {
            ++pairs;
            const auto p = create_problem(id, d, {default_objective(id)});
            if (!(p.bounds() == expected_bounds(id, d)))
                ++mismatches;
        }
    bool rejects = true;
    for (auto id : kProblems)
        for (int d : {0, max_dimension(id) + 1}) {
            try {
                create_problem(id, d, {default_objective(id)});
                rejects = false;
            } catch (const Error&) {
            }
        }
    const double t = seconds_since(t0);
    return {pairs == 104 && mismatches == 0 && rejects && t < kBoundsBudgetS,
            fmt::format("{} pairs, {} mismatches, out-of-range rejected={}, {:.3f} s", pairs, mismatches, rejects, t)};
}

Outcome check_penalties()
{
    const auto t0 = Clock::now();
    const double a = penalized_sea(1234.5, 70.0);
    const double b = penalized_mass(2.0, 100.0);
    const bool edges = penalized_sea(500.0, 60.0) == -500.0 && penalized_mass(2.0, 50.0) == 2.0;
    const double t = seconds_since(t0);
    const bool ok = std::abs(a - 1000.0) <= kPenaltyTol && std::abs(b - 14.25952) <= kPenaltyTol && edges &&
                    t < kPenaltyBudgetS;
    return {ok, fmt::format("sea(70)={:.15g}, mass(100)={:.15g}, boundaries feasible={}", a, b, edges)};
}

Outcome check_equivalence()
{
    const auto t0 = Clock::now();
    int cells = 0, mismatches = 0;
    std::mt19937_64 rng(30);
    for (int d = 1; d <= 30; ++d) {
        const auto bounds = problem_bounds(ProblemId::LongCrashTube, d);
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<double> x(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i)
                x[i] = std::uniform_real_distribution<double>(bounds.lower[i], bounds.upper[i])(rng);
            const auto set = trigger_mapping(d, x);
            for (int slot = 0; slot < 30; ++slot) {
                const auto& tr = set.triggers[static_cast<std::size_t>(slot / 3)];
                const double got = slot % 3 == 0 ? tr.z_mm : slot % 3 == 1 ? tr.epsilon_mm : tr.h_mm;
                ++cells;
                if (got != oracle::table_cell(kTriggerTable[slot][d - 1], x))
                    ++mismatches;
            }
        }
    }
    const double t = seconds_since(t0);
    return {mismatches == 0 && t < kTableBudgetS,
            fmt::format("{} cells over d=1..30, {} mismatches, {:.3f} s", cells, mismatches, t)};
}

Outcome check_interpolation()
{
    const auto g = starbox_geometry(7, std::vector<double>{90.0, 90.0, 10.0, 10.0, 1.6, 2.7, 0.95});
    const double at60 = thickness_at(g.profile, 60.0);
    const double at30 = thickness_at(g.profile, 30.0);
    const double ref30 = oracle::interpolate({{0.0, 1.6}, {60.0, 2.7}, {120.0, 0.95}}, 30.0);

    std::vector<double> x{90.0, 90.0, 10.0, 10.0};
    for (int i = 0; i < 30; ++i)
        x.push_back(0.7 + 2.3 * i / 29.0);
    const auto sat = starbox_geometry(34, x);
    const auto mesh = mesh_starbox(sat.section, sat.profile);
    double worst = 0.0;
    for (int row = 0; row < 30; ++row)
        worst = std::max(worst, std::abs(mesh.part_thickness_mm.at(row + 1) - x[4 + static_cast<std::size_t>(row)]));
    const bool ok = at60 == 2.7 && std::abs(at30 - 2.15) <= kInterpTol && std::abs(at30 - ref30) <= kInterpTol &&
                    worst == 0.0;
    return {ok, fmt::format("t(60)={}, t(30)={}, saturated max error={}", at60, at30, worst)};
}

Outcome check_mass()
{
    const auto t0 = Clock::now();
    EvaluateOptions opts;
    opts.work_root = scratch("mass");
    const auto p = create_problem(ProblemId::StarBox, 1, {ObjectiveKind::PenalizedSEA, ObjectiveKind::Mass});
    const auto r = evaluate(p, std::vector<double>{0.0}, opts);
    const double analytic = oracle::prism_mass_kg(4 * 90.0, 120.0, 2.1, 7830.0);
    const double rel = std::abs(r.mass_kg - 0.7103) / 0.7103;
    const double t = seconds_since(t0);
    return {rel <= kMassRelTol && std::abs(analytic - 0.7103) / 0.7103 <= kMassRelTol && r.x_physical[0] == 90.0 &&
                t < kMassBudgetS,
            fmt::format("m_s={:.6f} kg (analytic {:.6f}), rel. error {:.2e}, {:.3f} s", r.mass_kg, analytic, rel, t)};
}

Outcome check_mirror()
{
    std::mt19937_64 rng(1000);
    int failures = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int d = std::uniform_int_distribution<int>(1, 15)(rng);
        const auto b = problem_bounds(ProblemId::LongCrashTube, d);
        std::vector<double> x(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            x[i] = std::uniform_real_distribution<double>(b.lower[i], b.upper[i])(rng);
        const auto mesh = mesh_crashtube(trigger_mapping(d, x));

        // Face swap: (x, y, z) -> (-x, -y, z) exchanges the two walls of each face pair.
        std::vector<Vec3> pts, reflected;
        pts.reserve(mesh.nodes.size());
        reflected.reserve(mesh.nodes.size());
        for (const auto& n : mesh.nodes) {
            pts.push_back(n.pos);
            reflected.push_back({-n.pos[0], -n.pos[1], n.pos[2]});
        }
        auto key = [](const Vec3& v) {
            return std::tuple{std::llround(v[2] * 1e6), std::llround(v[0] * 1e6), std::llround(v[1] * 1e6)};
        };
        auto by_key = [&](const Vec3& a, const Vec3& c) { return key(a) < key(c); };
        std::sort(pts.begin(), pts.end(), by_key);
        std::sort(reflected.begin(), reflected.end(), by_key);
        bool ok = true;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (int c = 0; c < 3; ++c) {
                const double e = std::abs(pts[i][c] - reflected[i][c]);
                worst = std::max(worst, e);
                ok = ok && e <= kMirrorTolMm;
            }
        if (!ok)
            ++failures;
    }
    return {failures == 0, fmt::format("1000 designs, {} asymmetric, max deviation {:.3e} mm", failures, worst)};
}

Outcome check_golden_deck()
{
    const auto deck = golden::midpoint_starbox_deck();
    const auto again = golden::midpoint_starbox_deck();
    const auto starter = golden::read_file(golden::kDir / "StarBox_d1_mid_0000.rad");
    const auto engine = golden::read_file(golden::kDir / "StarBox_d1_mid_0001.rad");
    const bool stable = deck.starter_text == starter && deck.engine_text == engine && again.checksum == deck.checksum;
    std::vector<std::string> needles{"/INTER/TYPE24", "rho_kg_m3=7830", "sigma_y_MPa=360", "C=40", "p=5", deck_number(7830.0 * 1e-9)};
    for (const char* pt : {"(0, 366)", "(0.025, 424)", "(0.049, 476)", "(0.072, 507)", "(0.095, 529)",
                           "(0.118, 546)", "(0.14, 559)", "(0.182, 584)"})
        needles.emplace_back(pt);
    std::string missing;
    for (const auto& n : needles)
        if (deck.starter_text.find(n) == std::string::npos)
            missing += " " + n;
    return {stable && missing.empty(),
            fmt::format("bytes match golden={}, missing fields:{}", stable, missing.empty() ? " none" : missing)};
}

Outcome check_end_to_end()
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(50);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    int evaluations = 0, bad = 0;
    double worst_balance = -INFINITY;
    double min_lu = INFINITY;
    std::vector<ObjectiveKind> all(std::begin(kAllObjectives), std::end(kAllObjectives));
    for (auto id : kProblems) {
        for (int k = 0; k < 50; ++k) {
            const int d = std::uniform_int_distribution<int>(1, max_dimension(id))(rng);
            std::vector<double> x(static_cast<std::size_t>(d));
            for (auto& v : x)
                v = u(rng);
            const auto p = create_problem(id, d, all);
            EvaluateOptions opts;
            opts.work_root = scratch("e2e");
            opts.keep_work_dir = true;
            try {
                const auto r = evaluate(p, x, opts);
                ++evaluations;
                bool finite = r.raw.size() == all.size();
                for (const auto& [kind, v] : r.raw)
                    finite = finite && std::isfinite(v);
                const double lu = r.raw.at(ObjectiveKind::LoadUniformity);
                min_lu = std::min(min_lu, lu);
                const auto cfg = sim_config_for(id);
                const double ke0 = impactor_kinetic_energy_J(cfg);
                const auto th = read_time_history(r.work_dir / time_history_file_name(cfg.case_name));
                for (const auto& s : th.samples)
                    worst_balance = std::max(worst_balance, s.internal_energy_J + s.kinetic_energy_J - ke0);
                if (!finite || lu < 1.0)
                    ++bad;
                std::filesystem::remove_all(r.work_dir);
            } catch (const Error& e) {
                ++bad;
                std::cerr << "  evaluation failed: " << e.what() << '\n';
            }
        }
    }
    const double t = seconds_since(t0);
    const bool ok = evaluations == 150 && bad == 0 && worst_balance <= kEnergyTolJ && t < kEndToEndBudgetS;
    return {ok, fmt::format("{} evaluations, {} bad, min LU {:.4f}, max energy excess {:.3e} J, {:.2f} s", evaluations,
                            bad, min_lu, worst_balance, t)};
}

Outcome check_determinism()
{
    int identical = 0, runs = 0;
    for (auto id : kProblems)
        for (auto algo : {Algorithm::RandomSearch, Algorithm::OnePlusOneES}) {
            std::string bodies[2];
            for (int rep = 0; rep < 2; ++rep) {
                RunConfig c;
                c.problem = id;
                c.dim = 3;
                c.objective = default_objective(id);
                c.algorithm = algo;
                c.budget = 10;
                c.seed = 42;
                c.out_dir = scratch(fmt::format("det_{}_{}_{}", to_int(id), to_string(algo), rep));
                c.work_root = scratch("det_work");
                bodies[rep] = golden::read_file(run_optimizer(c).log_path);
            }
            ++runs;
            if (!bodies[0].empty() && bodies[0] == bodies[1])
                ++identical;
        }
    return {identical == runs, fmt::format("{}/{} run pairs bitwise identical", identical, runs)};
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"bound-tables", check_bounds},
        {"penalties", check_penalties},
        {"equivalence-matrices", check_equivalence},
        {"interpolation", check_interpolation},
        {"mass-oracle", check_mass},
        {"mirror-symmetry", check_mirror},
        {"deck-golden", check_golden_deck},
        {"mock-end-to-end", check_end_to_end},
        {"log-determinism", check_determinism},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass)
            ++failed;
        std::cout << fmt::format("{} {:<22} {}\n", o.pass ? "PASS" : "FAIL", name, o.detail) << std::flush;
    }
    std::cout << fmt::format("{}/{} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed),
                             criteria.size());
    return failed == 0 ? 0 : 1;
}
