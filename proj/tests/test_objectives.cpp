#include "crashsuite/error.hpp"
#include "crashsuite/objectives.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace crashsuite;

TEST_CASE("sea divides energy by mass")
{
    CHECK(sea(1000.0, 2.0) == 500.0);
    CHECK(sea(0.0, 1.0) == 0.0);
    CHECK(sea(710.0, 0.710) == doctest::Approx(1000.0).epsilon(1e-14));
    CHECK_THROWS_AS(sea(1.0, 0.0), Error);
    try {
        sea(1.0, -1.0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonPositiveMass);
    }
}

TEST_CASE("penalized sea branches")
{
    CHECK(penalized_sea(500.0, 40.0) == -500.0);
    CHECK(penalized_sea(500.0, 60.0) == -500.0);
    CHECK(penalized_sea(500.0, 70.0) == doctest::Approx(1000.0).epsilon(1e-15));
    CHECK(penalized_sea(1e9, 70.0) == penalized_sea(-3.0, 70.0));

    // strictly increasing on the infeasible branch
    double prev = penalized_sea(0.0, 60.0 + 1e-9);
    for (double d = 61.0; d < 200.0; d += 1.0) {
        const double v = penalized_sea(0.0, d);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("penalized mass branches")
{
    CHECK(penalized_mass(3.2, 40.0) == 3.2);
    CHECK(penalized_mass(2.0, 50.0) == 2.0);
    CHECK(std::abs(penalized_mass(1.0, 100.0) - 14.25952) < 1e-12);
    CHECK(std::abs(penalized_mass(1.0, 50.0 + 1e-13) - 4.25952) < 1e-9);
    for (double d = 51.0; d < 150.0; d += 7.0)
        CHECK(penalized_mass(9.0, d) - 4.25952 == doctest::Approx(10.0 * (d / 50.0 - 1.0)).epsilon(1e-12));
}

TEST_CASE("load uniformity examples")
{
    const std::vector<ForceSample> constant{{0, 10}, {1, 10}, {2, 10}};
    CHECK(load_uniformity(constant) == 1.0);
    const std::vector<ForceSample> ramp{{0, 5}, {1, 10}, {2, 15}};
    CHECK(load_uniformity(ramp) == doctest::Approx(1.5).epsilon(1e-15));
    const std::vector<ForceSample> negative{{0, -10}, {1, -20}};
    CHECK(load_uniformity(negative) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("load uniformity degenerate and invalid input")
{
    const std::vector<ForceSample> zeros{{0, 0}, {1, 0}};
    CHECK_THROWS_AS(load_uniformity(zeros), Error);
    try {
        load_uniformity(zeros);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateSeries);
        CHECK(e.category() == ErrorCategory::Parse);
    }
    CHECK_THROWS_AS(load_uniformity(std::vector<ForceSample>{}), Error);
}

TEST_CASE("load uniformity is scale invariant and at least one")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ForceSample> s;
        for (int i = 0; i < 30; ++i)
            s.push_back({0.1 * i, u(rng)});
        const double lu = load_uniformity(s);
        CHECK(lu >= 1.0);
        auto scaled = s;
        for (auto& f : scaled)
            f.force_kN *= 3.5;
        CHECK(load_uniformity(scaled) == doctest::Approx(lu).epsilon(1e-12));
    }
}

TEST_CASE("force window opens at one percent of peak")
{
    const std::vector<double> t{0, 1, 2, 3, 4, 5};
    const std::vector<double> f{0, 0, 10, 20, 10, 0};
    const auto s = force_statistics(t, f);
    CHECK(s.peak_kN == 20.0);
    CHECK(s.onset_index == 2);
    CHECK(s.end_index == 5);
    CHECK(s.mean_kN == doctest::Approx(40.0 / 4.0));

    LoadWindow w;
    w.end_time_ms = 4.0;
    CHECK(force_statistics(t, f, w).mean_kN == doctest::Approx(40.0 / 3.0));
    CHECK_THROWS_AS(force_statistics(t, std::vector<double>{1, 2}), Error);
}
