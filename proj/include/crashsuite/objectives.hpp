#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace crashsuite {

inline constexpr double kStarBoxIntrusionLimitMm = 60.0;
inline constexpr double kBeamIntrusionLimitMm = 50.0;
/// Offset of the infeasible branch of the penalized beam mass.
inline constexpr double kBeamPenaltyOffsetKg = 4.25952;

/// Specific energy absorption in J/kg. Throws NonPositiveMass when mass <= 0.
double sea(double absorbed_energy_J, double mass_kg);

/// Star-box minimization objective: -SEA while the intrusion is within 60 mm,
/// 100 * (delta - 60) otherwise. The SEA argument is ignored when infeasible.
double penalized_sea(double sea_J_per_kg, double intrusion_mm);

/// Beam minimization objective: the mass while the intrusion is within 50 mm,
/// 4.25952 + 10 * (delta / 50 - 1) otherwise. Discontinuous at 50 mm.
double penalized_mass(double mass_kg, double intrusion_mm);

struct ForceSample {
    double time_ms;
    double force_kN;
};

/// Window over which the mean crush force is taken. The window opens at the
/// first sample whose |force| exceeds onset_fraction * peak and closes at the
/// last sample (or the last sample with time <= end_time_ms when set).
struct LoadWindow {
    double onset_fraction = 0.01;
    std::optional<double> end_time_ms;
};

struct ForceStatistics {
    double peak_kN;
    double mean_kN;
    std::size_t onset_index;
    std::size_t end_index;  // inclusive
};

/// Peak and windowed mean of |force|. Throws DegenerateSeries for an all-zero
/// series and InvalidArgument for empty or mismatched inputs.
ForceStatistics force_statistics(std::span<const double> time_ms, std::span<const double> force_kN,
                                 const LoadWindow& window = {});

/// |F_peak / F_mean| using absolute per-sample forces; >= 1 for any
/// non-degenerate series.
double load_uniformity(std::span<const ForceSample> series, const LoadWindow& window = {});

}  // namespace crashsuite
