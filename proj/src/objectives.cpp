#include "crashsuite/objectives.hpp"

#include "crashsuite/error.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace crashsuite {

double sea(double absorbed_energy_J, double mass_kg)
{
    if (!(mass_kg > 0.0))
        throw Error(ErrorKind::NonPositiveMass, "structural mass must be positive, got " + std::to_string(mass_kg));
    if (absorbed_energy_J < 0.0)
        throw Error(ErrorKind::InvalidArgument, "absorbed energy must be non-negative");
    return absorbed_energy_J / mass_kg;
}

double penalized_sea(double sea_J_per_kg, double intrusion_mm)
{
    if (intrusion_mm <= kStarBoxIntrusionLimitMm)
        return -sea_J_per_kg;
    return 100.0 * (intrusion_mm - kStarBoxIntrusionLimitMm);
}

double penalized_mass(double mass_kg, double intrusion_mm)
{
    if (intrusion_mm <= kBeamIntrusionLimitMm)
        return mass_kg;
    return kBeamPenaltyOffsetKg + 10.0 * (intrusion_mm / kBeamIntrusionLimitMm - 1.0);
}

ForceStatistics force_statistics(std::span<const double> time_ms, std::span<const double> force_kN,
                                 const LoadWindow& window)
{
    if (force_kN.empty())
        throw Error(ErrorKind::InvalidArgument, "force series is empty");
    if (time_ms.size() != force_kN.size())
        throw Error(ErrorKind::InvalidArgument, "time and force series differ in length");

    double peak = 0.0;
    for (double f : force_kN)
        peak = std::max(peak, std::abs(f));
    if (peak == 0.0)
        throw Error(ErrorKind::DegenerateSeries, "force series is identically zero (no contact detected)");

    const double threshold = window.onset_fraction * peak;
    std::size_t onset = 0;
    while (std::abs(force_kN[onset]) <= threshold)
        ++onset;

    std::size_t end = force_kN.size() - 1;
    if (window.end_time_ms) {
        while (end > onset && time_ms[end] > *window.end_time_ms)
            --end;
    }

    double sum = 0.0;
    for (std::size_t i = onset; i <= end; ++i)
        sum += std::abs(force_kN[i]);
    const double mean = sum / static_cast<double>(end - onset + 1);

    // The windowed peak can only be lower than the global one when end_time
    // truncates the series; report the global peak either way.
    return {peak, mean, onset, end};
}

double load_uniformity(std::span<const ForceSample> series, const LoadWindow& window)
{
    std::vector<double> t, f;
    t.reserve(series.size());
    f.reserve(series.size());
    for (const auto& s : series) {
        t.push_back(s.time_ms);
        f.push_back(s.force_kN);
    }
    const auto stats = force_statistics(t, f, window);
    return std::abs(stats.peak_kN / stats.mean_kN);
}

}  // namespace crashsuite
