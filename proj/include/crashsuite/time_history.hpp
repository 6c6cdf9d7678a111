#pragma once

#include "crashsuite/mesh.hpp"
#include "crashsuite/objectives.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crashsuite {

struct TimeHistorySample {
    double time_ms;
    double contact_force_kN;
    double impactor_disp_mm;
    double internal_energy_J;
    double kinetic_energy_J;
    bool operator==(const TimeHistorySample&) const = default;
};

/// At least two samples, time strictly increasing from a non-negative start.
struct TimeHistory {
    std::vector<TimeHistorySample> samples;
    bool operator==(const TimeHistory&) const = default;
};

/// Maps the five required channels onto CSV header names. The defaults are the
/// names written by the mock solver; external exports are adapted by loading
/// a mapping file of `channel = header name` lines.
struct ColumnMapping {
    std::string time = "time";
    std::string contact_force = "contact_force";
    std::string impactor_disp = "impactor_disp";
    std::string internal_energy = "internal_energy";
    std::string kinetic_energy = "kinetic_energy";

    static ColumnMapping from_file(const std::filesystem::path& path);
    static ColumnMapping parse(std::string_view text);
};

/// Comma-separated, one header row, '#' comment lines and blank lines ignored.
/// Extra columns are ignored. Errors (MissingColumn, MalformedNumber,
/// NonMonotoneTime, DegenerateSeries) name the offending 1-based line.
TimeHistory parse_time_history(std::string_view csv, const ColumnMapping& columns = {});

TimeHistory read_time_history(const std::filesystem::path& path, const ColumnMapping& columns = {});

/// Serializes with the default header and shortest round-trip float formatting.
std::string write_time_history(const TimeHistory& th);

struct SimulationRecord {
    TimeHistory th;
    double delta_mm;
    double f_peak_kN;
    double f_mean_kN;
    double e_abs_J;
    double m_s_kg;
    std::size_t contact_index;  // first sample with |force| above the onset threshold
    bool within_limit;          // delta <= constraint limit, true when no limit applies
};

/// Intrusion is measured from the impactor position at first contact; E_abs is
/// the final internal energy; the mean force uses `window`.
SimulationRecord extract_scalars(const TimeHistory& th, const MassReport& mass,
                                 std::optional<double> constraint_limit_mm = std::nullopt,
                                 const LoadWindow& window = {});

}  // namespace crashsuite
