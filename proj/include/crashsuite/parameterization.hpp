#pragma once

#include <array>
#include <span>
#include <vector>

namespace crashsuite {

struct Point2 {
    double x;
    double y;
    bool operator==(const Point2&) const = default;
};

/// Closed polygon (last vertex connects back to the first), counter-clockwise.
struct CrossSection {
    std::vector<Point2> vertices;
    double extrusion_length_mm = 120.0;
};

struct ControlPoint {
    double z_mm;
    double thickness_mm;
    bool operator==(const ControlPoint&) const = default;
};

/// Piecewise-linear wall thickness along one axis of length `extent_mm`.
/// With one control point the profile is constant; otherwise the first point
/// sits at z=0 and the last at z=extent.
struct ThicknessProfile {
    std::vector<ControlPoint> control_points;
    double extent_mm = 120.0;

    static ThicknessProfile constant(double thickness_mm, double extent_mm);
    /// Control values placed at uniformly spaced z over [0, extent].
    static ThicknessProfile uniform(std::span<const double> thicknesses_mm, double extent_mm);

    bool operator==(const ThicknessProfile&) const = default;
};

/// Exact at control points, linear in between. Throws ZOutOfExtent outside [0, extent].
double thickness_at(const ThicknessProfile& profile, double z_mm);

/// Thickness of each of `rows` equal element rows spanning the profile extent.
/// A profile with exactly `rows` control points is saturated: row i takes the
/// i-th control value directly. Otherwise the profile is sampled at each row
/// barycenter.
std::vector<double> row_thicknesses(const ThicknessProfile& profile, int rows);

// ---------------------------------------------------------------------------
// Star-shaped crash box (problem 1)

inline constexpr int kStarBoxMaxDim = 34;
inline constexpr int kStarBoxRows = 30;
inline constexpr double kStarBoxHeightMm = 120.0;
inline constexpr double kStarBoxDefaultThicknessMm = 2.1;

struct StarBoxGeometry {
    CrossSection section;
    ThicknessProfile profile;
};

/// d=1 square, d=2 rectangle, d=3 rectangle + uniform thickness, d=4 eight-point
/// star, d=5 star + uniform thickness, d>=6 star + (d-4) thickness control points.
/// x1 is the vertical (y) extent, x2 the horizontal (x) extent, x3 the inset of
/// the top/bottom edge midpoints and x4 the inset of the left/right midpoints.
StarBoxGeometry starbox_geometry(int d, std::span<const double> x_phys);

// ---------------------------------------------------------------------------
// Three-point bending beam (problem 2)

inline constexpr int kBeamMaxDim = 40;
inline constexpr int kBeamRibCount = 5;
inline constexpr int kBeamRibRows = 8;
inline constexpr double kBeamRibHeightMm = 120.0;
inline constexpr double kBeamFixedRibThicknessMm = 1.7;

struct RibLayout {
    std::array<ThicknessProfile, kBeamRibCount> ribs;  // left to right
};

/// Rib position (0 = leftmost) controlled by design variable index `var` (0-based)
/// in the five-variable layout. Variables beyond the fifth cycle through these.
int beam_rib_for_variable(int var);

RibLayout beam_rib_layout(int d, std::span<const double> x_phys);

// ---------------------------------------------------------------------------
// Long crash tube (problem 3)

inline constexpr int kTubeMaxDim = 30;
inline constexpr int kTubeTriggerCount = 10;
inline constexpr double kTriggerDefaultHeightMm = 8.0;

struct TriggerTriplet {
    double z_mm = 0.0;        // axial offset of the band centroid from its station
    double epsilon_mm = 0.0;  // lateral protrusion, positive outward
    double h_mm = kTriggerDefaultHeightMm;  // band height, 0 = no trigger
    bool operator==(const TriggerTriplet&) const = default;
};

/// Triggers 1-5 (indices 0-4) sit on Face A, 6-10 (indices 5-9) on Face B.
struct TriggerSet {
    std::array<TriggerTriplet, kTubeTriggerCount> triggers;
    bool operator==(const TriggerSet&) const = default;
};

/// Which component of a triplet a tube design variable controls.
enum class TriggerComponent { Z, Epsilon, Height };
TriggerComponent tube_variable_component(int var);

/// Reproduces the trigger equivalence matrices column for dimension d.
TriggerSet trigger_mapping(int d, std::span<const double> x_phys);

}  // namespace crashsuite
