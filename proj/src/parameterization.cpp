#include "crashsuite/parameterization.hpp"

#include "crashsuite/error.hpp"

#include <algorithm>
#include <string>

namespace crashsuite {

namespace {

void require_dimension(int d, int max_d, std::span<const double> x, const char* what)
{
    if (d < 1 || d > max_d)
        throw Error(ErrorKind::DimensionOutOfRange,
                    std::string(what) + " supports 1 <= d <= " + std::to_string(max_d) + ", got " + std::to_string(d));
    if (x.size() != static_cast<std::size_t>(d))
        throw Error(ErrorKind::InvalidArgument, std::string(what) + ": expected " + std::to_string(d) +
                                                    " design variables, got " + std::to_string(x.size()));
}

CrossSection rectangle(double height, double width)
{
    const double hx = 0.5 * width;
    const double hy = 0.5 * height;
    return {{{hx, hy}, {-hx, hy}, {-hx, -hy}, {hx, -hy}}, kStarBoxHeightMm};
}

CrossSection star(double height, double width, double inset_y, double inset_x)
{
    const double hx = 0.5 * width;
    const double hy = 0.5 * height;
    return {{{hx, hy},
             {0.0, hy - inset_y},
             {-hx, hy},
             {-hx + inset_x, 0.0},
             {-hx, -hy},
             {0.0, -hy + inset_y},
             {hx, -hy},
             {hx - inset_x, 0.0}},
            kStarBoxHeightMm};
}

}  // namespace

ThicknessProfile ThicknessProfile::constant(double thickness_mm, double extent_mm)
{
    return {{{0.0, thickness_mm}}, extent_mm};
}

ThicknessProfile ThicknessProfile::uniform(std::span<const double> thicknesses_mm, double extent_mm)
{
    if (thicknesses_mm.empty())
        throw Error(ErrorKind::InvalidArgument, "thickness profile needs at least one control value");
    if (thicknesses_mm.size() == 1)
        return constant(thicknesses_mm.front(), extent_mm);

    ThicknessProfile profile;
    profile.extent_mm = extent_mm;
    const auto segments = static_cast<double>(thicknesses_mm.size() - 1);
    for (std::size_t i = 0; i < thicknesses_mm.size(); ++i) {
        const double z = (i + 1 == thicknesses_mm.size()) ? extent_mm : extent_mm * static_cast<double>(i) / segments;
        profile.control_points.push_back({z, thicknesses_mm[i]});
    }
    return profile;
}

double thickness_at(const ThicknessProfile& profile, double z_mm)
{
    const auto& pts = profile.control_points;
    if (pts.empty())
        throw Error(ErrorKind::InvalidArgument, "empty thickness profile");
    if (!(z_mm >= 0.0 && z_mm <= profile.extent_mm))
        throw Error(ErrorKind::ZOutOfExtent,
                    "z=" + std::to_string(z_mm) + " outside [0, " + std::to_string(profile.extent_mm) + "]");
    if (pts.size() == 1)
        return pts.front().thickness_mm;

    // First control point with z >= query.
    auto hi = std::lower_bound(pts.begin(), pts.end(), z_mm,
                               [](const ControlPoint& p, double z) { return p.z_mm < z; });
    if (hi == pts.end())
        return pts.back().thickness_mm;
    if (hi->z_mm == z_mm || hi == pts.begin())
        return hi->thickness_mm;
    const auto lo = std::prev(hi);
    const double w = (z_mm - lo->z_mm) / (hi->z_mm - lo->z_mm);
    return (1.0 - w) * lo->thickness_mm + w * hi->thickness_mm;
}

std::vector<double> row_thicknesses(const ThicknessProfile& profile, int rows)
{
    if (rows < 1)
        throw Error(ErrorKind::InvalidArgument, "row count must be positive");
    std::vector<double> out(static_cast<std::size_t>(rows));
    if (profile.control_points.size() == out.size()) {
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = profile.control_points[i].thickness_mm;
        return out;
    }
    const double row_height = profile.extent_mm / rows;
    for (int i = 0; i < rows; ++i)
        out[static_cast<std::size_t>(i)] = thickness_at(profile, (i + 0.5) * row_height);
    return out;
}

StarBoxGeometry starbox_geometry(int d, std::span<const double> x)
{
    require_dimension(d, kStarBoxMaxDim, x, "star box");
    const auto fixed = ThicknessProfile::constant(kStarBoxDefaultThicknessMm, kStarBoxHeightMm);
    switch (d) {
    case 1: return {rectangle(x[0], x[0]), fixed};
    case 2: return {rectangle(x[0], x[1]), fixed};
    case 3: return {rectangle(x[0], x[1]), ThicknessProfile::constant(x[2], kStarBoxHeightMm)};
    case 4: return {star(x[0], x[1], x[2], x[3]), fixed};
    default: return {star(x[0], x[1], x[2], x[3]), ThicknessProfile::uniform(x.subspan(4), kStarBoxHeightMm)};
    }
}

int beam_rib_for_variable(int var)
{
    static constexpr std::array<int, kBeamRibCount> kBaseRib{2, 3, 1, 4, 0};
    if (var < 0)
        throw Error(ErrorKind::InvalidArgument, "negative variable index");
    return kBaseRib[static_cast<std::size_t>(var < kBeamRibCount ? var : (var - kBeamRibCount) % kBeamRibCount)];
}

RibLayout beam_rib_layout(int d, std::span<const double> x)
{
    require_dimension(d, kBeamMaxDim, x, "three-point bending beam");

    std::array<std::vector<double>, kBeamRibCount> values;
    const double fixed = kBeamFixedRibThicknessMm;
    switch (d) {
    case 1: values = {{{x[0]}, {x[0]}, {x[0]}, {x[0]}, {x[0]}}}; break;
    case 2: values = {{{x[1]}, {fixed}, {fixed}, {fixed}, {x[0]}}}; break;
    case 3: values = {{{x[2]}, {fixed}, {x[0]}, {fixed}, {x[1]}}}; break;
    case 4: values = {{{x[3]}, {x[1]}, {fixed}, {x[0]}, {x[2]}}}; break;
    default:
        for (int v = 0; v < d; ++v)
            values[static_cast<std::size_t>(beam_rib_for_variable(v))].push_back(x[static_cast<std::size_t>(v)]);
        break;
    }

    RibLayout layout;
    for (std::size_t r = 0; r < values.size(); ++r)
        layout.ribs[r] = ThicknessProfile::uniform(values[r], kBeamRibHeightMm);
    return layout;
}

TriggerComponent tube_variable_component(int var)
{
    switch (var % 3) {
    case 0: return TriggerComponent::Z;
    case 1: return TriggerComponent::Epsilon;
    default: return TriggerComponent::Height;
    }
}

namespace {

void assign_slot(TriggerTriplet& t, int slot, double value)
{
    switch (tube_variable_component(slot)) {
    case TriggerComponent::Z: t.z_mm = value; break;
    case TriggerComponent::Epsilon: t.epsilon_mm = value; break;
    case TriggerComponent::Height: t.h_mm = value; break;
    }
}

}  // namespace

TriggerSet trigger_mapping(int d, std::span<const double> x)
{
    require_dimension(d, kTubeMaxDim, x, "long crash tube");
    constexpr int kSlotsPerFace = 15;

    TriggerSet set;
    auto& tr = set.triggers;
    const int face_a_vars = std::min(d, kSlotsPerFace);
    for (int s = 0; s < face_a_vars; ++s)
        assign_slot(tr[static_cast<std::size_t>(s / 3)], s, x[static_cast<std::size_t>(s)]);

    if (d <= kSlotsPerFace) {
        // Face B mirrors Face A.
        std::copy_n(tr.begin(), 5, tr.begin() + 5);
        // The d=2 column of the equivalence matrix fixes h1 to 0 while h6 keeps
        // its default of 8.
        if (d == 2)
            tr[0].h_mm = 0.0;
    } else {
        for (int s = 0; s < d - kSlotsPerFace; ++s)
            assign_slot(tr[static_cast<std::size_t>(5 + s / 3)], s, x[static_cast<std::size_t>(kSlotsPerFace + s)]);
    }
    return set;
}

}  // namespace crashsuite
