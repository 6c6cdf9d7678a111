#pragma once

#include "crashsuite/parameterization.hpp"

#include <array>
#include <map>
#include <ostream>
#include <vector>

namespace crashsuite {

using Vec3 = std::array<double, 3>;

struct MeshNode {
    int id;  // 1-based, equals position + 1
    Vec3 pos;
};

struct ShellElement {
    int id;  // 1-based
    std::array<int, 4> nodes;
    int part;
};

/// Structured quadrilateral shell mesh. Coordinates in mm.
struct ShellMesh {
    std::vector<MeshNode> nodes;
    std::vector<ShellElement> elements;
    std::map<int, double> part_thickness_mm;
    std::vector<Vec3> barycenters;  // one per element

    const Vec3& node(int id) const { return nodes[static_cast<std::size_t>(id - 1)].pos; }
};

struct MassReport {
    double total_kg = 0.0;
    std::map<int, double> per_part_kg;
};

/// Vector area of a (possibly warped) quad: half the norm of the diagonal cross product.
double quad_area(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

/// Sum of element area * thickness * density. Density in kg/m^3, result in kg.
MassReport compute_mass(const ShellMesh& mesh, double density_kg_m3);

// ---------------------------------------------------------------------------

struct StarBoxMeshOptions {
    int rows = kStarBoxRows;
    /// Perimeter segments, split evenly over the polygon edges so that node
    /// and element counts do not depend on the design.
    int perimeter_segments = 120;
};

/// Extrudes the cross-section along z; part id r+1 holds element row r.
ShellMesh mesh_starbox(const CrossSection& section, const ThicknessProfile& profile,
                       const StarBoxMeshOptions& options = {});

struct BeamDims {
    double length_mm = 800.0;  // x
    double height_mm = 120.0;  // z
    double depth_mm = 80.0;    // y
    int length_segments = 200;
    /// Depth segments between neighbouring ribs (and between a wall and the outer rib).
    int bay_segments = 3;
    double flange_thickness_mm = kBeamFixedRibThicknessMm;

    double rib_y(int rib) const { return depth_mm * (rib + 1) / (kBeamRibCount + 1); }
};

/// Part ids of the beam: ribs 1..40 (rib k, row r -> 1 + 8k + r), flanges 41 (bottom) and 42 (top).
int beam_rib_part(int rib, int row);
inline constexpr int kBeamBottomFlangePart = kBeamRibCount * kBeamRibRows + 1;
inline constexpr int kBeamTopFlangePart = kBeamBottomFlangePart + 1;

ShellMesh mesh_beam(const RibLayout& layout, const BeamDims& dims = {});

struct TubeDims {
    double width_mm = 120.0;   // x, Face A edge length
    double depth_mm = 80.0;    // y, Face B edge length
    double height_mm = 800.0;  // z
    double element_size_mm = 4.0;
    double wall_thickness_mm = 1.5;
    /// Nominal z of the five trigger stations on each face.
    std::array<double, 5> stations_mm{800.0 / 6, 2 * 800.0 / 6, 3 * 800.0 / 6, 4 * 800.0 / 6, 5 * 800.0 / 6};
};

/// Lateral offset applied at height z by a trigger: epsilon inside the band
/// |z - centre| <= h/2, a linear ramp to zero over one element row beyond it,
/// zero elsewhere. h = 0 disables the trigger.
double trigger_offset(const TriggerTriplet& trigger, double station_mm, double z_mm, double ramp_mm);

/// Rectangular tube with triggers 1-5 applied to both Face A walls (y = +-depth/2)
/// and 6-10 to both Face B walls (x = +-width/2). Throws BandOverlap when the
/// influence zones of two triggers on one face intersect or leave the tube.
ShellMesh mesh_crashtube(const TriggerSet& triggers, const TubeDims& dims = {});

/// Plain-text listing:
///   NODES <count>
///   <id> <x> <y> <z>
///   ELEMENTS <count>
///   <id> <n1> <n2> <n3> <n4> <part>
///   PARTS <count>
///   <part> <thickness>
void write_mesh_listing(const ShellMesh& mesh, std::ostream& out);

}  // namespace crashsuite
