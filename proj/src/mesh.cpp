#include "crashsuite/mesh.hpp"

#include "crashsuite/error.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace crashsuite {

namespace {

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

double orient(const Point2& a, const Point2& b, const Point2& c)
{
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool segments_cross(const Point2& a, const Point2& b, const Point2& c, const Point2& d)
{
    const double o1 = orient(a, b, c);
    const double o2 = orient(a, b, d);
    const double o3 = orient(c, d, a);
    const double o4 = orient(c, d, b);
    return ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
}

void validate_section(const CrossSection& cs)
{
    const auto& v = cs.vertices;
    const std::size_t n = v.size();
    if (n < 3)
        throw Error(ErrorKind::DegenerateGeometry, "cross-section needs at least 3 vertices");
    if (!(cs.extrusion_length_mm > 0.0))
        throw Error(ErrorKind::DegenerateGeometry, "extrusion length must be positive");
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % n];
        if (std::hypot(b.x - a.x, b.y - a.y) <= 1e-9)
            throw Error(ErrorKind::DegenerateGeometry, "cross-section edge " + std::to_string(i) + " has zero length");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1)
                continue;  // adjacent through the closing edge
            if (segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
                throw Error(ErrorKind::DegenerateGeometry,
                            "cross-section edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
        }
    }
}

void finish(ShellMesh& mesh)
{
    mesh.barycenters.clear();
    mesh.barycenters.reserve(mesh.elements.size());
    for (const auto& e : mesh.elements) {
        Vec3 c{0.0, 0.0, 0.0};
        for (int id : e.nodes) {
            const auto& p = mesh.node(id);
            for (int k = 0; k < 3; ++k)
                c[static_cast<std::size_t>(k)] += 0.25 * p[static_cast<std::size_t>(k)];
        }
        mesh.barycenters.push_back(c);
    }
}

int add_node(ShellMesh& mesh, const Vec3& p)
{
    const int id = static_cast<int>(mesh.nodes.size()) + 1;
    mesh.nodes.push_back({id, p});
    return id;
}

void add_element(ShellMesh& mesh, std::array<int, 4> nodes, int part)
{
    const int id = static_cast<int>(mesh.elements.size()) + 1;
    mesh.elements.push_back({id, nodes, part});
}

}  // namespace

double quad_area(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d)
{
    return 0.5 * norm(cross(sub(c, a), sub(d, b)));
}

MassReport compute_mass(const ShellMesh& mesh, double density_kg_m3)
{
    if (density_kg_m3 < 0.0)
        throw Error(ErrorKind::InvalidArgument, "density must be non-negative");
    constexpr double kMm3ToM3 = 1e-9;
    MassReport report;
    for (const auto& [part, t] : mesh.part_thickness_mm)
        report.per_part_kg[part] = 0.0;
    for (const auto& e : mesh.elements) {
        const auto it = mesh.part_thickness_mm.find(e.part);
        if (it == mesh.part_thickness_mm.end())
            throw Error(ErrorKind::InconsistentPartTable, "element " + std::to_string(e.id) + " references part " +
                                                              std::to_string(e.part) + " without thickness");
        const double area = quad_area(mesh.node(e.nodes[0]), mesh.node(e.nodes[1]), mesh.node(e.nodes[2]),
                                      mesh.node(e.nodes[3]));
        report.per_part_kg[e.part] += area * it->second * density_kg_m3 * kMm3ToM3;
    }
    for (const auto& [part, kg] : report.per_part_kg)
        report.total_kg += kg;
    return report;
}

ShellMesh mesh_starbox(const CrossSection& section, const ThicknessProfile& profile, const StarBoxMeshOptions& options)
{
    validate_section(section);
    const auto& v = section.vertices;
    const int edges = static_cast<int>(v.size());
    if (options.rows < 1 || options.perimeter_segments < edges)
        throw Error(ErrorKind::InvalidArgument, "star box mesh needs at least one row and one segment per edge");

    // Perimeter stations, counter-clockwise, remainder segments go to the first edges.
    std::vector<Point2> ring;
    const int base = options.perimeter_segments / edges;
    const int extra = options.perimeter_segments % edges;
    for (int i = 0; i < edges; ++i) {
        const auto& a = v[static_cast<std::size_t>(i)];
        const auto& b = v[static_cast<std::size_t>((i + 1) % edges)];
        const int segs = base + (i < extra ? 1 : 0);
        for (int j = 0; j < segs; ++j) {
            const double s = static_cast<double>(j) / segs;
            ring.push_back({a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)});
        }
    }

    const int perimeter = static_cast<int>(ring.size());
    const double length = section.extrusion_length_mm;
    ShellMesh mesh;
    mesh.nodes.reserve(static_cast<std::size_t>(perimeter * (options.rows + 1)));
    for (int level = 0; level <= options.rows; ++level) {
        const double z = level == options.rows ? length : length * level / options.rows;
        for (const auto& p : ring)
            add_node(mesh, {p.x, p.y, z});
    }

    const auto thickness = row_thicknesses(profile, options.rows);
    auto id = [perimeter](int level, int p) { return level * perimeter + (p % perimeter) + 1; };
    for (int row = 0; row < options.rows; ++row) {
        mesh.part_thickness_mm[row + 1] = thickness[static_cast<std::size_t>(row)];
        for (int p = 0; p < perimeter; ++p)
            add_element(mesh, {id(row, p), id(row, p + 1), id(row + 1, p + 1), id(row + 1, p)}, row + 1);
    }
    finish(mesh);
    return mesh;
}

int beam_rib_part(int rib, int row) { return 1 + rib * kBeamRibRows + row; }

ShellMesh mesh_beam(const RibLayout& layout, const BeamDims& dims)
{
    const int nx = dims.length_segments;
    const int ny = dims.bay_segments * (kBeamRibCount + 1);
    const int nz = kBeamRibRows;
    if (nx < 1 || dims.bay_segments < 1)
        throw Error(ErrorKind::InvalidArgument, "beam mesh needs positive segment counts");

    auto x_at = [&](int i) { return i == nx ? dims.length_mm : dims.length_mm * i / nx; };
    auto y_at = [&](int j) { return j == ny ? dims.depth_mm : dims.depth_mm * j / ny; };
    auto z_at = [&](int l) { return l == nz ? dims.height_mm : dims.height_mm * l / nz; };
    auto rib_j = [&](int rib) { return dims.bay_segments * (rib + 1); };

    // ids[level][j][i], 0 where no node exists.
    std::vector<std::vector<std::vector<int>>> ids(
        static_cast<std::size_t>(nz + 1),
        std::vector<std::vector<int>>(static_cast<std::size_t>(ny + 1), std::vector<int>(static_cast<std::size_t>(nx + 1), 0)));
    ShellMesh mesh;
    for (int l = 0; l <= nz; ++l) {
        const bool flange = (l == 0 || l == nz);
        for (int j = 0; j <= ny; ++j) {
            const bool on_rib = j % dims.bay_segments == 0 && j > 0 && j < ny;
            if (!flange && !on_rib)
                continue;
            for (int i = 0; i <= nx; ++i)
                ids[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                    add_node(mesh, {x_at(i), y_at(j), z_at(l)});
        }
    }
    auto id = [&](int l, int j, int i) {
        return ids[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    };

    for (int rib = 0; rib < kBeamRibCount; ++rib) {
        const auto thickness = row_thicknesses(layout.ribs[static_cast<std::size_t>(rib)], kBeamRibRows);
        const int j = rib_j(rib);
        for (int row = 0; row < nz; ++row) {
            const int part = beam_rib_part(rib, row);
            mesh.part_thickness_mm[part] = thickness[static_cast<std::size_t>(row)];
            for (int i = 0; i < nx; ++i)
                add_element(mesh, {id(row, j, i), id(row, j, i + 1), id(row + 1, j, i + 1), id(row + 1, j, i)}, part);
        }
    }

    mesh.part_thickness_mm[kBeamBottomFlangePart] = dims.flange_thickness_mm;
    mesh.part_thickness_mm[kBeamTopFlangePart] = dims.flange_thickness_mm;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            add_element(mesh, {id(0, j, i), id(0, j + 1, i), id(0, j + 1, i + 1), id(0, j, i + 1)}, kBeamBottomFlangePart);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            add_element(mesh, {id(nz, j, i), id(nz, j, i + 1), id(nz, j + 1, i + 1), id(nz, j + 1, i)}, kBeamTopFlangePart);

    finish(mesh);
    return mesh;
}

double trigger_offset(const TriggerTriplet& trigger, double station_mm, double z_mm, double ramp_mm)
{
    if (trigger.h_mm <= 0.0)
        return 0.0;
    const double half = 0.5 * trigger.h_mm;
    const double dz = std::abs(z_mm - (station_mm + trigger.z_mm));
    if (dz <= half)
        return trigger.epsilon_mm;
    if (dz < half + ramp_mm)
        return trigger.epsilon_mm * (1.0 - (dz - half) / ramp_mm);
    return 0.0;
}

namespace {

void check_band_overlap(const TriggerSet& set, int first, const TubeDims& dims, double ramp)
{
    std::vector<std::pair<double, int>> starts;
    std::vector<std::pair<double, double>> zones;
    for (int k = 0; k < 5; ++k) {
        const auto& t = set.triggers[static_cast<std::size_t>(first + k)];
        if (t.h_mm <= 0.0)
            continue;
        const double c = dims.stations_mm[static_cast<std::size_t>(k)] + t.z_mm;
        const double lo = c - 0.5 * t.h_mm - ramp;
        const double hi = c + 0.5 * t.h_mm + ramp;
        if (lo < 0.0 || hi > dims.height_mm)
            throw Error(ErrorKind::BandOverlap, fmt::format("trigger {} spans [{:.3f}, {:.3f}] mm outside the tube",
                                                            first + k + 1, lo, hi));
        zones.emplace_back(lo, hi);
        starts.emplace_back(lo, first + k + 1);
    }
    std::vector<std::size_t> order(zones.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return zones[a].first < zones[b].first; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        const auto& prev = zones[order[i - 1]];
        const auto& cur = zones[order[i]];
        if (cur.first < prev.second)
            throw Error(ErrorKind::BandOverlap,
                        fmt::format("triggers {} and {} overlap ([{:.3f}, {:.3f}] vs [{:.3f}, {:.3f}] mm)",
                                    starts[order[i - 1]].second, starts[order[i]].second, prev.first, prev.second,
                                    cur.first, cur.second));
    }
}

}  // namespace

ShellMesh mesh_crashtube(const TriggerSet& triggers, const TubeDims& dims)
{
    const int na = static_cast<int>(std::lround(dims.width_mm / dims.element_size_mm));
    const int nb = static_cast<int>(std::lround(dims.depth_mm / dims.element_size_mm));
    const int rows = static_cast<int>(std::lround(dims.height_mm / dims.element_size_mm));
    if (na < 2 || nb < 2 || rows < 1)
        throw Error(ErrorKind::InvalidArgument, "tube dimensions too small for the element size");
    const double ramp = dims.height_mm / rows;
    check_band_overlap(triggers, 0, dims, ramp);
    check_band_overlap(triggers, 5, dims, ramp);

    const double hx = 0.5 * dims.width_mm;
    const double hy = 0.5 * dims.depth_mm;

    // Ring stations counter-clockwise from corner (+hx, +hy). face: 0 = A (y=const), 1 = B (x=const).
    struct Station {
        Point2 p;
        int face;
        bool interior;
    };
    std::vector<Station> ring;
    auto edge = [&](Point2 a, Point2 b, int segs, int face) {
        for (int j = 0; j < segs; ++j) {
            const double s = static_cast<double>(j) / segs;
            ring.push_back({{a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)}, face, j > 0});
        }
    };
    edge({hx, hy}, {-hx, hy}, na, 0);
    edge({-hx, hy}, {-hx, -hy}, nb, 1);
    edge({-hx, -hy}, {hx, -hy}, na, 0);
    edge({hx, -hy}, {hx, hy}, nb, 1);

    const int perimeter = static_cast<int>(ring.size());
    ShellMesh mesh;
    mesh.nodes.reserve(static_cast<std::size_t>(perimeter * (rows + 1)));
    for (int level = 0; level <= rows; ++level) {
        const double z = level == rows ? dims.height_mm : dims.height_mm * level / rows;
        double offset_a = 0.0;
        double offset_b = 0.0;
        for (int k = 0; k < 5; ++k) {
            const double station = dims.stations_mm[static_cast<std::size_t>(k)];
            offset_a += trigger_offset(triggers.triggers[static_cast<std::size_t>(k)], station, z, ramp);
            offset_b += trigger_offset(triggers.triggers[static_cast<std::size_t>(k + 5)], station, z, ramp);
        }
        for (const auto& s : ring) {
            Vec3 p{s.p.x, s.p.y, z};
            if (s.interior) {
                // positive epsilon points away from the tube axis
                if (s.face == 0)
                    p[1] += s.p.y < 0.0 ? -offset_a : offset_a;
                else
                    p[0] += s.p.x < 0.0 ? -offset_b : offset_b;
            }
            add_node(mesh, p);
        }
    }

    auto id = [perimeter](int level, int p) { return level * perimeter + (p % perimeter) + 1; };
    mesh.part_thickness_mm[1] = dims.wall_thickness_mm;
    for (int row = 0; row < rows; ++row)
        for (int p = 0; p < perimeter; ++p)
            add_element(mesh, {id(row, p), id(row, p + 1), id(row + 1, p + 1), id(row + 1, p)}, 1);
    finish(mesh);
    return mesh;
}

void write_mesh_listing(const ShellMesh& mesh, std::ostream& out)
{
    fmt::print(out, "NODES {}\n", mesh.nodes.size());
    for (const auto& n : mesh.nodes)
        fmt::print(out, "{} {:.17g} {:.17g} {:.17g}\n", n.id, n.pos[0], n.pos[1], n.pos[2]);
    fmt::print(out, "ELEMENTS {}\n", mesh.elements.size());
    for (const auto& e : mesh.elements)
        fmt::print(out, "{} {} {} {} {} {}\n", e.id, e.nodes[0], e.nodes[1], e.nodes[2], e.nodes[3], e.part);
    fmt::print(out, "PARTS {}\n", mesh.part_thickness_mm.size());
    for (const auto& [part, t] : mesh.part_thickness_mm)
        fmt::print(out, "{} {:.17g}\n", part, t);
}

}  // namespace crashsuite
