#include "crashsuite/deck.hpp"

#include "crashsuite/error.hpp"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>

namespace crashsuite {

MaterialModel material_for(ProblemId id)
{
    if (id == ProblemId::ThreePointBending) {
        return {"aluminium",
                70.0,
                0.33,
                2700.0,
                180.0,
                std::nullopt,
                {{0.0, 180.0},
                 {0.01, 190.0},
                 {0.02, 197.0},
                 {0.05, 211.5},
                 {0.1, 225.8},
                 {0.15, 233.6},
                 {0.2, 238.5},
                 {0.4, 248.5}}};
    }
    return {"steel",
            200.0,
            0.3,
            7830.0,
            360.0,
            CowperSymonds{40.0, 5.0},
            {{0.000, 366.0},
             {0.025, 424.0},
             {0.049, 476.0},
             {0.072, 507.0},
             {0.095, 529.0},
             {0.118, 546.0},
             {0.140, 559.0},
             {0.182, 584.0}}};
}

SimConfig sim_config_for(ProblemId id)
{
    SimConfig cfg;
    cfg.problem = id;
    cfg.case_name = std::string(to_string(id));
    switch (id) {
    case ProblemId::StarBox:
        cfg.impactor_mass_kg = 250.0;
        cfg.impactor_velocity_kmh = 25.2;
        cfg.sim_time_ms = 45.0;
        cfg.dims = {120.0, 120.0, 120.0};  // width/depth vary between 60 and 120
        break;
    case ProblemId::ThreePointBending:
        cfg.impactor_mass_kg = 86.0;
        cfg.impactor_velocity_kmh = 36.0;
        cfg.impactor_radius_mm = 36.0;
        cfg.sim_time_ms = 40.0;
        cfg.dims = {120.0, 800.0, 80.0};
        break;
    case ProblemId::LongCrashTube:
        cfg.impactor_mass_kg = 300.0;
        cfg.impactor_velocity_kmh = 30.0;
        cfg.sim_time_ms = 45.0;
        cfg.dims = {800.0, 120.0, 80.0};
        break;
    }
    return cfg;
}

double impactor_kinetic_energy_J(const SimConfig& cfg)
{
    const double v = cfg.impactor_velocity_mm_per_ms();
    return 0.5 * cfg.impactor_mass_kg * v * v;
}

std::string deck_number(double value)
{
    if (value == 0.0)
        value = 0.0;  // drop the sign of negative zero
    return fmt::format("{:.14e}", value);
}

namespace {

constexpr double kMpaToGpa = 1e-3;
constexpr double kKgM3ToKgMm3 = 1e-9;

constexpr int kMaterialId = 1;
constexpr int kPlasticityFunctionId = 1;
constexpr int kSurfaceId = 1;
constexpr int kClampGroupId = 1;
constexpr int kImpactorWallId = 1;
constexpr int kShellFormulation = 24;  // Ishell flag for the selected element formulation

class Writer {
public:
    void line(std::string_view s)
    {
        out_ += s;
        out_ += '\n';
    }
    template <typename... Args>
    void linef(fmt::format_string<Args...> f, Args&&... args)
    {
        fmt::format_to(std::back_inserter(out_), f, std::forward<Args>(args)...);
        out_ += '\n';
    }
    void numbers(std::initializer_list<double> values)
    {
        bool first = true;
        for (double v : values) {
            if (!first)
                out_ += ' ';
            out_ += deck_number(v);
            first = false;
        }
        out_ += '\n';
    }
    std::string take() { return std::move(out_); }

private:
    std::string out_;
};

std::string sha256_hex(std::string_view a, std::string_view b)
{
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    const char separator = '\0';
    const bool ok = ctx && EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
                    EVP_DigestUpdate(ctx, a.data(), a.size()) == 1 && EVP_DigestUpdate(ctx, &separator, 1) == 1 &&
                    EVP_DigestUpdate(ctx, b.data(), b.size()) == 1 && EVP_DigestFinal_ex(ctx, digest, &len) == 1;
    EVP_MD_CTX_free(ctx);
    if (!ok)
        throw Error(ErrorKind::Io, "SHA-256 digest failed");
    std::string hex;
    hex.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i)
        fmt::format_to(std::back_inserter(hex), "{:02x}", digest[i]);
    return hex;
}

std::vector<int> clamped_nodes(const ShellMesh& mesh, const SimConfig& cfg)
{
    constexpr double tol = 1e-6;
    std::vector<int> ids;
    for (const auto& n : mesh.nodes) {
        bool clamp = false;
        if (cfg.problem == ProblemId::ThreePointBending)
            clamp = std::abs(n.pos[0]) < tol || std::abs(n.pos[0] - cfg.dims.width_mm) < tol;
        else
            clamp = std::abs(n.pos[2]) < tol;
        if (clamp)
            ids.push_back(n.id);
    }
    return ids;
}

void write_mesh_blocks(Writer& w, const ShellMesh& mesh, const SimConfig& cfg)
{
    w.line("#--- nodes [mm]");
    w.line("/NODE");
    for (const auto& n : mesh.nodes)
        w.linef("{} {} {} {}", n.id, deck_number(n.pos[0]), deck_number(n.pos[1]), deck_number(n.pos[2]));

    // One /SHELL block per part keeps the part table explicit.
    for (const auto& [part, t] : mesh.part_thickness_mm) {
        w.linef("/SHELL/{}", part);
        for (const auto& e : mesh.elements)
            if (e.part == part)
                w.linef("{} {} {} {} {}", e.id, e.nodes[0], e.nodes[1], e.nodes[2], e.nodes[3]);
    }

    for (const auto& [part, t] : mesh.part_thickness_mm) {
        w.linef("/PART/{}", part);
        w.linef("{}_part_{}", cfg.case_name, part);
        w.line("#  prop_ID  mat_ID");
        w.linef("{} {}", part, kMaterialId);
    }
    for (const auto& [part, t] : mesh.part_thickness_mm) {
        w.linef("/PROP/SHELL/{}", part);
        w.linef("shell_t{}", part);
        w.linef("# formulation: {}", cfg.element_formulation);
        w.line("#  Ishell  Ismstr  Ish3n  Idril");
        w.linef("{} 0 0 0", kShellFormulation);
        w.line("#  hm  hf  hr  dm  dn");
        w.numbers({0.0, 0.0, 0.0, 0.0, 0.0});
        w.line("#  N  Istrain  Thick[mm]  Ashear  Ithick  Iplas");
        w.linef("5 0 {} {} 1 1", deck_number(t), deck_number(0.0));
    }
}

}  // namespace

DeckBundle build_deck(const ShellMesh& mesh, const MaterialModel& mat, const SimConfig& cfg,
                      const std::optional<DeckTemplate>& tmpl)
{
    for (const auto& e : mesh.elements)
        if (!mesh.part_thickness_mm.contains(e.part))
            throw Error(ErrorKind::InconsistentPartTable,
                        fmt::format("element {} references part {} without thickness", e.id, e.part));
    if (mat.plasticity_curve.empty())
        throw Error(ErrorKind::InvalidArgument, "material has no plasticity curve");

    Writer mesh_writer;
    write_mesh_blocks(mesh_writer, mesh, cfg);
    const std::string mesh_text = mesh_writer.take();

    Writer w;
    const std::string run_name = cfg.case_name;
    if (tmpl) {
        std::string text = tmpl->starter;
        const std::string key = "${MESH}";
        for (auto pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos + mesh_text.size()))
            text.replace(pos, key.size(), mesh_text);
        w.line(text);
    } else {
        w.line("#RADIOSS STARTER");
        w.line("/BEGIN");
        w.line(run_name);
        w.line("      2022         0");
        w.line("                  kg                  mm                  ms");
        w.line("                  kg                  mm                  ms");
        w.linef("# units: mm, ms, kg -> force kN, stress GPa, energy J");
        w.line(mesh_text.substr(0, mesh_text.size() - 1));

        // Material
        w.linef("/MAT/PLAS_TAB/{}", kMaterialId);
        w.line(mat.name);
        w.linef("# E_GPa={} nu={} rho_kg_m3={} sigma_y_MPa={}", mat.E_GPa, mat.nu, mat.rho_kg_m3, mat.sigma_y_MPa);
        w.line("#  rho[kg/mm3]");
        w.numbers({mat.rho_kg_m3 * kKgM3ToKgMm3});
        w.line("#  E[GPa]  nu  eps_p_max  eps_t  eps_m");
        w.numbers({mat.E_GPa, mat.nu, 0.0, 0.0, 0.0});
        w.line("#  N_funct  F_smooth  C_hard  F_cut  Eps_f");
        w.linef("1 0 {} {} {}", deck_number(0.0), deck_number(0.0), deck_number(0.0));
        w.line("#  fct_ID  Fscale  Eps_dot");
        w.linef("{} {} {}", kPlasticityFunctionId, deck_number(1.0), deck_number(0.0));
        if (mat.strain_rate) {
            w.linef("# Cowper-Symonds C={} p={}", mat.strain_rate->C, mat.strain_rate->p);
            w.line("#  C  p");
            w.numbers({mat.strain_rate->C, mat.strain_rate->p});
        }
        w.linef("/FUNCT/{}", kPlasticityFunctionId);
        w.linef("{}_yield_curve", mat.name);
        w.line("#  plastic_strain  stress[GPa]");
        for (const auto& p : mat.plasticity_curve)
            w.linef("{} {}", deck_number(p.plastic_strain), deck_number(p.stress_MPa * kMpaToGpa));
        w.linef("# plasticity curve [MPa]:{}", [&] {
            std::string s;
            for (const auto& p : mat.plasticity_curve)
                s += fmt::format(" ({}, {})", p.plastic_strain, p.stress_MPa);
            return s;
        }());

        // Boundary conditions
        const auto clamp = clamped_nodes(mesh, cfg);
        w.linef("/GRNOD/NODE/{}", kClampGroupId);
        w.line(cfg.problem == ProblemId::ThreePointBending ? "clamped_ends" : "clamped_base");
        for (std::size_t i = 0; i < clamp.size(); i += 10) {
            std::string row;
            for (std::size_t k = i; k < std::min(clamp.size(), i + 10); ++k)
                row += fmt::format("{}{}", k == i ? "" : " ", clamp[k]);
            w.line(row);
        }
        w.line("/BCS/1");
        w.line("clamp");
        w.line("#  Tra  rot  skew_ID  grnod_ID");
        w.linef("111 111 0 {}", kClampGroupId);

        // Self contact on all structural parts
        w.linef("/SURF/PART/{}", kSurfaceId);
        w.line("structure");
        {
            std::string row;
            for (const auto& [part, t] : mesh.part_thickness_mm)
                row += fmt::format("{}{}", row.empty() ? "" : " ", part);
            w.line(row);
        }
        w.linef("{}/1", cfg.contact);
        w.line("self_contact");
        w.line("#  Surf_ID1  Surf_ID2  Istf  Igap");
        w.linef("{} 0 0 0", kSurfaceId);
        w.line("#  Stfac  Fric  Gapmin");
        w.numbers({cfg.contact_settings.stiffness_factor, cfg.contact_settings.friction,
                   cfg.contact_settings.gap_min_mm});

        // Rigid impactor
        const double v = cfg.impactor_velocity_mm_per_ms();
        const auto& d = cfg.dims;
        if (cfg.impactor_radius_mm) {
            const double r = *cfg.impactor_radius_mm;
            const double x = 0.5 * d.width_mm;
            const double z = d.height_mm + r + cfg.impactor_gap_mm;
            w.linef("/RWALL/CYL/{}", kImpactorWallId);
            w.line("impactor");
            w.line("#  node_ID  Slide  grnd_ID1  grnd_ID2");
            w.line("0 0 0 0");
            w.line("#  d_search  fric  Diameter[mm]  ffac  ifq");
            w.numbers({0.0, 0.0, 2.0 * r, 0.0, 0.0});
            w.line("#  XM  YM  ZM  (point on axis)");
            w.numbers({x, 0.0, z});
            w.line("#  XM1  YM1  ZM1  (second point on axis)");
            w.numbers({x, d.depth_mm, z});
        } else {
            const double z = d.height_mm + cfg.impactor_gap_mm;
            w.linef("/RWALL/PLANE/{}", kImpactorWallId);
            w.line("impactor");
            w.line("#  node_ID  Slide  grnd_ID1  grnd_ID2");
            w.line("0 0 0 0");
            w.line("#  d_search  fric  Diameter  ffac  ifq");
            w.numbers({0.0, 0.0, 0.0, 0.0, 0.0});
            w.line("#  XM  YM  ZM  (point on wall)");
            w.numbers({0.0, 0.0, z});
            w.line("#  XM1  YM1  ZM1  (point along the normal)");
            w.numbers({0.0, 0.0, z - 1.0});
        }
        w.linef("# impactor mass_kg={} v0_kmh={} KE0_J={}", cfg.impactor_mass_kg, cfg.impactor_velocity_kmh,
                impactor_kinetic_energy_J(cfg));
        w.line("#  Mass[kg]  VX0  VY0  VZ0 [mm/ms]");
        w.numbers({cfg.impactor_mass_kg, 0.0, 0.0, -v});

        // Ground
        w.linef("/RWALL/PLANE/{}", kImpactorWallId + 1);
        w.line("ground");
        w.line("0 0 0 0");
        w.numbers({0.0, 0.0, 0.0, 0.0, 0.0});
        w.numbers({0.0, 0.0, -cfg.impactor_gap_mm});
        w.numbers({0.0, 0.0, 1.0 - cfg.impactor_gap_mm});

        // Time histories: contact force, impactor displacement, energies
        w.line("/TH/RWALL/1");
        w.line("impactor");
        w.line("DEF");
        w.linef("{}", kImpactorWallId);
        w.line("/TH/PART/2");
        w.line("energies");
        w.line("IE KE");
        {
            std::string row;
            for (const auto& [part, t] : mesh.part_thickness_mm)
                row += fmt::format("{}{}", row.empty() ? "" : " ", part);
            w.line(row);
        }
        w.line("/END");
    }

    Writer e;
    e.line("#RADIOSS ENGINE");
    e.linef("/RUN/{}/1/", run_name);
    e.numbers({cfg.sim_time_ms});
    e.line("/TFILE/0");
    e.numbers({cfg.th_dt_ms});
    if (cfg.write_vtk) {
        e.line("/ANIM/DT");
        e.numbers({0.0, cfg.anim_dt_ms});
        e.line("/ANIM/VECT/DISP");
        e.line("/ANIM/ELEM/EPSP");
        e.line("/VTK");
    }
    e.line("/PRINT/-1000");
    e.line("/DT/NODA/CST/0");
    e.numbers({0.9, 0.0});

    DeckBundle deck;
    deck.starter_text = w.take();
    deck.engine_text = e.take();
    deck.checksum = sha256_hex(deck.starter_text, deck.engine_text);
    return deck;
}

std::string starter_file_name(const std::string& case_name) { return case_name + "_0000.rad"; }
std::string engine_file_name(const std::string& case_name) { return case_name + "_0001.rad"; }

std::filesystem::path write_deck(const DeckBundle& deck, const std::string& case_name,
                                 const std::filesystem::path& dir)
{
    auto write = [](const std::filesystem::path& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out)
            throw Error(ErrorKind::Io, "cannot write " + path.string());
    };
    const auto starter = dir / starter_file_name(case_name);
    write(starter, deck.starter_text);
    write(dir / engine_file_name(case_name), deck.engine_text);
    return starter;
}

}  // namespace crashsuite
