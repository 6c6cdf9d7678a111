#pragma once

#include "crashsuite/mesh.hpp"
#include "crashsuite/types.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace crashsuite {

struct CowperSymonds {
    double C;
    double p;
};

struct PlasticityPoint {
    double plastic_strain;
    double stress_MPa;
};

/// Source units: GPa, kg/m^3, MPa.
struct MaterialModel {
    std::string name;
    double E_GPa;
    double nu;
    double rho_kg_m3;
    double sigma_y_MPa;
    std::optional<CowperSymonds> strain_rate;
    std::vector<PlasticityPoint> plasticity_curve;
};

/// Steel for problems 1 and 3, aluminium for problem 2.
MaterialModel material_for(ProblemId id);

struct GeometryDims {
    double height_mm;
    double width_mm;
    double depth_mm;
};

/// Contact parameters for the self-contact interface. Not specified by the
/// benchmark definition; these are the defaults written to the deck.
struct ContactSettings {
    double friction = 0.0;
    double gap_min_mm = 0.0;
    double stiffness_factor = 1.0;
};

struct SimConfig {
    ProblemId problem;
    std::string case_name;
    double impactor_mass_kg;
    double impactor_velocity_kmh;
    std::optional<double> impactor_radius_mm;
    double sim_time_ms;
    std::string element_formulation = "Belytschko-Lin-Tsay";
    std::string contact = "/INTER/TYPE24";
    GeometryDims dims;
    ContactSettings contact_settings;
    double impactor_gap_mm = 1.0;
    double th_dt_ms = 0.1;
    bool write_vtk = false;
    double anim_dt_ms = 1.0;

    /// mm/ms, numerically equal to m/s.
    double impactor_velocity_mm_per_ms() const { return impactor_velocity_kmh / 3.6; }
};

SimConfig sim_config_for(ProblemId id);

/// 1/2 m v^2 evaluated in deck units (kg, mm, ms), which yields joules.
double impactor_kinetic_energy_J(const SimConfig& cfg);

struct DeckBundle {
    std::string starter_text;
    std::string engine_text;
    std::string checksum;  // SHA-256 hex of starter and engine text
};

/// Optional starter template. Every occurrence of `${MESH}` is replaced with
/// the generated node, shell, part and property blocks; the remainder of the
/// template is emitted verbatim.
struct DeckTemplate {
    std::string starter;
};

/// Unit system mm, ms, kg (force kN, stress GPa, energy J). Floats are
/// written in scientific notation with 15 significant digits.
DeckBundle build_deck(const ShellMesh& mesh, const MaterialModel& mat, const SimConfig& cfg,
                      const std::optional<DeckTemplate>& tmpl = std::nullopt);

std::string starter_file_name(const std::string& case_name);  // <case>_0000.rad
std::string engine_file_name(const std::string& case_name);   // <case>_0001.rad

/// Writes both deck files into `dir`; returns the starter path.
std::filesystem::path write_deck(const DeckBundle& deck, const std::string& case_name,
                                 const std::filesystem::path& dir);

/// Formats a value the way every float in the deck is formatted.
std::string deck_number(double value);

}  // namespace crashsuite
