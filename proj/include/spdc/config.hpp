#ifndef SPDC_CONFIG_HPP
#define SPDC_CONFIG_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "spdc/axis.hpp"
#include "spdc/core.hpp"
#include "spdc/pump.hpp"

namespace spdc {

// Axis ranges and point counts for the sampled-function grids.  Values left
// unset in the config are derived from the device and beam list.
struct GridSpec {
    double omega_minus_halfspan = 0.0; // rad/s
    int omega_minus_points = 0;
    double tau_halfspan = 0.0; // s
    int tau_points = 0;
    double big_omega_halfspan = 0.0; // rad/s
    int big_omega_points = 0;

    void validate() const;
};

// Display-unit snapshot of every config key, explicit or default-resolved.
// Kept so the canonical pretty-printer reproduces parsed values bit-exactly
// (unit conversions are not invertible at the last ulp).
struct ConfigEcho {
    double length_mm = 0.0;
    double vg_m_per_s = 0.0;
    std::optional<double> theta_deg_arcmin;
    std::optional<double> n_signal;
    std::optional<double> n_idler;
    double wavelength_nm = 0.0;
    double duration_ps = 0.0;
    std::string cavity_phase_file;
    struct BeamEcho {
        double position_mm = 0.0;
        double tilt_arcmin = 0.0;
        double waist_um = 0.0;
        double amplitude = 1.0;
        double phase_rad = 0.0;
    };
    std::vector<BeamEcho> beams;
    double omega_minus_halfspan_rad_s = 0.0;
    double omega_minus_points = 0.0;
    double tau_halfspan_ps = 0.0;
    double tau_points = 0.0;
    double big_omega_halfspan_rad_s = 0.0;
    double big_omega_points = 0.0;
};

struct Scenario {
    DeviceParams device;
    PumpPulse pulse;
    std::vector<BeamSpec> beams;
    GridSpec grid;
    ConfigEcho echo;

    // Smallest per-beam spectral width 2 vg cos(theta)/w_p over the beams.
    double min_delta_omega() const;
    // Largest |detuning center| over the beams (exact map).
    double detuning_spread() const;
    // Largest |delay center| over the beams.
    double delay_spread() const;
};

// Rebuilds the display snapshot from the SI state (used after programmatic
// edits such as tomography displacements).
ConfigEcho make_echo(const Scenario& scenario);

// Parses the scenario description language.  Throws ConfigSyntaxError or
// ConfigSemanticError; never crashes on any byte sequence.
Scenario parse_scenario(std::string_view text);

// Canonical pretty-printer; parse(serialize(s)) reproduces s and
// serialize(parse(t)) == t for canonical t.
std::string serialize_scenario(const Scenario& scenario);

Scenario load_scenario(const std::filesystem::path& file);

// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

// Writes content to the destination atomically (temp file + rename).
void write_text_atomic(const std::filesystem::path& dest, const std::string& content);

// CSV writers/readers.  Non-finite values are rejected (RejectedValue).
void write_real_grid(const RealGrid2D& grid, const std::filesystem::path& dest,
                     const std::string& axis1_name = "tau_s",
                     const std::string& axis2_name = "omega_minus_rad_s");
RealGrid2D read_real_grid(const std::filesystem::path& src);

void write_complex_function(const SampledComplexFunction& f, const std::filesystem::path& dest,
                            const std::string& axis_name = "omega_minus_rad_s");
SampledComplexFunction read_complex_function(const std::filesystem::path& src);

// Complex 2-D grid (joint amplitude) export: two axis headers then
// "<axis1>,<axis2>,re,im" rows in row-major order.
void write_complex_grid(const Axis& axis1, const Axis& axis2, const std::vector<cd>& values,
                        const std::filesystem::path& dest, const std::string& axis1_name,
                        const std::string& axis2_name);

// Cavity phase table: "omega_rad_s,phase_rad" header then two columns with a
// strictly increasing first column.
PhaseTable load_phase_table(const std::filesystem::path& src);

} // namespace spdc

#endif
