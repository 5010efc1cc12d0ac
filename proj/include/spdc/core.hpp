#ifndef SPDC_CORE_HPP
#define SPDC_CORE_HPP

#include <optional>

#include "spdc/errors.hpp"

namespace spdc {

inline constexpr double speed_of_light = 299792458.0; // m/s, exact
inline constexpr double pi = 3.14159265358979323846;

// Maximum tilt offset accepted by the small-angle detuning map.  Beyond this
// the linearized map is off by more than 0.1% and the exact variant must be
// used instead.
inline constexpr double small_angle_cutoff = 0.05; // rad

// Waveguide and phase-matching constants.  All fields SI.
struct DeviceParams {
    double length = 0.0;            // L, m
    double group_velocity = 0.0;    // average signal/idler group velocity, m/s
    double pump_center_omega = 0.0; // pump carrier, rad/s
    double theta_deg = 0.0;         // degeneracy incidence angle, rad
    std::optional<double> index_signal;
    std::optional<double> index_idler;

    // Checks the type invariants; throws ConfigSemanticError on violation.
    void validate() const;
};

struct PhaseSpacePoint {
    double tau = 0.0;         // s
    double omega_minus = 0.0; // rad/s
};

// Degeneracy wavevector sin(theta_deg) * omega_p / c.
double k_deg(const DeviceParams& device);

double arcmin_to_rad(double arcmin);

// Pump spot position -> delay coordinate, tau0 = z0 / vg.
double position_to_delay(double z0, const DeviceParams& device);

// Small-angle tilt -> detuning map, delta_theta * vg * omega_p / c.
// Throws AngleOutOfRange when |delta_theta| >= small_angle_cutoff.
double angle_to_detuning(double delta_theta, const DeviceParams& device);

// Exact variant: (sin(theta_deg + delta_theta) - sin(theta_deg)) * (omega_p/c) * vg.
double angle_to_detuning_exact(double delta_theta, const DeviceParams& device);

// Inverse of the exact map about a reference total angle theta_ref
// (theta_ref defaults to theta_deg when the caller passes it explicitly).
double detuning_to_angle_exact(double detuning, double theta_ref, const DeviceParams& device);

// Detuning -> wavelength-equivalent axis, Lambda = (8 pi c / omega_p^2) * Omega.
double detuning_to_lambda(double omega_minus, const DeviceParams& device);
double lambda_to_detuning(double lambda, const DeviceParams& device);

} // namespace spdc

#endif
