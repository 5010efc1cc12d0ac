#include "spdc/core.hpp"

#include <cmath>

namespace spdc {

void DeviceParams::validate() const {
    if (!(length > 0.0)) {
        throw ConfigSemanticError("length_mm", "device length must be > 0");
    }
    if (!(group_velocity > 0.0) || !(group_velocity < speed_of_light)) {
        throw ConfigSemanticError("vg_m_per_s", "group velocity must satisfy 0 < vg < c");
    }
    if (!(pump_center_omega > 0.0)) {
        throw ConfigSemanticError("wavelength_nm", "pump carrier frequency must be > 0");
    }
    if (index_signal.has_value() != index_idler.has_value()) {
        throw ConfigSemanticError("n_signal", "n_signal and n_idler must be given together");
    }
    if (index_signal && index_idler) {
        const double half_diff = (*index_signal - *index_idler) / 2.0;
        if (std::abs(half_diff) > 1.0) {
            throw ConfigSemanticError("n_signal", "|n_signal - n_idler| / 2 must be <= 1");
        }
        if (std::abs(std::sin(theta_deg) - half_diff) > 1e-12) {
            throw ConfigSemanticError(
                "theta_deg_arcmin",
                "sin(theta_deg) inconsistent with (n_signal - n_idler)/2 beyond 1e-12");
        }
    }
}

double k_deg(const DeviceParams& device) {
    return std::sin(device.theta_deg) * device.pump_center_omega / speed_of_light;
}

double arcmin_to_rad(double arcmin) {
    return arcmin * pi / (180.0 * 60.0);
}

double position_to_delay(double z0, const DeviceParams& device) {
    return z0 / device.group_velocity;
}

double angle_to_detuning(double delta_theta, const DeviceParams& device) {
    if (!(std::abs(delta_theta) < small_angle_cutoff)) {
        throw AngleOutOfRange("tilt " + std::to_string(delta_theta) +
                              " rad exceeds the small-angle cutoff of 0.05 rad; "
                              "use the exact map");
    }
    return delta_theta * device.group_velocity * device.pump_center_omega / speed_of_light;
}

double angle_to_detuning_exact(double delta_theta, const DeviceParams& device) {
    const double s = std::sin(device.theta_deg + delta_theta) - std::sin(device.theta_deg);
    return s * device.pump_center_omega / speed_of_light * device.group_velocity;
}

double detuning_to_angle_exact(double detuning, double theta_ref, const DeviceParams& device) {
    const double arg =
        detuning * speed_of_light / (device.pump_center_omega * device.group_velocity) +
        std::sin(theta_ref);
    if (std::abs(arg) > 1.0) {
        throw AngleOutOfRange("requested detuning has no physical incidence angle");
    }
    return std::asin(arg) - theta_ref;
}

double detuning_to_lambda(double omega_minus, const DeviceParams& device) {
    const double w = device.pump_center_omega;
    return 8.0 * pi * speed_of_light / (w * w) * omega_minus;
}

double lambda_to_detuning(double lambda, const DeviceParams& device) {
    const double w = device.pump_center_omega;
    return lambda * w * w / (8.0 * pi * speed_of_light);
}

} // namespace spdc
