#include "spdc/pump.hpp"

#include <algorithm>
#include <cmath>

namespace spdc {

cd BeamSpec::weight() const {
    return std::polar(amplitude, phase_rad);
}

void BeamSpec::validate() const {
    if (!(waist_wp > 0.0)) {
        throw ConfigSemanticError("waist_um", "beam waist must be > 0");
    }
    if (!(std::abs(amplitude) > 0.0)) {
        throw ConfigSemanticError("amplitude", "beam amplitude must be nonzero");
    }
    if (!(std::abs(tilt_delta_theta) < 0.5)) {
        throw ConfigSemanticError("tilt_arcmin", "beam tilt must stay below 0.5 rad");
    }
}

double PhaseTable::eval(double w) const {
    if (omega.empty()) return 0.0;
    if (w <= omega.front()) return phase.front();
    if (w >= omega.back()) return phase.back();
    const auto it = std::upper_bound(omega.begin(), omega.end(), w);
    const size_t hi = static_cast<size_t>(it - omega.begin());
    const size_t lo = hi - 1;
    const double t = (w - omega[lo]) / (omega[hi] - omega[lo]);
    return phase[lo] + t * (phase[hi] - phase[lo]);
}

void PumpPulse::validate() const {
    if (!(center_wavelength > 0.0)) {
        throw ConfigSemanticError("wavelength_nm", "pump wavelength must be > 0");
    }
    if (!(duration_tau_p > 0.0)) {
        throw ConfigSemanticError("duration_ps", "pulse duration must be > 0");
    }
}

cd beam_field(const BeamSpec& beam, const DeviceParams& device, double z) {
    const double theta = device.theta_deg + beam.tilt_delta_theta;
    const double cos_t = std::cos(theta);
    const double u = (z - beam.position_z0) * cos_t / beam.waist_wp;
    const double k_sin = device.pump_center_omega / speed_of_light * std::sin(theta);
    return beam.weight() * std::exp(-u * u) * std::polar(1.0, -k_sin * z);
}

double nyquist_z_step(const std::vector<BeamSpec>& beams, const DeviceParams& device,
                      double extra_rate) {
    const double kd = k_deg(device);
    double k_max = 0.0;
    for (const BeamSpec& b : beams) {
        const double theta = device.theta_deg + b.tilt_delta_theta;
        const double residual =
            std::abs(device.pump_center_omega / speed_of_light * std::sin(theta) - kd);
        k_max = std::max(k_max, residual + 4.0 / b.waist_wp);
    }
    return 2.0 * pi / (8.0 * (k_max + extra_rate));
}

Axis make_z_grid(const DeviceParams& device, double max_step) {
    const double lo = -device.length / 2.0;
    const double hi = device.length / 2.0;
    int n = static_cast<int>(std::ceil(device.length / max_step)) + 1;
    n = std::max(n, 33);
    if (n % 2 == 0) ++n; // odd count keeps z = 0 on the grid
    return Axis::inclusive(lo, hi, n);
}

SampledComplexFunction pump_envelope(const std::vector<BeamSpec>& beams,
                                     const DeviceParams& device, const Axis& z_grid) {
    const double half = device.length / 2.0;
    const double tol = z_grid.step * 0.5 + 1e-15 * device.length;
    if (z_grid.min() > -half + tol || z_grid.max() < half - tol) {
        throw DomainMismatch("z grid does not cover [-L/2, L/2]");
    }
    const double bound = nyquist_z_step(beams, device);
    if (z_grid.step > bound * (1.0 + 1e-12)) {
        throw GridTooCoarse("z step " + std::to_string(z_grid.step) +
                            " m exceeds the Nyquist bound " + std::to_string(bound) + " m");
    }
    const double kd = k_deg(device);
    SampledComplexFunction out;
    out.axis = z_grid;
    out.values.resize(static_cast<size_t>(z_grid.n));
    for (int i = 0; i < z_grid.n; ++i) {
        const double z = z_grid.value(i);
        cd acc = 0.0;
        for (const BeamSpec& b : beams) acc += beam_field(b, device, z);
        out.values[static_cast<size_t>(i)] = acc * std::polar(1.0, kd * z);
    }
    return out;
}

cd pump_spectrum(const PumpPulse& pulse, double omega_plus) {
    const double d = omega_plus - pulse.center_omega();
    const double arg = d * pulse.duration_tau_p / 2.0;
    const double mag = std::exp(-arg * arg);
    if (pulse.cavity_phase) {
        return mag * std::polar(1.0, pulse.cavity_phase->eval(omega_plus));
    }
    return cd(mag, 0.0);
}

} // namespace spdc
