#ifndef SPDC_PUMP_HPP
#define SPDC_PUMP_HPP

#include <optional>
#include <string>
#include <vector>

#include "spdc/axis.hpp"
#include "spdc/core.hpp"

namespace spdc {

// One Gaussian pump beam on the waveguide axis.
//
// Sign convention: a beam tilted to positive delta_theta carries the lab-frame
// spatial phase exp(-i (omega_p/c) sin(theta) z), and the pump envelope is
// referenced to the degeneracy carrier by multiplying with exp(+i k_deg z).
// With the Fourier kernel exp(+i omega_minus z / vg) this makes positive tilt
// produce a positive detuning center, matching the detuning maps in core.
struct BeamSpec {
    double position_z0 = 0.0;      // m
    double tilt_delta_theta = 0.0; // rad, offset from theta_deg
    double waist_wp = 0.0;         // m
    double amplitude = 1.0;
    double phase_rad = 0.0;

    cd weight() const;
    void validate() const;
};

// Tabulated spectral phase, linearly interpolated and clamped outside range.
struct PhaseTable {
    std::vector<double> omega; // rad/s, strictly increasing
    std::vector<double> phase; // rad

    double eval(double w) const;
};

// Temporal/spectral pump model.
struct PumpPulse {
    double center_wavelength = 0.0; // m
    double duration_tau_p = 0.0;    // s
    std::optional<PhaseTable> cavity_phase;
    std::string cavity_phase_file; // as given in the config, for serialization

    double center_omega() const { return 2.0 * pi * speed_of_light / center_wavelength; }
    void validate() const;
};

// Complex field of one beam at position z along the guide (lab frame).
cd beam_field(const BeamSpec& beam, const DeviceParams& device, double z);

// Carrier-referenced pump profile phi(z) = [sum of beam fields] * exp(+i k_deg z)
// sampled on z_grid, which must cover [-L/2, L/2].
// Throws GridTooCoarse when z_grid.step violates the Nyquist rule and
// DomainMismatch when the grid does not cover the device.
SampledComplexFunction pump_envelope(const std::vector<BeamSpec>& beams,
                                     const DeviceParams& device, const Axis& z_grid);

// Pump spectral amplitude: exp(-(w - w_p)^2 tau_p^2 / 4) times the cavity
// phase factor when a table is present.
cd pump_spectrum(const PumpPulse& pulse, double omega_plus);

// Largest admissible z step: 2*pi / (8 * k_max) where k_max is the maximal
// residual carrier over the beams plus the envelope bandwidth 4/w_p, plus an
// optional extra phase rate (for the f_minus quadrature kernel).
double nyquist_z_step(const std::vector<BeamSpec>& beams, const DeviceParams& device,
                      double extra_rate = 0.0);

// Inclusive symmetric z grid over [-L/2, L/2] honoring the step bound.
Axis make_z_grid(const DeviceParams& device, double max_step);

} // namespace spdc

#endif
