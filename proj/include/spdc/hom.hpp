#ifndef SPDC_HOM_HPP
#define SPDC_HOM_HPP

#include <cstdint>
#include <vector>

#include "spdc/biphoton.hpp"
#include "spdc/wigner.hpp"

namespace spdc {

enum class HomRoute { interferometer, pump_engineered };

struct HomSetting {
    double arm_delay = 0.0; // s, relative delay before the beam splitter
    double arm_shift = 0.0; // rad/s, relative frequency displacement
    HomRoute route = HomRoute::interferometer;
};

// Coincidence probability of the balanced-beam-splitter HOM experiment:
// one arm's amplitude gains exp(i w_s arm_delay) and is frequency-shifted by
// arm_shift (exact Fourier shift), then
//   P_c = 1/2 [1 - Re sum f'(ws,wi) f'*(wi,ws) dws dwi].
// Requires route == interferometer and a square JSA with identical axes.
double hom_coincidence(const JsaGrid& jsa, const HomSetting& setting);

// Affine link between the coincidence surface and the Wigner function,
//   P_c(dt, dm) = 1/2 [1 - gain * W(-dt/2 + offset_tau, -dm + offset_omega)],
// measured once per device/grid configuration from the Gaussian oracle.
struct HomCalibration {
    double gain = 1.0;
    double offset_tau = 0.0;   // s
    double offset_omega = 0.0; // rad/s
    double delta_omega = 0.0;  // spectral width of the calibration state
};

HomCalibration calibrate_hom(const Scenario& scenario, Route route);

struct CoincidenceValue {
    double value = 0.0;
    bool clamped = false; // true when the affine image left [0, 1]
};

// P_c predicted from a sampled Wigner function at one phase-space point
// (bilinear grid interpolation).  Throws PointOffGrid.
CoincidenceValue coincidence_from_wigner(const RealGrid2D& w, PhaseSpacePoint point,
                                         double gain);

// Phase-space displacement realized by pump engineering: the tilt pivots
// about the device center (lab-fixed phase grating) and the spot translation
// carries the grating, so the pair acts as an exact displacement operator on
// the biphoton state (up to a global phase).
std::vector<BeamSpec> displace_beams(const std::vector<BeamSpec>& beams,
                                     const DeviceParams& device, double delta_z,
                                     double delta_theta);

// Coincidence of the pump-engineered route at the displacement equivalent to
// interferometer displacements (arm_delay, arm_shift):
// delta_z = vg * arm_delay / 2 and a tilt adding detuning arm_shift.
double pump_engineered_coincidence(const Scenario& scenario, Route route, double arm_delay,
                                   double arm_shift);

struct TomographyResult {
    RealGrid2D reconstructed;
    RealGrid2D direct;
    std::vector<std::uint8_t> valid; // per grid point; gaps are 0
    double affine_gain = 1.0;
    double affine_offset = 0.5;
    double offset_tau = 0.0;
    double offset_omega = 0.0;
    double max_abs_error = 0.0;
    double rms_error = 0.0;
    int invalid_count = 0;
};

// Pump-displacement tomography: for every target (tau*, Omega*) the beams are
// displaced so a plain HOM coincidence measures W(tau*, Omega*); the affine
// map is inverted with the oracle-frozen calibration.  Targets whose
// displaced spots leave [-L/2 + 2 w_p, L/2 - 2 w_p] or whose tilts exceed the
// angular cutoff become gaps, not errors.  `direct` is the Wigner transform
// of the undisplaced state on the same axes.
TomographyResult tomography_scan(const Scenario& scenario, const Axis& tau_targets,
                                 const Axis& omega_targets, Route route);

} // namespace spdc

#endif
