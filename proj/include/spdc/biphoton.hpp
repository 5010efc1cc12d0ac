#ifndef SPDC_BIPHOTON_HPP
#define SPDC_BIPHOTON_HPP

#include <vector>

#include "spdc/axis.hpp"
#include "spdc/config.hpp"
#include "spdc/core.hpp"
#include "spdc/pump.hpp"

namespace spdc {

enum class Route { finite, infinite, gaussian };

Route route_from_string(const std::string& name);
std::string route_name(Route route);

// Exact closed form of one beam's antidiagonal amplitude,
//   f_b(w) = amplitude * exp(i w tau0) * exp(-(w - center)^2 / width^2),
// obtained by Fourier transforming the carrier-referenced beam profile over
// an unbounded guide.  amplitude carries the beam weight, the sqrt(pi) w/cos
// prefactor and the constant phase exp(-i kappa z0).
struct GaussianComponent {
    cd amplitude;
    double tau0 = 0.0;   // s
    double center = 0.0; // rad/s
    double width = 0.0;  // rad/s, 1/e half-width of the amplitude

    cd eval(double omega_minus) const;
};

GaussianComponent beam_component(const BeamSpec& beam, const DeviceParams& device);

// Single-beam closed form normalized to unit peak magnitude for unit weight.
cd f_minus_gaussian(const BeamSpec& beam, const DeviceParams& device, double omega_minus);

// L -> infinity route: sum of the per-beam closed forms, L2-normalized on the grid.
SampledComplexFunction f_minus_infinite(const std::vector<BeamSpec>& beams,
                                        const DeviceParams& device, const Axis& omega_grid);

// Finite-length route: trapezoid quadrature of phi(z) exp(i w z / vg) over
// [-L/2, L/2], then L2-normalized.  The envelope grid must cover the device
// and satisfy the combined Nyquist rule (pump rule plus |w|_max / vg).
SampledComplexFunction f_minus_finite(const SampledComplexFunction& envelope,
                                      const DeviceParams& device, const Axis& omega_grid);

// Route dispatcher used by JSA assembly and the CLI.
SampledComplexFunction f_minus_route(const Scenario& scenario, Route route,
                                     const Axis& omega_grid);

// |<f_a|f_b>| of the normalized closed forms; requires equal waists.
double component_overlap(const BeamSpec& a, const BeamSpec& b, const DeviceParams& device);

struct JsaGrid {
    Axis omega_s_axis;
    Axis omega_i_axis;
    std::vector<cd> amplitude; // row-major, signal outer

    cd at(int is, int ii) const {
        return amplitude[static_cast<size_t>(is) * omega_i_axis.n + ii];
    }
    double norm2() const; // sum |a|^2 * ds * di
};

// Builds the joint amplitude f_plus(ws + wi) * f_minus(ws - wi) on square axes
// centered at omega_p / 2 and L2-normalizes it.
JsaGrid assemble_jsa(const Scenario& scenario, Route route);

// Axis used by assemble_jsa for both photons (offsets from omega_p/2 are
// symmetric; the antidiagonal difference grid is used for f_minus).
Axis jsa_axis(const Scenario& scenario);

} // namespace spdc

#endif
