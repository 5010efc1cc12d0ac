#ifndef SPDC_WIGNER_HPP
#define SPDC_WIGNER_HPP

#include <optional>
#include <utility>
#include <vector>

#include "spdc/axis.hpp"
#include "spdc/core.hpp"
#include "spdc/pump.hpp"

namespace spdc {

// W(tau, Omega) = Int dw f(Omega - w) f*(Omega + w) exp(2 i tau w), evaluated
// as a Riemann sum over the symmetric window where both arguments stay inside
// the sampled support.  Off-grid Omega values are handled by exact
// band-limited (Fourier phase-shift) evaluation of f, so the result is
// spectrally accurate on arbitrary axes.  f is L2-normalized on its grid
// before use.
//
// Throws SupportExceeded when a requested Omega leaves the central half of
// the sampled support, GridTooCoarse when f has significant spectral content
// near its Nyquist edge, and ImaginaryResidueTooLarge when the discarded
// imaginary part exceeds 1e-10 of the real peak.  When imag_residue is given
// it receives the largest discarded |Im| before the check.
RealGrid2D wigner_transform(const SampledComplexFunction& f_minus, const Axis& tau_axis,
                            const Axis& omega_axis, double* imag_residue = nullptr);

// Closed-form Wigner function of a single beam's Gaussian amplitude:
// exp(-width^2 (tau-tau0)^2 / 2 - 2 (Omega-center)^2 / width^2), peak 1.
RealGrid2D wigner_gaussian_oracle(const BeamSpec& beam, const DeviceParams& device,
                                  const Axis& tau_axis, const Axis& omega_axis);

// Analytic Wigner function of a normalized multi-beam superposition: the
// pairwise Gaussian cross terms carry the interference fringes.  Requires
// equal waists.
RealGrid2D wigner_multibeam_oracle(const std::vector<BeamSpec>& beams,
                                   const DeviceParams& device, const Axis& tau_axis,
                                   const Axis& omega_axis);

struct WignerMetrics {
    std::vector<PhaseSpacePoint> peak_locations;
    std::vector<std::pair<double, double>> peak_widths; // (1/e half-width in tau, in Omega)
    double min_value = 0.0;
    double negativity_volume = 0.0;
    std::optional<double> fringe_period_omega; // rad/s
    std::optional<double> fringe_period_tau;   // s
};

// Scalar features of a sampled Wigner function.  When smoothing scales are
// given (coherent-blob sigmas in tau and Omega), peak detection runs on the
// smoothed field so interference fringes do not masquerade as state lobes;
// widths, negativity and fringe periods always use the raw field.
// Throws NoPeaks when max(W) <= 0.
WignerMetrics wigner_metrics(const RealGrid2D& w, double smooth_sigma_tau = 0.0,
                             double smooth_sigma_omega = 0.0);

// Riemann tau-marginal (one value per Omega column) and full integral.
std::vector<double> tau_marginal(const RealGrid2D& w);
double grid_integral(const RealGrid2D& w);

} // namespace spdc

#endif
