#include "spdc/biphoton.hpp"

#include <cmath>

#include "spdc/threading.hpp"

namespace spdc {

Route route_from_string(const std::string& name) {
    if (name == "finite") return Route::finite;
    if (name == "infinite") return Route::infinite;
    if (name == "gaussian") return Route::gaussian;
    throw ConfigSemanticError("route", "unknown route '" + name +
                                           "' (expected finite|infinite|gaussian)");
}

std::string route_name(Route route) {
    switch (route) {
        case Route::finite: return "finite";
        case Route::infinite: return "infinite";
        case Route::gaussian: return "gaussian";
    }
    return "?";
}

cd GaussianComponent::eval(double omega_minus) const {
    const double u = (omega_minus - center) / width;
    return amplitude * std::exp(-u * u) * std::polar(1.0, omega_minus * tau0);
}

GaussianComponent beam_component(const BeamSpec& beam, const DeviceParams& device) {
    const double theta = device.theta_deg + beam.tilt_delta_theta;
    const double cos_t = std::cos(theta);
    const double kappa = device.pump_center_omega / speed_of_light *
                         (std::sin(theta) - std::sin(device.theta_deg));
    GaussianComponent c;
    c.tau0 = position_to_delay(beam.position_z0, device);
    c.center = kappa * device.group_velocity;
    c.width = 2.0 * device.group_velocity * cos_t / beam.waist_wp;
    c.amplitude = beam.weight() * (std::sqrt(pi) * beam.waist_wp / cos_t) *
                  std::polar(1.0, -kappa * beam.position_z0);
    return c;
}

cd f_minus_gaussian(const BeamSpec& beam, const DeviceParams& device, double omega_minus) {
    GaussianComponent c = beam_component(beam, device);
    const double theta = device.theta_deg + beam.tilt_delta_theta;
    // unit peak magnitude for unit |weight|
    c.amplitude /= std::sqrt(pi) * beam.waist_wp / std::cos(theta);
    return c.eval(omega_minus);
}

SampledComplexFunction f_minus_infinite(const std::vector<BeamSpec>& beams,
                                        const DeviceParams& device, const Axis& omega_grid) {
    std::vector<GaussianComponent> comps;
    comps.reserve(beams.size());
    for (const BeamSpec& b : beams) comps.push_back(beam_component(b, device));
    SampledComplexFunction out;
    out.axis = omega_grid;
    out.values.assign(static_cast<size_t>(omega_grid.n), cd(0.0, 0.0));
    for (int i = 0; i < omega_grid.n; ++i) {
        const double w = omega_grid.value(i);
        cd acc = 0.0;
        for (const GaussianComponent& c : comps) acc += c.eval(w);
        out.values[static_cast<size_t>(i)] = acc;
    }
    out.normalize();
    return out;
}

SampledComplexFunction f_minus_finite(const SampledComplexFunction& envelope,
                                      const DeviceParams& device, const Axis& omega_grid) {
    const double half = device.length / 2.0;
    const double tol = envelope.axis.step * 0.5 + 1e-15 * device.length;
    if (std::abs(envelope.axis.min() + half) > tol || std::abs(envelope.axis.max() - half) > tol) {
        throw DomainMismatch("envelope domain is not [-L/2, L/2]");
    }
    const double w_max = std::max(std::abs(omega_grid.min()), std::abs(omega_grid.max()));
    const double rate = w_max / device.group_velocity;
    // combined rule: the envelope's own content plus the quadrature kernel
    const double bound = 2.0 * pi / (8.0 * rate);
    if (envelope.axis.step > bound * (1.0 + 1e-12)) {
        throw GridTooCoarse("envelope z step too coarse for the requested detuning range");
    }
    SampledComplexFunction out;
    out.axis = omega_grid;
    out.values.assign(static_cast<size_t>(omega_grid.n), cd(0.0, 0.0));
    const int nz = envelope.axis.n;
    const double hz = envelope.axis.step;
    const double inv_vg = 1.0 / device.group_velocity;
    parallel_for(omega_grid.n, [&](int i) {
        const double q = omega_grid.value(i) * inv_vg;
        // trapezoid with phase recurrence, resynced periodically
        cd acc = 0.0;
        cd rot = std::polar(1.0, q * envelope.axis.value(0));
        const cd stepper = std::polar(1.0, q * hz);
        for (int j = 0; j < nz; ++j) {
            if (j % 256 == 0) rot = std::polar(1.0, q * envelope.axis.value(j));
            cd term = envelope.values[static_cast<size_t>(j)] * rot;
            if (j == 0 || j == nz - 1) term *= 0.5;
            acc += term;
            rot *= stepper;
        }
        out.values[static_cast<size_t>(i)] = acc * hz;
    });
    out.normalize();
    return out;
}

SampledComplexFunction f_minus_route(const Scenario& scenario, Route route,
                                     const Axis& omega_grid) {
    switch (route) {
        case Route::gaussian: {
            if (scenario.beams.size() != 1) {
                throw ConfigSemanticError("route",
                                          "the gaussian route requires exactly one beam");
            }
            return f_minus_infinite(scenario.beams, scenario.device, omega_grid);
        }
        case Route::infinite:
            return f_minus_infinite(scenario.beams, scenario.device, omega_grid);
        case Route::finite: {
            const double w_max =
                std::max(std::abs(omega_grid.min()), std::abs(omega_grid.max()));
            const double step = nyquist_z_step(scenario.beams, scenario.device,
                                               w_max / scenario.device.group_velocity);
            const Axis z_grid = make_z_grid(scenario.device, step);
            const SampledComplexFunction envelope =
                pump_envelope(scenario.beams, scenario.device, z_grid);
            return f_minus_finite(envelope, scenario.device, omega_grid);
        }
    }
    throw NumericError("unreachable route");
}

double component_overlap(const BeamSpec& a, const BeamSpec& b, const DeviceParams& device) {
    if (std::abs(a.waist_wp - b.waist_wp) > 1e-12 * std::max(a.waist_wp, b.waist_wp)) {
        throw WaistMismatch("component_overlap requires equal beam waists");
    }
    const GaussianComponent ca = beam_component(a, device);
    const GaussianComponent cb = beam_component(b, device);
    const double ia = 1.0 / (ca.width * ca.width);
    const double ib = 1.0 / (cb.width * cb.width);
    const double dm = ca.center - cb.center;
    const double dt = ca.tau0 - cb.tau0;
    // |int phi_a^* phi_b| with unit amplitudes, relative to the norms
    const double cross =
        std::sqrt(pi / (ia + ib)) *
        std::exp(-ia * ib * dm * dm / (ia + ib) - dt * dt / (4.0 * (ia + ib)));
    const double na = std::sqrt(pi / (2.0 * ia));
    const double nb = std::sqrt(pi / (2.0 * ib));
    return cross / std::sqrt(na * nb);
}

double JsaGrid::norm2() const {
    double acc = 0.0;
    for (const cd& v : amplitude) acc += std::norm(v);
    return acc * omega_s_axis.step * omega_i_axis.step;
}

Axis jsa_axis(const Scenario& scenario) {
    const double half_plus = 16.0 / scenario.pulse.duration_tau_p;
    const double half = (scenario.grid.omega_minus_halfspan + half_plus) / 2.0;
    const int n = scenario.grid.omega_minus_points;
    const double center = scenario.device.pump_center_omega / 2.0;
    Axis ax = Axis::symmetric(half, n);
    ax.start += center;
    return ax;
}

JsaGrid assemble_jsa(const Scenario& scenario, Route route) {
    const Axis ax = jsa_axis(scenario);
    const int n = ax.n;
    const double step = ax.step;
    // phase resolution contract: the fastest antidiagonal phase exp(i w tau0)
    // must be sampled at 8 points per cycle or better
    const double tau_max = scenario.delay_spread();
    if (tau_max > 0.0 && step * tau_max > pi / 4.0 * (1.0 + 1e-12)) {
        throw GridTooCoarse("jsa grid cannot resolve the beam delay phases; "
                            "increase omega_minus_points");
    }
    // difference grid: v_j = (j - (n-1)) * step, j = is - ii + (n-1)
    Axis diff_axis{-step * static_cast<double>(n - 1), step, 2 * n - 1};
    const SampledComplexFunction fm = f_minus_route(scenario, route, diff_axis);
    // sum grid: u_k = 2*start + k*step, k = is + ii
    std::vector<cd> fplus(static_cast<size_t>(2 * n - 1));
    for (int k = 0; k < 2 * n - 1; ++k) {
        const double u = 2.0 * ax.start + step * static_cast<double>(k);
        fplus[static_cast<size_t>(k)] = pump_spectrum(scenario.pulse, u);
    }
    JsaGrid jsa;
    jsa.omega_s_axis = ax;
    jsa.omega_i_axis = ax;
    jsa.amplitude.resize(static_cast<size_t>(n) * static_cast<size_t>(n));
    parallel_for(n, [&](int is) {
        cd* row = jsa.amplitude.data() + static_cast<size_t>(is) * n;
        for (int ii = 0; ii < n; ++ii) {
            const int udx = is + ii;
            const int vdx = is - ii + (n - 1);
            row[ii] = fplus[static_cast<size_t>(udx)] * fm.values[static_cast<size_t>(vdx)];
        }
    });
    const double nrm2 = jsa.norm2();
    const double inv = 1.0 / std::sqrt(nrm2);
    for (cd& v : jsa.amplitude) v *= inv;
    return jsa;
}

} // namespace spdc
