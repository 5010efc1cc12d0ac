#include "spdc/hom.hpp"

#include <algorithm>
#include <cmath>

#include "spdc/fft.hpp"
#include "spdc/threading.hpp"

namespace spdc {

namespace {

void require_square(const JsaGrid& jsa) {
    if (!(jsa.omega_s_axis == jsa.omega_i_axis)) {
        throw NumericError("hom_coincidence requires identical signal/idler axes");
    }
}

// Largest |w_s - center| carrying amplitude above 1e-10 of the peak.
double support_halfwidth(const JsaGrid& jsa) {
    const int n = jsa.omega_s_axis.n;
    double peak = 0.0;
    for (const cd& v : jsa.amplitude) peak = std::max(peak, std::abs(v));
    const double floor = 1e-10 * peak;
    const double center = jsa.omega_s_axis.value(n / 2);
    double half = 0.0;
    for (int is = 0; is < n; ++is) {
        const cd* row = jsa.amplitude.data() + static_cast<size_t>(is) * n;
        bool live = false;
        for (int ii = 0; ii < n; ++ii) {
            if (std::abs(row[ii]) > floor) {
                live = true;
                break;
            }
        }
        if (live) {
            half = std::max(half, std::abs(jsa.omega_s_axis.value(is) - center));
        }
    }
    return half;
}

} // namespace

double hom_coincidence(const JsaGrid& jsa, const HomSetting& setting) {
    if (setting.route != HomRoute::interferometer) {
        throw NumericError("hom_coincidence evaluates the interferometer route; "
                           "use pump_engineered_coincidence for the pump route");
    }
    require_square(jsa);
    const int n = jsa.omega_s_axis.n;
    const double step = jsa.omega_s_axis.step;

    std::vector<cd> amp = jsa.amplitude;
    if (setting.arm_shift != 0.0) {
        const double margin = jsa.omega_s_axis.span() / 2.0 - support_halfwidth(jsa);
        if (std::abs(setting.arm_shift) > margin) {
            throw ShiftExceedsGrid("arm_shift " + format_double(setting.arm_shift) +
                                   " rad/s pushes the amplitude support off-grid");
        }
        // shift along the signal axis: A'(ws, wi) = A(ws - shift, wi)
        std::vector<cd> column(static_cast<size_t>(n));
        for (int ii = 0; ii < n; ++ii) {
            for (int is = 0; is < n; ++is) {
                column[static_cast<size_t>(is)] = amp[static_cast<size_t>(is) * n + ii];
            }
            const std::vector<cd> shifted = fourier_shift(column, step, -setting.arm_shift);
            for (int is = 0; is < n; ++is) {
                amp[static_cast<size_t>(is) * n + ii] = shifted[static_cast<size_t>(is)];
            }
        }
    }
    if (setting.arm_delay != 0.0) {
        for (int is = 0; is < n; ++is) {
            const cd phase = std::polar(1.0, jsa.omega_s_axis.value(is) * setting.arm_delay);
            cd* row = amp.data() + static_cast<size_t>(is) * n;
            for (int ii = 0; ii < n; ++ii) row[ii] *= phase;
        }
    }
    // swap overlap, double Riemann sum
    cd overlap = 0.0;
    for (int is = 0; is < n; ++is) {
        const cd* row = amp.data() + static_cast<size_t>(is) * n;
        for (int ii = 0; ii < n; ++ii) {
            overlap += row[ii] * std::conj(amp[static_cast<size_t>(ii) * n + is]);
        }
    }
    overlap *= step * step;
    return 0.5 * (1.0 - overlap.real());
}

HomCalibration calibrate_hom(const Scenario& scenario, Route route) {
    Scenario gaussian = scenario;
    BeamSpec probe;
    probe.position_z0 = 0.0;
    probe.tilt_delta_theta = 0.0;
    probe.waist_wp = scenario.beams.front().waist_wp;
    probe.amplitude = 1.0;
    probe.phase_rad = 0.0;
    gaussian.beams = {probe};
    if (route == Route::gaussian) route = Route::infinite; // identical for one beam

    const double width = beam_component(probe, gaussian.device).width;
    const JsaGrid jsa = assemble_jsa(gaussian, route);
    const double d = 1.0 / width;
    const double m = width / 2.0;
    const double p0 = hom_coincidence(jsa, {0.0, 0.0, HomRoute::interferometer});
    const double pd = hom_coincidence(jsa, {d, 0.0, HomRoute::interferometer});
    const double pm = hom_coincidence(jsa, {0.0, m, HomRoute::interferometer});
    const double r0 = 1.0 - 2.0 * p0;
    const double rd = 1.0 - 2.0 * pd;
    const double rm = 1.0 - 2.0 * pm;
    if (!(r0 > 0.0) || !(rd > 0.0) || !(rm > 0.0)) {
        throw NumericError("hom calibration failed: non-positive dip contrast");
    }
    HomCalibration cal;
    cal.delta_omega = width;
    cal.offset_tau = (2.0 * std::log(rd / r0) / (width * width) + d * d / 4.0) / d;
    cal.offset_omega = (width * width * std::log(rm / r0) / 2.0 + m * m) / (2.0 * m);
    cal.gain = r0 / std::exp(-width * width * cal.offset_tau * cal.offset_tau / 2.0 -
                             2.0 * cal.offset_omega * cal.offset_omega / (width * width));
    return cal;
}

CoincidenceValue coincidence_from_wigner(const RealGrid2D& w, PhaseSpacePoint point,
                                         double gain) {
    const Axis& ta = w.tau_axis;
    const Axis& oa = w.omega_axis;
    const double ft = (point.tau - ta.start) / ta.step;
    const double fo = (point.omega_minus - oa.start) / oa.step;
    if (ft < 0.0 || ft > static_cast<double>(ta.n - 1) || fo < 0.0 ||
        fo > static_cast<double>(oa.n - 1)) {
        throw PointOffGrid("phase-space point outside the sampled Wigner grid");
    }
    const int it = std::min(static_cast<int>(ft), ta.n - 2);
    const int jo = std::min(static_cast<int>(fo), oa.n - 2);
    const double xt = ft - it;
    const double xo = fo - jo;
    const double v = (1.0 - xt) * (1.0 - xo) * w.at(it, jo) +
                     (1.0 - xt) * xo * w.at(it, jo + 1) + xt * (1.0 - xo) * w.at(it + 1, jo) +
                     xt * xo * w.at(it + 1, jo + 1);
    CoincidenceValue out;
    out.value = 0.5 * (1.0 - gain * v);
    if (out.value < 0.0) {
        out.value = 0.0;
        out.clamped = true;
    } else if (out.value > 1.0) {
        out.value = 1.0;
        out.clamped = true;
    }
    return out;
}

std::vector<BeamSpec> displace_beams(const std::vector<BeamSpec>& beams,
                                     const DeviceParams& device, double delta_z,
                                     double delta_theta) {
    std::vector<BeamSpec> out;
    out.reserve(beams.size());
    const double k = device.pump_center_omega / speed_of_light;
    for (BeamSpec b : beams) {
        b.tilt_delta_theta += delta_theta;
        b.position_z0 += delta_z;
        const double theta = device.theta_deg + b.tilt_delta_theta;
        b.phase_rad += k * std::sin(theta) * delta_z;
        out.push_back(b);
    }
    return out;
}

namespace {

double mean_tilt(const std::vector<BeamSpec>& beams) {
    double acc = 0.0;
    for (const BeamSpec& b : beams) acc += b.tilt_delta_theta;
    return acc / static_cast<double>(beams.size());
}

} // namespace

double pump_engineered_coincidence(const Scenario& scenario, Route route, double arm_delay,
                                   double arm_shift) {
    const double dz = scenario.device.group_velocity * arm_delay / 2.0;
    const double theta_ref = scenario.device.theta_deg + mean_tilt(scenario.beams);
    const double dtheta =
        (arm_shift == 0.0) ? 0.0
                           : detuning_to_angle_exact(arm_shift, theta_ref, scenario.device);
    Scenario displaced = scenario;
    displaced.beams = displace_beams(scenario.beams, scenario.device, dz, dtheta);
    const JsaGrid jsa = assemble_jsa(displaced, route);
    return hom_coincidence(jsa, {0.0, 0.0, HomRoute::interferometer});
}

TomographyResult tomography_scan(const Scenario& scenario, const Axis& tau_targets,
                                 const Axis& omega_targets, Route route) {
    // Scan-wide grid: widen the detuning span so every displaced state stays
    // inside, and refine the JSA axis until the largest displaced delay phase
    // is sampled at 8 points per cycle.
    double om_max = std::max(std::abs(omega_targets.min()), std::abs(omega_targets.max()));
    double tau_max_target = std::max(std::abs(tau_targets.min()), std::abs(tau_targets.max()));
    Scenario scan = scenario;
    scan.grid.omega_minus_halfspan += 2.0 * om_max;
    const double tau_content = scenario.delay_spread() + tau_max_target;
    {
        const double half_plus = 16.0 / scan.pulse.duration_tau_p;
        const double half = (scan.grid.omega_minus_halfspan + half_plus) / 2.0;
        int n = scan.grid.omega_minus_points;
        while (tau_content > 0.0 && (2.0 * half / n) * tau_content > pi / 4.0) {
            n *= 2;
            if (n > (1 << 15)) {
                throw GridTooCoarse("tomography targets require an impractically fine grid");
            }
        }
        scan.grid.omega_minus_points = n;
    }

    const HomCalibration cal = calibrate_hom(scan, route);
    const double theta_ref = scan.device.theta_deg + mean_tilt(scan.beams);

    TomographyResult result;
    result.affine_gain = cal.gain;
    result.affine_offset = 0.5;
    result.offset_tau = cal.offset_tau;
    result.offset_omega = cal.offset_omega;

    const int nt = tau_targets.n;
    const int nw = omega_targets.n;
    result.reconstructed.tau_axis = tau_targets;
    result.reconstructed.omega_axis = omega_targets;
    result.reconstructed.values.assign(static_cast<size_t>(nt) * nw, 0.0);
    result.valid.assign(static_cast<size_t>(nt) * nw, 0);

    parallel_for(nt * nw, [&](int idx) {
        const int it = idx / nw;
        const int jo = idx % nw;
        const double tau_star = tau_targets.value(it);
        const double om_star = omega_targets.value(jo);
        const double dz = scan.device.group_velocity * (cal.offset_tau - tau_star);
        double dtheta = 0.0;
        try {
            dtheta = detuning_to_angle_exact(cal.offset_omega - om_star, theta_ref, scan.device);
        } catch (const AngleOutOfRange&) {
            return; // gap
        }
        const double guard = scan.device.length / 2.0;
        for (const BeamSpec& b : scan.beams) {
            if (std::abs(b.position_z0 + dz) > guard - 2.0 * b.waist_wp) return;
            if (!(std::abs(b.tilt_delta_theta + dtheta) < small_angle_cutoff)) return;
        }
        Scenario displaced = scan;
        displaced.beams = displace_beams(scan.beams, scan.device, dz, dtheta);
        const JsaGrid jsa = assemble_jsa(displaced, route);
        const double pc = hom_coincidence(jsa, {0.0, 0.0, HomRoute::interferometer});
        result.reconstructed.values[static_cast<size_t>(idx)] = (1.0 - 2.0 * pc) / cal.gain;
        result.valid[static_cast<size_t>(idx)] = 1;
    });

    // direct computation of the undisplaced state on the same axes
    const Axis fm_axis = Axis::symmetric(scan.grid.omega_minus_halfspan,
                                         scan.grid.omega_minus_points);
    const SampledComplexFunction fm = f_minus_route(scan, route, fm_axis);
    result.direct = wigner_transform(fm, tau_targets, omega_targets);

    double max_err = 0.0;
    double sq = 0.0;
    int n_valid = 0;
    for (size_t i = 0; i < result.valid.size(); ++i) {
        if (!result.valid[i]) {
            ++result.invalid_count;
            continue;
        }
        const double e = std::abs(result.reconstructed.values[i] - result.direct.values[i]);
        max_err = std::max(max_err, e);
        sq += e * e;
        ++n_valid;
    }
    result.max_abs_error = max_err;
    result.rms_error = n_valid > 0 ? std::sqrt(sq / static_cast<double>(n_valid)) : 0.0;
    return result;
}

} // namespace spdc
