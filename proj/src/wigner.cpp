#include "spdc/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "spdc/biphoton.hpp"
#include "spdc/fft.hpp"
#include "spdc/threading.hpp"

namespace spdc {

namespace {

// Spectral-content guard: an f_minus whose DFT carries mass near the Nyquist
// edge is undersampled and the shift/transform machinery would alias.
void check_band_limit(const std::vector<cd>& samples) {
    std::vector<cd> spec = samples;
    fft(spec, -1);
    const int n = static_cast<int>(spec.size());
    double total = 0.0;
    double edge = 0.0;
    for (int k = 0; k < n; ++k) {
        const int ks = (2 * k < n) ? k : n - k;
        const double p = std::norm(spec[static_cast<size_t>(k)]);
        total += p;
        if (ks >= (n * 2) / 5) edge += p; // top 20% of |frequency|
    }
    if (total > 0.0 && edge > 1e-10 * total) {
        throw GridTooCoarse("f_minus is undersampled: significant spectral content "
                            "near the Nyquist edge");
    }
}

} // namespace

RealGrid2D wigner_transform(const SampledComplexFunction& f_minus, const Axis& tau_axis,
                            const Axis& omega_axis, double* imag_residue_out) {
    SampledComplexFunction f = f_minus;
    f.normalize();
    const int n = f.axis.n;
    const double h = f.axis.step;
    if (n < 4) throw SupportExceeded("f_minus grid too small");
    check_band_limit(f.values);

    const double lo = f.axis.min();
    const double hi = f.axis.max();
    const double quarter = (hi - lo) / 4.0;
    for (int j = 0; j < omega_axis.n; ++j) {
        const double om = omega_axis.value(j);
        if (om - lo < quarter * (1.0 - 1e-12) || hi - om < quarter * (1.0 - 1e-12)) {
            throw SupportExceeded("requested Omega leaves the central half of the "
                                  "sampled f_minus support");
        }
    }

    // distinct fractional offsets of the requested Omegas, shifted arrays cached
    std::vector<int> node_index(static_cast<size_t>(omega_axis.n));
    std::vector<long long> offset_key(static_cast<size_t>(omega_axis.n));
    std::map<long long, std::vector<cd>> shifted;
    for (int j = 0; j < omega_axis.n; ++j) {
        const double pos = (omega_axis.value(j) - f.axis.start) / h;
        const int jn = static_cast<int>(std::lround(pos));
        const double s = (pos - jn) * h;
        node_index[static_cast<size_t>(j)] = jn;
        const long long key = std::llround((pos - jn) * 4294967296.0);
        offset_key[static_cast<size_t>(j)] = key;
        if (!shifted.count(key)) {
            if (key == 0) {
                shifted.emplace(key, f.values);
            } else {
                shifted.emplace(key, fourier_shift(f.values, h, s));
            }
        }
    }

    RealGrid2D out;
    out.tau_axis = tau_axis;
    out.omega_axis = omega_axis;
    out.values.assign(static_cast<size_t>(tau_axis.n) * omega_axis.n, 0.0);
    std::vector<double> max_imag(static_cast<size_t>(omega_axis.n), 0.0);

    parallel_for(omega_axis.n, [&](int j) {
        const std::vector<cd>& fe = shifted.at(offset_key[static_cast<size_t>(j)]);
        const int jn = node_index[static_cast<size_t>(j)];
        const int m = std::min(jn, n - 1 - jn);
        // g_k = f(Om - k h) f*(Om + k h), k = -m..m
        std::vector<cd> g(static_cast<size_t>(2 * m + 1));
        for (int k = -m; k <= m; ++k) {
            g[static_cast<size_t>(k + m)] =
                fe[static_cast<size_t>(jn - k)] * std::conj(fe[static_cast<size_t>(jn + k)]);
        }
        double local_imag = 0.0;
        for (int it = 0; it < tau_axis.n; ++it) {
            const double ang = 2.0 * tau_axis.value(it) * h;
            const cd stepper = std::polar(1.0, ang);
            cd rot = std::polar(1.0, ang * static_cast<double>(-m));
            cd acc = 0.0;
            for (int k = -m; k <= m; ++k) {
                if ((k + m) % 256 == 0) rot = std::polar(1.0, ang * static_cast<double>(k));
                acc += g[static_cast<size_t>(k + m)] * rot;
                rot *= stepper;
            }
            acc *= h;
            out.at(it, j) = acc.real();
            local_imag = std::max(local_imag, std::abs(acc.imag()));
        }
        max_imag[static_cast<size_t>(j)] = local_imag;
    });

    double peak = 0.0;
    for (double v : out.values) peak = std::max(peak, std::abs(v));
    const double imag_residue = *std::max_element(max_imag.begin(), max_imag.end());
    if (imag_residue_out) *imag_residue_out = imag_residue;
    if (peak > 0.0 && imag_residue > 1e-10 * peak) {
        throw ImaginaryResidueTooLarge("imaginary residue " + format_double(imag_residue) +
                                       " exceeds 1e-10 of the Wigner peak");
    }
    return out;
}

namespace {

struct OracleTerm {
    cd coeff;
    double tau_k, tau_l;
    double mu_k, mu_l;
    double a, b; // 1/width^2
};

RealGrid2D oracle_grid(const std::vector<GaussianComponent>& comps, const Axis& tau_axis,
                       const Axis& omega_axis) {
    std::vector<OracleTerm> terms;
    cd norm = 0.0;
    for (const GaussianComponent& ck : comps) {
        for (const GaussianComponent& cl : comps) {
            OracleTerm t;
            t.coeff = ck.amplitude * std::conj(cl.amplitude);
            t.tau_k = ck.tau0;
            t.tau_l = cl.tau0;
            t.mu_k = ck.center;
            t.mu_l = cl.center;
            t.a = 1.0 / (ck.width * ck.width);
            t.b = 1.0 / (cl.width * cl.width);
            terms.push_back(t);
            const double ab = t.a + t.b;
            const double dm = t.mu_k - t.mu_l;
            const double dt = t.tau_k - t.tau_l;
            norm += t.coeff * std::sqrt(pi / ab) *
                    std::exp(-t.a * t.b * dm * dm / ab - dt * dt / (4.0 * ab)) *
                    std::polar(1.0, dt * (t.a * t.mu_k + t.b * t.mu_l) / ab);
        }
    }
    const double inv_norm = 1.0 / norm.real();

    RealGrid2D out;
    out.tau_axis = tau_axis;
    out.omega_axis = omega_axis;
    out.values.assign(static_cast<size_t>(tau_axis.n) * omega_axis.n, 0.0);
    parallel_for(tau_axis.n, [&](int it) {
        const double tau = tau_axis.value(it);
        for (int j = 0; j < omega_axis.n; ++j) {
            const double om = omega_axis.value(j);
            cd acc = 0.0;
            for (const OracleTerm& t : terms) {
                const double ab = t.a + t.b;
                const double u = om - t.mu_k;
                const double w2 = om - t.mu_l;
                const double s = 2.0 * tau - t.tau_k - t.tau_l;
                const double mag = std::sqrt(pi / ab) *
                                   std::exp(-t.a * t.b * (u + w2) * (u + w2) / ab -
                                            s * s / (4.0 * ab));
                const double phase =
                    om * (t.tau_k - t.tau_l) + s * (t.a * u - t.b * w2) / ab;
                acc += t.coeff * mag * std::polar(1.0, phase);
            }
            out.at(it, j) = acc.real() * inv_norm;
        }
    });
    return out;
}

} // namespace

RealGrid2D wigner_gaussian_oracle(const BeamSpec& beam, const DeviceParams& device,
                                  const Axis& tau_axis, const Axis& omega_axis) {
    return oracle_grid({beam_component(beam, device)}, tau_axis, omega_axis);
}

RealGrid2D wigner_multibeam_oracle(const std::vector<BeamSpec>& beams,
                                   const DeviceParams& device, const Axis& tau_axis,
                                   const Axis& omega_axis) {
    if (beams.empty()) throw NumericError("multibeam oracle needs at least one beam");
    for (const BeamSpec& b : beams) {
        if (std::abs(b.waist_wp - beams.front().waist_wp) >
            1e-12 * std::max(b.waist_wp, beams.front().waist_wp)) {
            throw WaistMismatch("multibeam oracle requires equal beam waists");
        }
    }
    std::vector<GaussianComponent> comps;
    comps.reserve(beams.size());
    for (const BeamSpec& b : beams) comps.push_back(beam_component(b, device));
    return oracle_grid(comps, tau_axis, omega_axis);
}

std::vector<double> tau_marginal(const RealGrid2D& w) {
    std::vector<double> out(static_cast<size_t>(w.omega_axis.n), 0.0);
    for (int it = 0; it < w.tau_axis.n; ++it) {
        for (int j = 0; j < w.omega_axis.n; ++j) {
            out[static_cast<size_t>(j)] += w.at(it, j);
        }
    }
    for (double& v : out) v *= w.tau_axis.step;
    return out;
}

double grid_integral(const RealGrid2D& w) {
    double acc = 0.0;
    for (double v : w.values) acc += v;
    return acc * w.cell_area();
}

namespace {

// Separable Gaussian smoothing on the grid; kernel truncated at 4 sigma.
std::vector<double> smooth_field(const RealGrid2D& w, double sigma_tau, double sigma_omega) {
    const int nt = w.tau_axis.n;
    const int nw = w.omega_axis.n;
    auto kernel = [](double sigma, double step) {
        std::vector<double> k;
        const int r = (sigma > 0.0) ? static_cast<int>(std::ceil(4.0 * sigma / step)) : 0;
        k.reserve(static_cast<size_t>(2 * r + 1));
        double sum = 0.0;
        for (int i = -r; i <= r; ++i) {
            const double x = static_cast<double>(i) * step / (sigma > 0.0 ? sigma : 1.0);
            const double v = (sigma > 0.0) ? std::exp(-0.5 * x * x) : 1.0;
            k.push_back(v);
            sum += v;
        }
        for (double& v : k) v /= sum;
        return k;
    };
    const std::vector<double> kt = kernel(sigma_tau, w.tau_axis.step);
    const std::vector<double> kw = kernel(sigma_omega, w.omega_axis.step);
    const int rt = static_cast<int>(kt.size() / 2);
    const int rw = static_cast<int>(kw.size() / 2);
    std::vector<double> tmp(w.values.size(), 0.0);
    // tau direction
    for (int j = 0; j < nw; ++j) {
        for (int it = 0; it < nt; ++it) {
            double acc = 0.0;
            for (int d = -rt; d <= rt; ++d) {
                const int src = std::clamp(it + d, 0, nt - 1);
                acc += kt[static_cast<size_t>(d + rt)] * w.at(src, j);
            }
            tmp[static_cast<size_t>(it) * nw + j] = acc;
        }
    }
    std::vector<double> out(w.values.size(), 0.0);
    for (int it = 0; it < nt; ++it) {
        for (int j = 0; j < nw; ++j) {
            double acc = 0.0;
            for (int d = -rw; d <= rw; ++d) {
                const int src = std::clamp(j + d, 0, nw - 1);
                acc += kw[static_cast<size_t>(d + rw)] * tmp[static_cast<size_t>(it) * nw + src];
            }
            out[static_cast<size_t>(it) * nw + j] = acc;
        }
    }
    return out;
}

// 1/e half-width along one direction of the raw field, linearly interpolated.
double half_width(const RealGrid2D& w, int it, int j, bool along_tau) {
    const double peak = w.at(it, j);
    const double target = peak / std::exp(1.0);
    const int n = along_tau ? w.tau_axis.n : w.omega_axis.n;
    const double step = along_tau ? w.tau_axis.step : w.omega_axis.step;
    auto value = [&](int idx) { return along_tau ? w.at(idx, j) : w.at(it, idx); };
    const int start = along_tau ? it : j;
    double right = 0.0, left = 0.0;
    bool found_r = false, found_l = false;
    for (int i = start + 1; i < n; ++i) {
        if (value(i) < target) {
            const double v0 = value(i - 1), v1 = value(i);
            const double frac = (v0 - target) / (v0 - v1);
            right = (static_cast<double>(i - 1 - start) + frac) * step;
            found_r = true;
            break;
        }
    }
    for (int i = start - 1; i >= 0; --i) {
        if (value(i) < target) {
            const double v0 = value(i + 1), v1 = value(i);
            const double frac = (v0 - target) / (v0 - v1);
            left = (static_cast<double>(start - 1 - i) + frac) * step;
            found_l = true;
            break;
        }
    }
    if (found_r && found_l) return (right + left) / 2.0;
    if (found_r) return right;
    if (found_l) return left;
    return step * static_cast<double>(n); // wider than the grid
}

// Dominant nonzero-frequency period of a 1-D slice, 3-point parabolic refined.
std::optional<double> fringe_period(const std::vector<double>& slice, double step) {
    const int n = static_cast<int>(slice.size());
    if (n < 8) return std::nullopt;
    std::vector<cd> spec(slice.begin(), slice.end());
    fft(spec, -1);
    const int half = n / 2;
    double global_max = 0.0;
    for (int k = 0; k <= half; ++k) {
        global_max = std::max(global_max, std::abs(spec[static_cast<size_t>(k)]));
    }
    int best = 0;
    double best_mag = 0.0;
    for (int k = 2; k < half; ++k) {
        const double m = std::abs(spec[static_cast<size_t>(k)]);
        if (m >= std::abs(spec[static_cast<size_t>(k - 1)]) &&
            m >= std::abs(spec[static_cast<size_t>(k + 1)]) && m > best_mag) {
            best = k;
            best_mag = m;
        }
    }
    if (best == 0 || best_mag < 0.1 * global_max) return std::nullopt;
    const double alpha = std::abs(spec[static_cast<size_t>(best - 1)]);
    const double beta = best_mag;
    const double gamma = std::abs(spec[static_cast<size_t>(best + 1)]);
    const double denom = alpha - 2.0 * beta + gamma;
    const double delta = (denom != 0.0) ? 0.5 * (alpha - gamma) / denom : 0.0;
    const double k_ref = static_cast<double>(best) + std::clamp(delta, -0.5, 0.5);
    return static_cast<double>(n) * step / k_ref;
}

} // namespace

WignerMetrics wigner_metrics(const RealGrid2D& w, double smooth_sigma_tau,
                             double smooth_sigma_omega) {
    WignerMetrics metrics;
    const int nt = w.tau_axis.n;
    const int nw = w.omega_axis.n;
    if (nt < 3 || nw < 3) throw NoPeaks("grid too small");

    double raw_max = -1e300;
    double raw_min = 1e300;
    for (double v : w.values) {
        raw_max = std::max(raw_max, v);
        raw_min = std::min(raw_min, v);
    }
    if (!(raw_max > 0.0)) throw NoPeaks("Wigner maximum is not positive");
    metrics.min_value = raw_min;

    double neg = 0.0;
    for (double v : w.values) {
        if (v < 0.0) neg -= v;
    }
    metrics.negativity_volume = neg * w.cell_area();

    const bool smoothing = smooth_sigma_tau > 0.0 || smooth_sigma_omega > 0.0;
    const std::vector<double>* fieldp = &w.values;
    std::vector<double> smoothed;
    if (smoothing) {
        smoothed = smooth_field(w, smooth_sigma_tau, smooth_sigma_omega);
        fieldp = &smoothed;
    }
    const std::vector<double>& field = *fieldp;
    double field_max = -1e300;
    for (double v : field) field_max = std::max(field_max, v);
    const double threshold = 0.5 * field_max;

    std::vector<std::pair<int, int>> peaks;
    for (int it = 1; it + 1 < nt; ++it) {
        for (int j = 1; j + 1 < nw; ++j) {
            const double v = field[static_cast<size_t>(it) * nw + j];
            if (v <= threshold) continue;
            bool is_max = true;
            bool strictly_above_one = false;
            for (int dt = -1; dt <= 1 && is_max; ++dt) {
                for (int dj = -1; dj <= 1; ++dj) {
                    if (dt == 0 && dj == 0) continue;
                    const double nb = field[static_cast<size_t>(it + dt) * nw + (j + dj)];
                    if (nb > v) {
                        is_max = false;
                        break;
                    }
                    if (nb < v) strictly_above_one = true;
                }
            }
            if (!is_max || !strictly_above_one) continue;
            // plateau dedupe: skip if adjacent to an already recorded peak
            bool adjacent = false;
            for (const auto& [pt, pj] : peaks) {
                if (std::abs(pt - it) <= 1 && std::abs(pj - j) <= 1) {
                    adjacent = true;
                    break;
                }
            }
            if (!adjacent) peaks.emplace_back(it, j);
        }
    }
    for (const auto& [it, j] : peaks) {
        metrics.peak_locations.push_back({w.tau_axis.value(it), w.omega_axis.value(j)});
        metrics.peak_widths.emplace_back(half_width(w, it, j, true),
                                         half_width(w, it, j, false));
    }

    // central row (tau nearest 0) and column (Omega nearest 0)
    int it0 = 0, j0 = 0;
    for (int it = 1; it < nt; ++it) {
        if (std::abs(w.tau_axis.value(it)) < std::abs(w.tau_axis.value(it0))) it0 = it;
    }
    for (int j = 1; j < nw; ++j) {
        if (std::abs(w.omega_axis.value(j)) < std::abs(w.omega_axis.value(j0))) j0 = j;
    }
    std::vector<double> row(static_cast<size_t>(nw));
    for (int j = 0; j < nw; ++j) row[static_cast<size_t>(j)] = w.at(it0, j);
    std::vector<double> col(static_cast<size_t>(nt));
    for (int it = 0; it < nt; ++it) col[static_cast<size_t>(it)] = w.at(it, j0);
    metrics.fringe_period_omega = fringe_period(row, w.omega_axis.step);
    metrics.fringe_period_tau = fringe_period(col, w.tau_axis.step);
    return metrics;
}

} // namespace spdc
