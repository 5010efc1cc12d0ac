// Acceptance suite: one check per numbered criterion, each printing a
// [PASS]/[FAIL] line with its wall time.  Exit status is the failure count.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spdc/biphoton.hpp"
#include "spdc/cli.hpp"
#include "spdc/config.hpp"
#include "spdc/hom.hpp"
#include "spdc/wigner.hpp"

using namespace spdc;

namespace {

int g_failures = 0;

void run_criterion(int number, const std::string& name, double budget_s,
                   const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
        body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (error.empty() && budget_s > 0.0 && dt > budget_s) {
        std::ostringstream ss;
        ss << "runtime " << dt << " s exceeds the " << budget_s << " s budget";
        error = ss.str();
    }
    if (error.empty()) {
        std::printf("[PASS] criterion %d: %s (%.2f s)\n", number, name.c_str(), dt);
    } else {
        std::printf("[FAIL] criterion %d: %s (%.2f s): %s\n", number, name.c_str(), dt,
                    error.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

std::filesystem::path config_dir() { return SPDC_CONFIG_DIR; }
std::filesystem::path corpus_dir() { return SPDC_CORPUS_DIR; }

std::filesystem::path scratch_dir() {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("spdc_acceptance_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

Scenario load(const char* name) { return load_scenario(config_dir() / name); }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double sup_rel(const std::vector<double>& a, const std::vector<double>& b) {
    double diff = 0.0, peak = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        diff = std::max(diff, std::abs(a[i] - b[i]));
        peak = std::max(peak, std::abs(b[i]));
    }
    return diff / peak;
}

double grid_peak(const RealGrid2D& w) {
    double peak = 0.0;
    for (double v : w.values) peak = std::max(peak, std::abs(v));
    return peak;
}

struct ArgMax {
    double tau;
    double omega;
};

ArgMax grid_argmax(const RealGrid2D& w) {
    int bt = 0, bo = 0;
    double top = -1e300;
    for (int it = 0; it < w.tau_axis.n; ++it) {
        for (int j = 0; j < w.omega_axis.n; ++j) {
            if (w.at(it, j) > top) {
                top = w.at(it, j);
                bt = it;
                bo = j;
            }
        }
    }
    return {w.tau_axis.value(bt), w.omega_axis.value(bo)};
}

// Wigner Omega axis aligned to f grid nodes: stride * f.step, centered.
Axis aligned_omega_axis(const SampledComplexFunction& f, int n, int stride) {
    const int center = static_cast<int>(std::lround((0.0 - f.axis.start) / f.axis.step));
    Axis ax;
    ax.n = n;
    ax.step = f.axis.step * stride;
    ax.start = f.axis.value(center - (n / 2) * stride);
    return ax;
}

// --- criteria -------------------------------------------------------------

void criterion_1() {
    const Scenario sc = load("fig1.cfg");
    const GaussianComponent c = beam_component(sc.beams[0], sc.device);
    const Axis window = Axis::symmetric(4.0 * c.width, 512);
    const SampledComplexFunction fin = f_minus_route(sc, Route::finite, window);
    const SampledComplexFunction gau = f_minus_route(sc, Route::gaussian, window);
    double diff = 0.0, peak = 0.0;
    for (int i = 0; i < window.n; ++i) {
        diff = std::max(diff, std::abs(fin.values[static_cast<size_t>(i)] -
                                       gau.values[static_cast<size_t>(i)]));
        peak = std::max(peak, std::abs(gau.values[static_cast<size_t>(i)]));
    }
    require(diff / peak <= 1e-6, "finite vs gaussian sup " + format_double(diff / peak));
}

std::vector<Scenario> five_configurations() {
    std::vector<Scenario> out;
    out.push_back(load("fig1.cfg"));
    Scenario shifted = load("fig1.cfg");
    shifted.beams[0].position_z0 = 0.3e-3;
    out.push_back(shifted);
    Scenario tilted = load("fig1.cfg");
    tilted.beams[0].tilt_delta_theta = arcmin_to_rad(5.0);
    out.push_back(tilted);
    out.push_back(load("cat.cfg"));
    out.push_back(load("compass.cfg"));
    // re-derive the grids for the modified beam lists, with extra span so the
    // marginal checks can probe the full support within the central half
    for (Scenario& sc : out) {
        const double dmin = sc.min_delta_omega();
        sc.grid.omega_minus_halfspan = 12.0 * dmin + 2.4 * sc.detuning_spread();
        sc.grid.tau_halfspan = sc.delay_spread() + 6.0 / dmin;
    }
    return out;
}

void criterion_2() {
    for (const Scenario& sc : five_configurations()) {
        const Axis grid =
            Axis::symmetric(sc.grid.omega_minus_halfspan, sc.grid.omega_minus_points);
        const SampledComplexFunction f = f_minus_route(sc, Route::infinite, grid);
        const Axis tau_ax = Axis::symmetric(sc.grid.tau_halfspan, 256);
        const Axis om_ax = aligned_omega_axis(f, 230, 2);
        double residue = 0.0;
        const RealGrid2D w = wigner_transform(f, tau_ax, om_ax, &residue);
        const double peak = grid_peak(w);
        require(residue <= 1e-10 * peak, "imaginary residue too large");
        // tau marginal against pi |f(Omega)|^2 at the aligned nodes
        const std::vector<double> marg = tau_marginal(w);
        const int center = static_cast<int>(std::lround((0.0 - f.axis.start) / f.axis.step));
        double worst = 0.0, scale = 0.0;
        for (int j = 0; j < om_ax.n; ++j) {
            const int fi = center + (j - om_ax.n / 2) * 2;
            const double expected = pi * std::norm(f.values[static_cast<size_t>(fi)]);
            worst = std::max(worst, std::abs(marg[static_cast<size_t>(j)] - expected));
            scale = std::max(scale, expected);
        }
        require(worst / scale <= 1e-6,
                "tau marginal error " + format_double(worst / scale));
        require(std::abs(grid_integral(w) - pi) / pi <= 1e-6,
                "total integral error " +
                    format_double(std::abs(grid_integral(w) - pi) / pi));
    }
}

void criterion_3() {
    const Scenario base = load("fig1.cfg");
    const Axis grid =
        Axis::symmetric(base.grid.omega_minus_halfspan, base.grid.omega_minus_points);
    const Axis tau_ax = Axis::symmetric(base.grid.tau_halfspan, 256);
    const Axis om_ax = Axis::symmetric(base.grid.big_omega_halfspan, 256);
    const RealGrid2D w0 =
        wigner_transform(f_minus_route(base, Route::infinite, grid), tau_ax, om_ax);
    const ArgMax a0 = grid_argmax(w0);

    Scenario shifted = base;
    shifted.beams[0].position_z0 += 0.3e-3;
    const RealGrid2D w1 =
        wigner_transform(f_minus_route(shifted, Route::infinite, grid), tau_ax, om_ax);
    const ArgMax a1 = grid_argmax(w1);
    const double dtau = a1.tau - a0.tau;
    require(std::abs(dtau - position_to_delay(0.3e-3, base.device)) <= tau_ax.step,
            "tau displacement off by more than one cell");

    Scenario tilted = base;
    tilted.beams[0].tilt_delta_theta += arcmin_to_rad(5.0);
    const RealGrid2D w2 =
        wigner_transform(f_minus_route(tilted, Route::infinite, grid), tau_ax, om_ax);
    const ArgMax a2 = grid_argmax(w2);
    const double dom = a2.omega - a0.omega;
    require(std::abs(dom - angle_to_detuning(arcmin_to_rad(5.0), base.device)) <= om_ax.step,
            "omega displacement off by more than one cell");
}

void criterion_4() {
    const Scenario sc = load("cat.cfg");
    const double ovl = component_overlap(sc.beams[0], sc.beams[1], sc.device);
    require(ovl < 0.05, "component overlap " + format_double(ovl));

    const Axis grid = Axis::symmetric(sc.grid.omega_minus_halfspan, sc.grid.omega_minus_points);
    const SampledComplexFunction f = f_minus_route(sc, Route::infinite, grid);
    const Axis tau_ax = Axis::symmetric(sc.grid.tau_halfspan, 256);
    const Axis om_ax = Axis::symmetric(sc.grid.big_omega_halfspan, 256);
    const RealGrid2D w = wigner_transform(f, tau_ax, om_ax);

    const GaussianComponent c = beam_component(sc.beams[0], sc.device);
    const WignerMetrics metrics = wigner_metrics(w, 1.0 / c.width, c.width / 2.0);
    require(metrics.peak_locations.size() == 2,
            "expected 2 lobes, found " + std::to_string(metrics.peak_locations.size()));

    // strictly negative central fringes: the minimum sits between the lobes
    const double peak = grid_peak(w);
    require(metrics.min_value < -0.1 * peak, "central fringes not negative");
    int bt = 0;
    double low = 1e300;
    for (int it = 0; it < w.tau_axis.n; ++it) {
        for (int j = 0; j < w.omega_axis.n; ++j) {
            if (w.at(it, j) < low) {
                low = w.at(it, j);
                bt = it;
            }
        }
    }
    const double tau_sep = std::abs(position_to_delay(sc.beams[1].position_z0, sc.device) -
                                    position_to_delay(sc.beams[0].position_z0, sc.device));
    require(std::abs(w.tau_axis.value(bt)) < tau_sep / 2.0,
            "deepest fringe is not central");

    // fringe period against the multibeam oracle
    require(metrics.fringe_period_omega.has_value(), "no fringes detected");
    const RealGrid2D oracle = wigner_multibeam_oracle(sc.beams, sc.device, tau_ax, om_ax);
    const WignerMetrics om = wigner_metrics(oracle, 1.0 / c.width, c.width / 2.0);
    require(om.fringe_period_omega.has_value(), "oracle shows no fringes");
    const double rel = std::abs(*metrics.fringe_period_omega - *om.fringe_period_omega) /
                       *om.fringe_period_omega;
    require(rel <= 0.02, "fringe period off by " + format_double(rel));
    const double analytic = 2.0 * pi / tau_sep;
    require(std::abs(*metrics.fringe_period_omega - analytic) / analytic <= 0.02,
            "fringe period vs analytic prediction");
}

void criterion_5() {
    const Scenario sc = load("compass.cfg");
    const Axis grid = Axis::symmetric(sc.grid.omega_minus_halfspan, sc.grid.omega_minus_points);
    const SampledComplexFunction f = f_minus_route(sc, Route::infinite, grid);
    const Axis tau_ax = Axis::symmetric(sc.grid.tau_halfspan, 256);
    const Axis om_ax = Axis::symmetric(sc.grid.big_omega_halfspan, 256);
    const RealGrid2D w = wigner_transform(f, tau_ax, om_ax);
    const RealGrid2D oracle = wigner_multibeam_oracle(sc.beams, sc.device, tau_ax, om_ax);
    require(sup_rel(w.values, oracle.values) <= 1e-6,
            "transform vs oracle sup " + format_double(sup_rel(w.values, oracle.values)));

    const GaussianComponent c = beam_component(sc.beams[0], sc.device);
    const WignerMetrics metrics = wigner_metrics(w, 1.0 / c.width, c.width / 2.0);
    require(metrics.peak_locations.size() == 4,
            "expected 4 lobes, found " + std::to_string(metrics.peak_locations.size()));

    // central interference patch: strong oscillation around the origin
    const double peak = grid_peak(w);
    const double tau_lobe = std::abs(position_to_delay(sc.beams[0].position_z0, sc.device));
    const double om_lobe =
        std::abs(angle_to_detuning_exact(sc.beams[0].tilt_delta_theta, sc.device));
    double central_max = -1e300, central_min = 1e300;
    for (int it = 0; it < w.tau_axis.n; ++it) {
        if (std::abs(w.tau_axis.value(it)) > tau_lobe / 2.0) continue;
        for (int j = 0; j < w.omega_axis.n; ++j) {
            if (std::abs(w.omega_axis.value(j)) > om_lobe / 2.0) continue;
            central_max = std::max(central_max, w.at(it, j));
            central_min = std::min(central_min, w.at(it, j));
        }
    }
    require(central_max > 0.4 * peak && central_min < -0.4 * peak,
            "central interference patch missing");
}

void criterion_6() {
    Scenario sc = load("fig1.cfg");
    sc.grid.omega_minus_points = 512;
    const JsaGrid jsa = assemble_jsa(sc, Route::infinite);
    const HomCalibration cal = calibrate_hom(sc, Route::infinite);

    const Axis grid = Axis::symmetric(sc.grid.omega_minus_halfspan, sc.grid.omega_minus_points);
    const SampledComplexFunction f = f_minus_route(sc, Route::infinite, grid);
    const Axis tau_ax = Axis::symmetric(sc.grid.tau_halfspan, 128);
    const Axis om_ax = Axis::symmetric(sc.grid.big_omega_halfspan, 128);
    const RealGrid2D w = wigner_transform(f, tau_ax, om_ax);

    // 21 x 21 displacement surface probing exact Wigner nodes
    double worst = 0.0;
    for (int a = -10; a <= 10; ++a) {
        for (int b = -10; b <= 10; ++b) {
            const double tau_node = tau_ax.value(tau_ax.n / 2 + a * 4);
            const double om_node = om_ax.value(om_ax.n / 2 + b * 4);
            const double dt = -2.0 * (tau_node - cal.offset_tau);
            const double dm = -(om_node - cal.offset_omega);
            const double pc = hom_coincidence(jsa, {dt, dm, HomRoute::interferometer});
            const double predicted =
                coincidence_from_wigner(w, {tau_node, om_node}, cal.gain).value;
            worst = std::max(worst, std::abs(pc - predicted));
        }
    }
    require(worst <= 1e-6, "surface vs affine image worst " + format_double(worst));

    // coincidence is blind to any pump spectral phase; the table is sampled
    // densely so its piecewise-linear kinks stay spectrally negligible
    Scenario phased = sc;
    PhaseTable table;
    const double w0 = sc.pulse.center_omega();
    for (int i = 0; i <= 480; ++i) {
        const double wv = w0 - 6e12 + 0.025e12 * i;
        table.omega.push_back(wv);
        table.phase.push_back(1.7 * std::sin(2.3e-12 * (wv - w0)) - 0.4);
    }
    phased.pulse.cavity_phase = table;
    const JsaGrid jsa_phased = assemble_jsa(phased, Route::infinite);
    double worst_phase = 0.0;
    for (const auto& [dt, dm] : {std::pair{0.0, 0.0}, std::pair{1.5e-12, 0.0},
                                 std::pair{0.0, 5e11}, std::pair{-2e-12, -4e11}}) {
        const double a = hom_coincidence(jsa, {dt, dm, HomRoute::interferometer});
        const double b = hom_coincidence(jsa_phased, {dt, dm, HomRoute::interferometer});
        worst_phase = std::max(worst_phase, std::abs(a - b));
    }
    require(worst_phase <= 1e-10,
            "pump phase changed the coincidence by " + format_double(worst_phase));

    // complete bunching and the distinguishable limit
    const double p0 = hom_coincidence(jsa, {0.0, 0.0, HomRoute::interferometer});
    require(p0 <= 1e-6, "P_c(0,0) = " + format_double(p0));
    const double dw = beam_component(sc.beams[0], sc.device).width;
    const double pfar = hom_coincidence(jsa, {10.0 / dw, 0.0, HomRoute::interferometer});
    require(std::abs(pfar - 0.5) <= 1e-3, "P_c at 10/dw = " + format_double(pfar));
}

void criterion_7() {
    const Scenario sc = load("compass_tomo.cfg");
    const double dmin = sc.min_delta_omega();
    const double tau_half = sc.delay_spread() + 2.5 / dmin;
    const double om_half = sc.detuning_spread() + 2.5 * dmin;
    const Axis tau_targets = Axis::inclusive(-tau_half, tau_half, 41);
    const Axis om_targets = Axis::inclusive(-om_half, om_half, 41);
    const TomographyResult res = tomography_scan(sc, tau_targets, om_targets, Route::infinite);
    require(res.invalid_count == 0, "scan has gaps");
    const double peak = grid_peak(res.direct);
    require(res.rms_error <= 1e-4 * peak,
            "rms error " + format_double(res.rms_error / peak) + " of peak");
    require(res.max_abs_error <= 1e-3 * peak,
            "max error " + format_double(res.max_abs_error / peak) + " of peak");

    // reconstruction shows the four lobes and the central fringes
    const GaussianComponent c = beam_component(sc.beams[0], sc.device);
    const WignerMetrics rec_metrics =
        wigner_metrics(res.reconstructed, 1.0 / c.width, c.width / 2.0);
    require(rec_metrics.peak_locations.size() == 4, "reconstruction lost the lobes");
    require(rec_metrics.min_value < -0.3 * peak, "reconstruction lost the fringes");

    // angular scan at 100 urad steps resolves the central fringes
    const double om_step = angle_to_detuning_exact(100e-6, sc.device);
    const int n_scan = 65;
    const Axis scan_om = Axis::inclusive(-om_step * (n_scan - 1) / 2.0,
                                         om_step * (n_scan - 1) / 2.0, n_scan);
    const Axis scan_tau{0.0, 1.0, 1}; // single tau* = 0 row
    const TomographyResult row = tomography_scan(sc, scan_tau, scan_om, Route::infinite);
    require(row.invalid_count == 0, "angular scan has gaps");
    // extract the fringe period from the scanned row itself
    WignerMetrics row_metrics;
    {
        RealGrid2D as_grid;
        as_grid.tau_axis = Axis::symmetric(1e-12, 4);
        as_grid.omega_axis = scan_om;
        for (int copies = 0; copies < 4; ++copies) {
            as_grid.values.insert(as_grid.values.end(), row.reconstructed.values.begin(),
                                  row.reconstructed.values.end());
        }
        row_metrics = wigner_metrics(as_grid);
    }
    require(row_metrics.fringe_period_omega.has_value(),
            "angular scan does not resolve the fringes");
    const double samples_per_period = *row_metrics.fringe_period_omega / om_step;
    require(samples_per_period >= 6.0,
            "only " + format_double(samples_per_period) + " samples per fringe period");
    const double tau_sep =
        2.0 * std::abs(position_to_delay(sc.beams[0].position_z0, sc.device));
    const double analytic = 2.0 * pi / tau_sep;
    require(std::abs(*row_metrics.fringe_period_omega - analytic) / analytic <= 0.05,
            "scanned fringe period inconsistent with the state");
}

void criterion_8() {
    // 10 000 fuzzed inputs: every outcome is a Scenario or a structured error
    std::mt19937 rng(987654321u);
    const std::string seed = slurp(config_dir() / "compass.cfg");
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<size_t> pos(0, seed.size() - 1);
    for (int iter = 0; iter < 10000; ++iter) {
        std::string text;
        switch (iter % 4) {
            case 0: {
                const size_t len = static_cast<size_t>(rng() % 400);
                for (size_t i = 0; i < len; ++i) text.push_back(static_cast<char>(byte(rng)));
                break;
            }
            case 1: {
                text = seed;
                for (int k = 0; k < 6; ++k) text[pos(rng)] = static_cast<char>(byte(rng));
                break;
            }
            case 2: {
                text = seed.substr(0, pos(rng));
                break;
            }
            default: {
                text = seed + "\n" + seed.substr(pos(rng));
                break;
            }
        }
        try {
            (void)parse_scenario(text);
        } catch (const ConfigError&) {
        }
    }

    // golden corpus: canonical files round-trip byte-exact, error files carry
    // their documented class
    int n_valid = 0, n_syntax = 0, n_semantic = 0;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir())) {
        if (entry.path().extension() != ".cfg") continue;
        const std::string name = entry.path().filename().string();
        const std::string text = slurp(entry.path());
        if (name.rfind("v", 0) == 0) {
            ++n_valid;
            require(serialize_scenario(parse_scenario(text)) == text,
                    "round trip mismatch: " + name);
        } else if (name.rfind("e_syntax", 0) == 0) {
            ++n_syntax;
            try {
                parse_scenario(text);
                require(false, "expected syntax error: " + name);
            } catch (const ConfigSyntaxError&) {
            }
        } else if (name.rfind("e_semantic", 0) == 0) {
            ++n_semantic;
            try {
                parse_scenario(text);
                require(false, "expected semantic error: " + name);
            } catch (const ConfigSemanticError&) {
            }
        }
    }
    require(n_valid + n_syntax + n_semantic >= 12, "corpus too small");
    require(n_syntax > 0 && n_semantic > 0, "corpus misses an error class");
}

void criterion_9() {
    const std::string cfg = (config_dir() / "compass_tomo.cfg").string();
    auto run_scan = [&cfg](const char* threads, const std::string& prefix) {
        setenv("SPDC_THREADS", threads, 1);
        std::ostringstream out, err;
        const auto outcome = spdc::cli::run(
            {"tomography", "--config", cfg, "--grid-omega-minus-points", "512",
             "--tau-points", "9", "--omega-points", "9", "--out-prefix", prefix},
            out, err);
        require(outcome.exit_code == 0, "tomography run failed: " + err.str());
    };
    const std::string p1 = (scratch_dir() / "det1").string();
    const std::string p8 = (scratch_dir() / "det8").string();
    run_scan("1", p1);
    run_scan("8", p8);
    unsetenv("SPDC_THREADS");
    for (const char* suffix : {"_reconstructed.csv", "_direct.csv", "_meta.txt"}) {
        require(slurp(p1 + suffix) == slurp(p8 + suffix),
                std::string("outputs differ for ") + suffix);
    }
}

} // namespace

int main() {
    run_criterion(1, "finite route matches the Gaussian closed form", 1.0, criterion_1);
    run_criterion(2, "Wigner realness, tau marginal and total integral", 30.0, criterion_2);
    run_criterion(3, "pump displacement moves the Wigner function", 0.0, criterion_3);
    run_criterion(4, "cat state: overlap, lobes, negative fringes, period", 0.0, criterion_4);
    run_criterion(5, "compass state vs the analytic oracle", 60.0, criterion_5);
    run_criterion(6, "HOM surface is the affine image of the Wigner function", 0.0,
                  criterion_6);
    run_criterion(7, "pump-displacement tomography round trip", 300.0, criterion_7);
    run_criterion(8, "parser robustness and golden corpus", 0.0, criterion_8);
    run_criterion(9, "thread-count independent byte-identical outputs", 0.0, criterion_9);
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d criterion(s) failed\n", g_failures);
    }
    return g_failures;
}
