#include "spdc/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <ostream>
#include <sstream>

#include "spdc/biphoton.hpp"
#include "spdc/config.hpp"
#include "spdc/hom.hpp"
#include "spdc/wigner.hpp"

namespace spdc::cli {

namespace {

struct GridOverrides {
    double omega_minus_halfspan = 0.0;
    int omega_minus_points = 0;
    double tau_halfspan_ps = 0.0;
    int tau_points = 0;
    double big_omega_halfspan = 0.0;
    int big_omega_points = 0;

    // Flags take precedence over config-file grid values.
    void apply(Scenario& sc) const {
        if (omega_minus_halfspan > 0.0) sc.grid.omega_minus_halfspan = omega_minus_halfspan;
        if (omega_minus_points > 0) sc.grid.omega_minus_points = omega_minus_points;
        if (tau_halfspan_ps > 0.0) sc.grid.tau_halfspan = tau_halfspan_ps * 1e-12;
        if (tau_points > 0) sc.grid.tau_points = tau_points;
        if (big_omega_halfspan > 0.0) sc.grid.big_omega_halfspan = big_omega_halfspan;
        if (big_omega_points > 0) sc.grid.big_omega_points = big_omega_points;
        sc.grid.validate();
        sc.echo = make_echo(sc);
    }
};

void add_grid_flags(CLI::App* cmd, GridOverrides& g) {
    cmd->add_option("--grid-omega-minus-halfspan-rad-s", g.omega_minus_halfspan,
                    "override the f_minus axis halfspan");
    cmd->add_option("--grid-omega-minus-points", g.omega_minus_points,
                    "override the f_minus point count");
    cmd->add_option("--grid-tau-halfspan-ps", g.tau_halfspan_ps,
                    "override the tau axis halfspan");
    cmd->add_option("--grid-tau-points", g.tau_points, "override the tau point count");
    cmd->add_option("--grid-big-omega-halfspan-rad-s", g.big_omega_halfspan,
                    "override the Wigner Omega axis halfspan");
    cmd->add_option("--grid-big-omega-points", g.big_omega_points,
                    "override the Wigner Omega point count");
}

Axis omega_minus_axis(const Scenario& sc) {
    return Axis::symmetric(sc.grid.omega_minus_halfspan, sc.grid.omega_minus_points);
}

void print_kv(std::ostream& out, const std::string& key, double value) {
    out << key << " = " << format_double(value) << "\n";
}

} // namespace

CommandOutcome run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CommandOutcome outcome;
    auto fail = [&](int code, const std::string& msg) {
        outcome.exit_code = code;
        outcome.messages.push_back(msg);
        err << msg << "\n";
        return outcome;
    };

    CLI::App app{"biphoton state synthesis, Wigner functions and HOM tomography"};
    app.require_subcommand(1);

    std::string config_path;
    std::string route_name_arg = "infinite";
    std::string out_path;
    std::string out_prefix;
    bool lambda_units = false;
    double delay_ps = 0.0;
    double shift_rad_s = 0.0;
    int scan_tau_points = 21;
    int scan_omega_points = 21;
    double scan_tau_halfspan_ps = 0.0;
    double scan_omega_halfspan = 0.0;
    GridOverrides grids;

    auto add_common = [&](CLI::App* cmd, bool with_route) {
        cmd->add_option("--config", config_path, "scenario file")->required();
        if (with_route) {
            cmd->add_option("--route", route_name_arg, "f_minus route")
                ->check(CLI::IsMember({"finite", "infinite", "gaussian"}));
        }
        add_grid_flags(cmd, grids);
    };

    CLI::App* validate_cmd = app.add_subcommand("validate", "parse and print derived quantities");
    validate_cmd->add_option("--config", config_path, "scenario file")->required();

    CLI::App* fminus_cmd = app.add_subcommand("fminus", "write the antidiagonal amplitude");
    add_common(fminus_cmd, true);
    fminus_cmd->add_option("--out", out_path, "output CSV")->required();

    CLI::App* jsa_cmd = app.add_subcommand("jsa", "write the joint spectral amplitude");
    add_common(jsa_cmd, true);
    jsa_cmd->add_option("--out", out_path, "output CSV")->required();

    CLI::App* wigner_cmd = app.add_subcommand("wigner", "write the chronocyclic Wigner function");
    add_common(wigner_cmd, true);
    wigner_cmd->add_option("--out", out_path, "output CSV")->required();
    wigner_cmd->add_flag("--lambda-units", lambda_units,
                         "emit the Omega axis in wavelength-equivalent units");

    CLI::App* hom_cmd = app.add_subcommand("hom", "coincidence probability at one displacement");
    add_common(hom_cmd, true);
    hom_cmd->add_option("--delay-ps", delay_ps, "arm delay in ps");
    hom_cmd->add_option("--shift-rad-s", shift_rad_s, "arm frequency shift in rad/s");

    CLI::App* tomo_cmd = app.add_subcommand("tomography", "pump-displacement Wigner scan");
    add_common(tomo_cmd, true);
    tomo_cmd->add_option("--out-prefix", out_prefix, "output file prefix")->required();
    tomo_cmd->add_option("--tau-points", scan_tau_points, "tau targets")
        ->check(CLI::PositiveNumber);
    tomo_cmd->add_option("--omega-points", scan_omega_points, "Omega targets")
        ->check(CLI::PositiveNumber);
    tomo_cmd->add_option("--tau-halfspan-ps", scan_tau_halfspan_ps, "tau target halfspan");
    tomo_cmd->add_option("--omega-halfspan-rad-s", scan_omega_halfspan,
                         "Omega target halfspan");

    std::vector<std::string> args(argv.rbegin(), argv.rend());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        outcome.exit_code = 0;
        return outcome;
    } catch (const CLI::ParseError& e) {
        return fail(1, std::string("usage error: ") + e.what());
    }

    try {
        if (app.got_subcommand(validate_cmd)) {
            const Scenario sc = load_scenario(config_path);
            print_kv(out, "omega_p_rad_s", sc.device.pump_center_omega);
            print_kv(out, "k_deg_rad_m", k_deg(sc.device));
            print_kv(out, "theta_deg_rad", sc.device.theta_deg);
            print_kv(out, "vg_m_per_s", sc.device.group_velocity);
            for (size_t i = 0; i < sc.beams.size(); ++i) {
                const GaussianComponent c = beam_component(sc.beams[i], sc.device);
                const std::string p = "beam" + std::to_string(i + 1) + "_";
                print_kv(out, p + "delta_omega_rad_s", c.width);
                print_kv(out, p + "tau0_s", c.tau0);
                print_kv(out, p + "omega_minus0_rad_s", c.center);
            }
            print_kv(out, "grid_omega_minus_halfspan_rad_s", sc.grid.omega_minus_halfspan);
            print_kv(out, "grid_tau_halfspan_s", sc.grid.tau_halfspan);
            print_kv(out, "grid_big_omega_halfspan_rad_s", sc.grid.big_omega_halfspan);
            return outcome;
        }

        Scenario sc = load_scenario(config_path);
        grids.apply(sc);
        const Route route = route_from_string(route_name_arg);

        if (app.got_subcommand(fminus_cmd)) {
            const SampledComplexFunction f = f_minus_route(sc, route, omega_minus_axis(sc));
            write_complex_function(f, out_path);
            err << "wrote " << out_path << "\n";
        } else if (app.got_subcommand(jsa_cmd)) {
            const JsaGrid jsa = assemble_jsa(sc, route);
            write_complex_grid(jsa.omega_s_axis, jsa.omega_i_axis, jsa.amplitude, out_path,
                               "omega_s_rad_s", "omega_i_rad_s");
            err << "wrote " << out_path << "\n";
        } else if (app.got_subcommand(wigner_cmd)) {
            const SampledComplexFunction f = f_minus_route(sc, route, omega_minus_axis(sc));
            const Axis tau_ax = Axis::symmetric(sc.grid.tau_halfspan, sc.grid.tau_points);
            const Axis om_ax = Axis::symmetric(sc.grid.big_omega_halfspan, sc.grid.big_omega_points);
            RealGrid2D w = wigner_transform(f, tau_ax, om_ax);
            if (lambda_units) {
                const double scale = detuning_to_lambda(1.0, sc.device);
                w.omega_axis.start *= scale;
                w.omega_axis.step *= scale;
                write_real_grid(w, out_path, "tau_s", "lambda_m");
            } else {
                write_real_grid(w, out_path);
            }
            err << "wrote " << out_path << "\n";
        } else if (app.got_subcommand(hom_cmd)) {
            const JsaGrid jsa = assemble_jsa(sc, route);
            const double pc =
                hom_coincidence(jsa, {delay_ps * 1e-12, shift_rad_s, HomRoute::interferometer});
            print_kv(out, "coincidence", pc);
        } else if (app.got_subcommand(tomo_cmd)) {
            const double tau_half = scan_tau_halfspan_ps > 0.0 ? scan_tau_halfspan_ps * 1e-12
                                                               : sc.grid.tau_halfspan;
            const double om_half =
                scan_omega_halfspan > 0.0 ? scan_omega_halfspan : sc.grid.big_omega_halfspan;
            const Axis tau_targets = Axis::inclusive(-tau_half, tau_half, scan_tau_points);
            const Axis om_targets = Axis::inclusive(-om_half, om_half, scan_omega_points);
            const TomographyResult res = tomography_scan(sc, tau_targets, om_targets, route);
            write_real_grid(res.reconstructed, out_prefix + "_reconstructed.csv");
            write_real_grid(res.direct, out_prefix + "_direct.csv");
            double peak = 0.0;
            for (double v : res.direct.values) peak = std::max(peak, std::abs(v));
            std::ostringstream meta;
            meta << "gain = " << format_double(res.affine_gain) << "\n";
            meta << "affine_offset = " << format_double(res.affine_offset) << "\n";
            meta << "offset_tau_s = " << format_double(res.offset_tau) << "\n";
            meta << "offset_omega_rad_s = " << format_double(res.offset_omega) << "\n";
            meta << "max_abs_error = " << format_double(res.max_abs_error) << "\n";
            meta << "rms_error = " << format_double(res.rms_error) << "\n";
            meta << "peak_direct_abs = " << format_double(peak) << "\n";
            meta << "invalid_points = " << res.invalid_count << "\n";
            meta << "route = " << route_name(route) << "\n";
            write_text_atomic(out_prefix + "_meta.txt", meta.str());
            out << meta.str();
            err << "wrote " << out_prefix << "_reconstructed.csv, _direct.csv, _meta.txt\n";
        }
    } catch (const ConfigError& e) {
        return fail(2, std::string("config error: ") + e.what());
    } catch (const IoError& e) {
        return fail(4, std::string("io error: ") + e.what());
    } catch (const NumericError& e) {
        return fail(3, std::string("numerical contract violation: ") + e.what());
    } catch (const std::exception& e) {
        return fail(3, std::string("error: ") + e.what());
    }
    return outcome;
}

} // namespace spdc::cli
