#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "spdc/biphoton.hpp"
#include "spdc/cli.hpp"
#include "spdc/config.hpp"
#include "spdc/hom.hpp"
#include "spdc/wigner.hpp"

namespace py = pybind11;
using namespace spdc;

namespace {

py::array_t<double> axis_array(const Axis& ax) {
    py::array_t<double> out(ax.n);
    double* p = out.mutable_data();
    for (int i = 0; i < ax.n; ++i) p[i] = ax.value(i);
    return out;
}

py::array_t<double> grid_array(const RealGrid2D& g) {
    py::array_t<double> out({g.tau_axis.n, g.omega_axis.n});
    double* p = out.mutable_data();
    std::copy(g.values.begin(), g.values.end(), p);
    return out;
}

Scenario scenario_from_text(const std::string& text) { return parse_scenario(text); }

Axis omega_axis_of(const Scenario& sc) {
    return Axis::symmetric(sc.grid.omega_minus_halfspan, sc.grid.omega_minus_points);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "biphoton SPDC state synthesis, chronocyclic Wigner functions and "
              "pump-displacement HOM tomography";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<NumericError>(m, "NumericError");

    m.def("arcmin_to_rad", &arcmin_to_rad, py::arg("arcmin"));

    m.def(
        "validate",
        [](const std::string& text) {
            const Scenario sc = scenario_from_text(text);
            py::dict d;
            d["omega_p_rad_s"] = sc.device.pump_center_omega;
            d["k_deg_rad_m"] = k_deg(sc.device);
            d["vg_m_per_s"] = sc.device.group_velocity;
            py::list beams;
            for (const BeamSpec& b : sc.beams) {
                const GaussianComponent c = beam_component(b, sc.device);
                py::dict bd;
                bd["delta_omega_rad_s"] = c.width;
                bd["tau0_s"] = c.tau0;
                bd["omega_minus0_rad_s"] = c.center;
                beams.append(bd);
            }
            d["beams"] = beams;
            return d;
        },
        py::arg("config_text"), "parses a scenario and returns derived quantities");

    m.def(
        "canonical",
        [](const std::string& text) { return serialize_scenario(parse_scenario(text)); },
        py::arg("config_text"), "pretty-printer normalized form of a scenario");

    m.def(
        "f_minus",
        [](const std::string& text, const std::string& route) {
            const Scenario sc = scenario_from_text(text);
            const SampledComplexFunction f =
                f_minus_route(sc, route_from_string(route), omega_axis_of(sc));
            py::array_t<std::complex<double>> vals(f.axis.n);
            std::copy(f.values.begin(), f.values.end(), vals.mutable_data());
            return py::make_tuple(axis_array(f.axis), vals);
        },
        py::arg("config_text"), py::arg("route") = "infinite",
        "antidiagonal amplitude on the scenario grid (axis, values)");

    m.def(
        "wigner",
        [](const std::string& text, const std::string& route) {
            const Scenario sc = scenario_from_text(text);
            const SampledComplexFunction f =
                f_minus_route(sc, route_from_string(route), omega_axis_of(sc));
            const Axis tau_ax = Axis::symmetric(sc.grid.tau_halfspan, sc.grid.tau_points);
            const Axis om_ax =
                Axis::symmetric(sc.grid.big_omega_halfspan, sc.grid.big_omega_points);
            const RealGrid2D w = wigner_transform(f, tau_ax, om_ax);
            return py::make_tuple(axis_array(tau_ax), axis_array(om_ax), grid_array(w));
        },
        py::arg("config_text"), py::arg("route") = "infinite",
        "(tau_axis, omega_axis, W) of the scenario state");

    m.def(
        "wigner_oracle",
        [](const std::string& text) {
            const Scenario sc = scenario_from_text(text);
            const Axis tau_ax = Axis::symmetric(sc.grid.tau_halfspan, sc.grid.tau_points);
            const Axis om_ax =
                Axis::symmetric(sc.grid.big_omega_halfspan, sc.grid.big_omega_points);
            const RealGrid2D w = wigner_multibeam_oracle(sc.beams, sc.device, tau_ax, om_ax);
            return py::make_tuple(axis_array(tau_ax), axis_array(om_ax), grid_array(w));
        },
        py::arg("config_text"), "analytic multi-beam Wigner function on the scenario grid");

    m.def(
        "hom_coincidence",
        [](const std::string& text, double delay_s, double shift_rad_s,
           const std::string& route) {
            const Scenario sc = scenario_from_text(text);
            const JsaGrid jsa = assemble_jsa(sc, route_from_string(route));
            return hom_coincidence(jsa, {delay_s, shift_rad_s, HomRoute::interferometer});
        },
        py::arg("config_text"), py::arg("delay_s") = 0.0, py::arg("shift_rad_s") = 0.0,
        py::arg("route") = "infinite", "HOM coincidence probability");

    m.def(
        "component_overlap",
        [](const std::string& text, int a, int b) {
            const Scenario sc = scenario_from_text(text);
            if (a < 0 || b < 0 || a >= static_cast<int>(sc.beams.size()) ||
                b >= static_cast<int>(sc.beams.size())) {
                throw py::index_error("beam index out of range");
            }
            return component_overlap(sc.beams[static_cast<size_t>(a)],
                                     sc.beams[static_cast<size_t>(b)], sc.device);
        },
        py::arg("config_text"), py::arg("beam_a"), py::arg("beam_b"),
        "overlap magnitude of two beam components");

    m.def(
        "tomography",
        [](const std::string& text, int tau_points, int omega_points, double tau_halfspan_s,
           double omega_halfspan, const std::string& route) {
            const Scenario sc = scenario_from_text(text);
            const double th = tau_halfspan_s > 0.0 ? tau_halfspan_s : sc.grid.tau_halfspan;
            const double oh =
                omega_halfspan > 0.0 ? omega_halfspan : sc.grid.big_omega_halfspan;
            const TomographyResult res =
                tomography_scan(sc, Axis::inclusive(-th, th, tau_points),
                                Axis::inclusive(-oh, oh, omega_points),
                                route_from_string(route));
            py::dict d;
            d["tau_axis"] = axis_array(res.reconstructed.tau_axis);
            d["omega_axis"] = axis_array(res.reconstructed.omega_axis);
            d["reconstructed"] = grid_array(res.reconstructed);
            d["direct"] = grid_array(res.direct);
            d["gain"] = res.affine_gain;
            d["max_abs_error"] = res.max_abs_error;
            d["rms_error"] = res.rms_error;
            d["invalid_points"] = res.invalid_count;
            return d;
        },
        py::arg("config_text"), py::arg("tau_points") = 21, py::arg("omega_points") = 21,
        py::arg("tau_halfspan_s") = 0.0, py::arg("omega_halfspan_rad_s") = 0.0,
        py::arg("route") = "infinite", "pump-displacement Wigner reconstruction");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& argv) {
            std::ostringstream out;
            std::ostringstream err;
            const auto outcome = spdc::cli::run(argv, out, err);
            return py::make_tuple(outcome.exit_code, out.str(), err.str());
        },
        py::arg("argv"), "(exit_code, stdout, stderr) of one CLI invocation");
}
