#ifndef SPDC_TEST_HELPERS_HPP
#define SPDC_TEST_HELPERS_HPP

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "spdc/biphoton.hpp"
#include "spdc/config.hpp"

namespace th {

inline std::filesystem::path config_dir() { return SPDC_CONFIG_DIR; }
inline std::filesystem::path corpus_dir() { return SPDC_CORPUS_DIR; }

inline spdc::Scenario from_config(const std::string& name) {
    return spdc::load_scenario(config_dir() / name);
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

// sup |a - b| / sup |b| over two equally sized fields
inline double sup_rel(const std::vector<double>& a, const std::vector<double>& b) {
    double diff = 0.0, peak = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        diff = std::max(diff, std::abs(a[i] - b[i]));
        peak = std::max(peak, std::abs(b[i]));
    }
    return peak > 0.0 ? diff / peak : diff;
}

inline double sup_rel_c(const std::vector<spdc::cd>& a, const std::vector<spdc::cd>& b) {
    double diff = 0.0, peak = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        diff = std::max(diff, std::abs(a[i] - b[i]));
        peak = std::max(peak, std::abs(b[i]));
    }
    return peak > 0.0 ? diff / peak : diff;
}

// scratch directory for file-writing tests
inline std::filesystem::path scratch_dir() {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("spdc_tests_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

// Frozen reference values (independent high-precision evaluation).
namespace ref {
inline constexpr double omega_p_775 = 2430518151366262.0;       // rad/s
inline constexpr double k_deg_2726urad = 22100.57023765177;     // rad/m
inline constexpr double k_deg_937arcmin = 22097.509852940173;   // rad/m
inline constexpr double arcmin_937 = 0.002725622515197811;      // rad
inline constexpr double detuning_937arcmin = 2046231945963.6782; // rad/s
inline constexpr double detuning_5arcmin = 1091906054409.6471;  // rad/s
inline constexpr double delay_1mm = 1.0799136069114472e-11;     // s
inline constexpr double lambda_1e12 = 1.275448199494994e-09;    // m
inline constexpr double cat_overlap = 3.7269992544636134e-06;
inline constexpr double delta_omega_fig1 = 925996560366.7512;   // rad/s
inline constexpr double wigner_fringe_cat = 581822959444.8296;  // rad/s
} // namespace ref

} // namespace th

#endif
