#ifndef SPDC_AXIS_HPP
#define SPDC_AXIS_HPP

#include <complex>
#include <vector>

namespace spdc {

using cd = std::complex<double>;

// Uniformly sampled 1-D axis: nodes start + i*step, i = 0..n-1.
struct Axis {
    double start = 0.0;
    double step = 0.0;
    int n = 0;

    double value(int i) const { return start + step * static_cast<double>(i); }
    double min() const { return start; }
    double max() const { return value(n - 1); }
    double span() const { return step * static_cast<double>(n - 1); }

    // Symmetric axis covering [-halfspan, halfspan) with an even point count;
    // node n/2 sits exactly at zero.
    static Axis symmetric(double halfspan, int n) {
        return Axis{-halfspan, 2.0 * halfspan / static_cast<double>(n), n};
    }

    // Inclusive axis over [lo, hi] with n nodes (n >= 2).
    static Axis inclusive(double lo, double hi, int n) {
        return Axis{lo, (hi - lo) / static_cast<double>(n - 1), n};
    }

    bool operator==(const Axis&) const = default;
};

// Uniformly sampled complex amplitude over one real axis.
struct SampledComplexFunction {
    Axis axis;
    std::vector<cd> values;

    // L2 norm in the continuum sense: sqrt(sum |v|^2 * step).
    double l2_norm() const;
    void normalize();
};

// Real-valued function sampled over (tau, omega); tau is the outer (row) index.
struct RealGrid2D {
    Axis tau_axis;
    Axis omega_axis;
    std::vector<double> values; // row-major, size tau_axis.n * omega_axis.n

    double& at(int it, int iw) { return values[static_cast<size_t>(it) * omega_axis.n + iw]; }
    double at(int it, int iw) const { return values[static_cast<size_t>(it) * omega_axis.n + iw]; }
    double cell_area() const { return tau_axis.step * omega_axis.step; }
};

} // namespace spdc

#endif
