#include "spdc/axis.hpp"

#include <cmath>

namespace spdc {

double SampledComplexFunction::l2_norm() const {
    double acc = 0.0;
    for (const cd& v : values) acc += std::norm(v);
    return std::sqrt(acc * axis.step);
}

void SampledComplexFunction::normalize() {
    const double nrm = l2_norm();
    if (nrm == 0.0) return;
    const double inv = 1.0 / nrm;
    for (cd& v : values) v *= inv;
}

} // namespace spdc
