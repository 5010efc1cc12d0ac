#ifndef SPDC_FFT_HPP
#define SPDC_FFT_HPP

#include <vector>

#include "spdc/axis.hpp"

namespace spdc {

// In-place complex DFT; sign -1 = forward, +1 = inverse (inverse is scaled by 1/n).
void fft(std::vector<cd>& data, int sign);

// Samples of the band-limited interpolant at x_i + shift, given samples on a
// uniform grid of the given step.  Exact for signals oversampled beyond
// Nyquist whose endpoint values have decayed to zero.
std::vector<cd> fourier_shift(const std::vector<cd>& samples, double step, double shift);

} // namespace spdc

#endif
