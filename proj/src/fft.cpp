#include "spdc/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "spdc/core.hpp"

namespace spdc {

namespace {

// FFTW plan creation is not thread-safe; executions on distinct arrays are.
// Plans are created with FFTW_UNALIGNED so they can run on any buffer.
class PlanCache {
public:
    fftw_plan get(int n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cd> dummy(static_cast<size_t>(n));
        fftw_plan p = fftw_plan_dft_1d(
            n, reinterpret_cast<fftw_complex*>(dummy.data()),
            reinterpret_cast<fftw_complex*>(dummy.data()),
            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

} // namespace

void fft(std::vector<cd>& data, int sign) {
    const int n = static_cast<int>(data.size());
    if (n == 0) return;
    fftw_plan p = plan_cache().get(n, sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data.data()),
                     reinterpret_cast<fftw_complex*>(data.data()));
    if (sign > 0) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& v : data) v *= inv;
    }
}

std::vector<cd> fourier_shift(const std::vector<cd>& samples, double step, double shift) {
    const int n = static_cast<int>(samples.size());
    std::vector<cd> out = samples;
    if (n == 0 || shift == 0.0) return out;
    fft(out, -1);
    const double base = 2.0 * pi / (step * static_cast<double>(n));
    for (int k = 0; k < n; ++k) {
        if (2 * k == n) {
            // Nyquist bin: split evenly between +/- frequencies.
            out[k] *= std::cos(pi * shift / step);
            continue;
        }
        const int ksigned = (2 * k < n) ? k : k - n;
        const double phase = base * static_cast<double>(ksigned) * shift;
        out[k] *= cd(std::cos(phase), std::sin(phase));
    }
    fft(out, +1);
    return out;
}

} // namespace spdc
