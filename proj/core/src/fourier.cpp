// fourier.cpp — FFTW backed causal transforms
#include "vibrolang/fourier.hpp"

#include "vibrolang/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace vibrolang::fourier {
namespace {

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace

CausalTransform causal_transform(const std::vector<cplx>& samples, double dt, std::size_t pad_factor,
                                 bool endpoint_correction) {
    if (samples.empty()) throw DomainError("causal_transform: no samples");
    if (!(dt > 0.0)) throw DomainError("causal_transform: dt must be > 0");
    const std::size_t n = samples.size();
    const std::size_t m = next_pow2(std::max<std::size_t>(pad_factor, 1) * n);

    fftw_complex* buf = fftw_alloc_complex(m);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_1d(int(m), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    for (std::size_t i = 0; i < m; ++i) {
        const cplx v = i < n ? samples[i] * (i == 0 ? 0.5 : 1.0) : cplx{};
        buf[i][0] = v.real();
        buf[i][1] = v.imag();
    }
    fftw_execute(plan);

    CausalTransform out;
    out.domega = 2.0 * std::numbers::pi / (double(m) * dt);
    out.omega.resize(m);
    out.value.resize(m);
    const std::size_t half = m / 2;
    for (std::size_t j = 0; j < m; ++j) {
        // ascending order: negative frequencies first
        const std::size_t src = (j + half) % m;
        const long idx = long(j) - long(half);
        out.omega[j] = double(idx) * out.domega;
        out.value[j] = dt * cplx(buf[src][0], buf[src][1]);
    }
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    if (endpoint_correction && n >= 5) {
        const cplx fp0 = (-25.0 * samples[0] + 48.0 * samples[1] - 36.0 * samples[2] + 16.0 * samples[3] -
                          3.0 * samples[4]) / (12.0 * dt);
        const double c = dt * dt / 12.0;
        for (std::size_t j = 0; j < m; ++j) out.value[j] += c * (fp0 + cplx(0.0, out.omega[j]) * samples[0]);
    }
    fftw_free(buf);
    return out;
}

CausalTransform causal_transform(const std::vector<double>& samples, double dt, std::size_t pad_factor,
                                 bool endpoint_correction) {
    std::vector<cplx> c(samples.begin(), samples.end());
    return causal_transform(c, dt, pad_factor, endpoint_correction);
}

std::size_t CausalTransform::index_of(double w) const {
    if (omega.empty()) throw ResolutionError("empty transform");
    const double pos = (w - omega.front()) / domega;
    if (pos < 0.0 || pos > double(omega.size() - 1)) {
        throw ResolutionError("frequency outside the FFT grid");
    }
    return std::size_t(std::llround(pos));
}

cplx CausalTransform::at(double w) const {
    if (omega.size() < 4) throw ResolutionError("transform grid too small for interpolation");
    const double pos = (w - omega.front()) / domega;
    if (pos < 0.0 || pos > double(omega.size() - 1)) {
        throw ResolutionError("frequency outside the FFT grid");
    }
    long i0 = long(std::floor(pos)) - 1;
    i0 = std::clamp(i0, 0L, long(omega.size()) - 4);
    const double x = pos - double(i0);
    cplx acc{};
    for (int a = 0; a < 4; ++a) {
        double l = 1.0;
        for (int b = 0; b < 4; ++b)
            if (b != a) l *= (x - b) / double(a - b);
        acc += l * value[std::size_t(i0 + a)];
    }
    return acc;
}

} // namespace vibrolang::fourier
