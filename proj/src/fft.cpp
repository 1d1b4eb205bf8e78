#include "elri/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace elri::fft {
namespace {

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct Plan {
    std::size_t n;
    fftw_complex* in;
    fftw_complex* out;
    double* real;
    fftw_plan fwd;
    fftw_plan bwd;
    fftw_plan r2c;
    fftw_plan c2r;

    explicit Plan(std::size_t n_) : n(n_) {
        std::lock_guard lock(planner_mutex());
        in = fftw_alloc_complex(n);
        out = fftw_alloc_complex(n);
        real = fftw_alloc_real(n);
        const int ni = static_cast<int>(n);
        fwd = fftw_plan_dft_1d(ni, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(ni, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
        r2c = fftw_plan_dft_r2c_1d(ni, real, out, FFTW_ESTIMATE);
        c2r = fftw_plan_dft_c2r_1d(ni, in, real, FFTW_ESTIMATE);
    }
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(c2r);
        fftw_destroy_plan(r2c);
        fftw_destroy_plan(bwd);
        fftw_destroy_plan(fwd);
        fftw_free(real);
        fftw_free(out);
        fftw_free(in);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
};

Plan& plan_for(std::size_t n) {
    thread_local std::map<std::size_t, std::unique_ptr<Plan>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<Plan>(n);
    return *slot;
}

}  // namespace

Spectrum forward(std::span<const double> values) {
    const std::size_t n = values.size();
    Plan& p = plan_for(n);
    std::memcpy(p.real, values.data(), n * sizeof(double));
    fftw_execute(p.r2c);
    Spectrum out(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        out[k] = Complex(p.out[k][0] * scale, p.out[k][1] * scale);
    }
    for (std::size_t k = n / 2 + 1; k < n; ++k) out[k] = std::conj(out[n - k]);
    return out;
}

std::vector<double> inverse_real(std::span<const Complex> spectrum) {
    const std::size_t n = spectrum.size();
    Plan& p = plan_for(n);
    std::memcpy(p.in, spectrum.data(), (n / 2 + 1) * sizeof(Complex));
    fftw_execute(p.c2r);
    return std::vector<double>(p.real, p.real + n);
}

std::vector<Complex> inverse(std::span<const Complex> spectrum) {
    const std::size_t n = spectrum.size();
    Plan& p = plan_for(n);
    static_assert(sizeof(fftw_complex) == sizeof(Complex));
    std::memcpy(p.in, spectrum.data(), n * sizeof(Complex));
    fftw_execute(p.bwd);
    std::vector<Complex> out(n);
    std::memcpy(static_cast<void*>(out.data()), p.out, n * sizeof(Complex));
    return out;
}

}  // namespace elri::fft
