#include "qammeter/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace qam {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

SpectralTransform::SpectralTransform(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("SpectralTransform: n must be >= 2");
    buf_in_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(fftw_complex) * n));
    buf_out_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!buf_in_ || !buf_out_) throw std::bad_alloc();

    // FFTW_ESTIMATE keeps the plan choice deterministic for a given size.
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_fwd_ = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(buf_in_),
                                 reinterpret_cast<fftw_complex*>(buf_out_),
                                 FFTW_FORWARD, FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(buf_in_),
                                 reinterpret_cast<fftw_complex*>(buf_out_),
                                 FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan_fwd_ || !plan_inv_) throw std::runtime_error("fftw_plan_dft_1d failed");
}

SpectralTransform::~SpectralTransform() {
    if (plan_fwd_ || plan_inv_) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
        if (plan_inv_) fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    }
    if (buf_in_) fftw_free(buf_in_);
    if (buf_out_) fftw_free(buf_out_);
}

SpectralTransform::SpectralTransform(SpectralTransform&& other) noexcept {
    *this = std::move(other);
}

SpectralTransform& SpectralTransform::operator=(SpectralTransform&& other) noexcept {
    std::swap(n_, other.n_);
    std::swap(plan_fwd_, other.plan_fwd_);
    std::swap(plan_inv_, other.plan_inv_);
    std::swap(buf_in_, other.buf_in_);
    std::swap(buf_out_, other.buf_out_);
    return *this;
}

void SpectralTransform::forward(const cplx* in, cplx* out) {
    // Go through the aligned plan buffers so results do not depend on the
    // alignment of caller memory.
    std::memcpy(buf_in_, in, sizeof(cplx) * n_);
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    std::memcpy(out, buf_out_, sizeof(cplx) * n_);
}

void SpectralTransform::inverse(const cplx* in, cplx* out) {
    std::memcpy(buf_in_, in, sizeof(cplx) * n_);
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    std::memcpy(out, buf_out_, sizeof(cplx) * n_);
}

} // namespace qam
