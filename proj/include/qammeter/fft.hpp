#ifndef QAMMETER_FFT_HPP
#define QAMMETER_FFT_HPP

#include <complex>
#include <cstddef>

#include "qammeter/kernels.hpp"

namespace qam {

/// Per-trajectory FFT scratch (FFTW plans plus aligned buffers).
/// Plan creation is serialized internally; execution is thread-safe as long
/// as each thread owns its own instance. Not copyable.
class SpectralTransform {
public:
    explicit SpectralTransform(int n);
    ~SpectralTransform();

    SpectralTransform(const SpectralTransform&) = delete;
    SpectralTransform& operator=(const SpectralTransform&) = delete;
    SpectralTransform(SpectralTransform&& other) noexcept;
    SpectralTransform& operator=(SpectralTransform&& other) noexcept;

    int size() const { return n_; }

    /// out = unnormalized forward DFT of in (e^{-2*pi*i jm/N} convention).
    void forward(const cplx* in, cplx* out);
    /// out = unnormalized inverse DFT of in (no 1/N factor).
    void inverse(const cplx* in, cplx* out);

private:
    int n_ = 0;
    void* plan_fwd_ = nullptr;
    void* plan_inv_ = nullptr;
    cplx* buf_in_ = nullptr;
    cplx* buf_out_ = nullptr;
};

} // namespace qam

#endif
