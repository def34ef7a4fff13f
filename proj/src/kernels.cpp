#include "qammeter/kernels.hpp"

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qam {

namespace {
Backend g_default_backend = Backend::openmp;
}

Backend default_backend() { return g_default_backend; }
void set_default_backend(Backend b) { g_default_backend = b; }

namespace kernels {

namespace {

constexpr std::size_t kBlock = 4096;     // reduction block, fixed for determinism
constexpr std::size_t kLeaf = 64;        // below this, sum serially

template <class F>
double pairwise_sum(std::size_t begin, std::size_t end, const F& value) {
    const std::size_t n = end - begin;
    if (n <= kLeaf) {
        double s = 0.0;
        for (std::size_t i = begin; i < end; ++i) s += value(i);
        return s;
    }
    const std::size_t mid = begin + n / 2;
    return pairwise_sum(begin, mid, value) + pairwise_sum(mid, end, value);
}

// Pairwise over fixed blocks; the block decomposition does not depend on the
// thread count, so serial and OpenMP results are bit-identical.
template <class F>
double blocked_sum(std::size_t n, const F& value, Backend backend) {
    if (n == 0) return 0.0;
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    if (nblocks == 1) return pairwise_sum(0, n, value);

    std::vector<double> partial(nblocks);
    if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
        for (long b = 0; b < static_cast<long>(nblocks); ++b) {
            const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
            const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
            partial[static_cast<std::size_t>(b)] = pairwise_sum(lo, hi, value);
        }
    } else {
        for (std::size_t b = 0; b < nblocks; ++b) {
            const std::size_t lo = b * kBlock;
            const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
            partial[b] = pairwise_sum(lo, hi, value);
        }
    }
    return pairwise_sum(0, nblocks, [&](std::size_t i) { return partial[i]; });
}

} // namespace

void multiply(cplx* a, const cplx* b, std::size_t n, Backend backend) {
    if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(n); ++i) a[i] *= b[i];
    } else {
        for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
    }
}

void multiply_real(cplx* a, const double* f, std::size_t n, Backend backend) {
    if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(n); ++i) a[i] *= f[i];
    } else {
        for (std::size_t i = 0; i < n; ++i) a[i] *= f[i];
    }
}

void scale(cplx* a, double s, std::size_t n, Backend backend) {
    if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(n); ++i) a[i] *= s;
    } else {
        for (std::size_t i = 0; i < n; ++i) a[i] *= s;
    }
}

double deterministic_sum(const double* v, std::size_t n, Backend backend) {
    return blocked_sum(n, [&](std::size_t i) { return v[i]; }, backend);
}

double sum_abs2(const cplx* a, std::size_t n, Backend backend) {
    return blocked_sum(
        n, [&](std::size_t i) { return a[i].real() * a[i].real() + a[i].imag() * a[i].imag(); },
        backend);
}

double weighted_abs2_sum(const cplx* a, const double* w, std::size_t n, Backend backend) {
    return blocked_sum(
        n,
        [&](std::size_t i) {
            return w[i] * (a[i].real() * a[i].real() + a[i].imag() * a[i].imag());
        },
        backend);
}

} // namespace kernels
} // namespace qam
