#ifndef QAMMETER_KERNELS_HPP
#define QAMMETER_KERNELS_HPP

#include <complex>
#include <cstddef>

namespace qam {

using cplx = std::complex<double>;

/// Backend for the data-parallel inner loops. The serial backend is the
/// reference implementation; the OpenMP backend must produce bit-identical
/// results for any thread count (element-wise maps are trivially so,
/// reductions use a fixed pairwise blocking independent of the schedule).
enum class Backend { serial, openmp };

Backend default_backend();
void set_default_backend(Backend b);

namespace kernels {

// a[i] *= b[i]
void multiply(cplx* a, const cplx* b, std::size_t n, Backend backend);
// a[i] *= f[i]
void multiply_real(cplx* a, const double* f, std::size_t n, Backend backend);
// a[i] *= s
void scale(cplx* a, double s, std::size_t n, Backend backend);

/// Schedule-independent sum: values are grouped into fixed-size blocks,
/// each block is summed pairwise, and block results are combined pairwise.
double deterministic_sum(const double* v, std::size_t n, Backend backend);

// sum_i |a_i|^2, deterministic as above
double sum_abs2(const cplx* a, std::size_t n, Backend backend);
// sum_i w_i |a_i|^2
double weighted_abs2_sum(const cplx* a, const double* w, std::size_t n, Backend backend);

} // namespace kernels
} // namespace qam

#endif
