#ifndef QAMMETER_GRID_HPP
#define QAMMETER_GRID_HPP

#include <complex>
#include <memory>
#include <vector>

#include "qammeter/kernels.hpp"

namespace qam {

class SpectralTransform;

/// Uniform 1D position grid and its discrete-Fourier dual wavevector grid.
/// All quantities in atomic units (bohr, bohr^-1).
struct Grid {
    int n = 0;
    double x_min = 0.0;
    double x_max = 0.0;
    double dx = 0.0;
    double dk = 0.0;                 // 2*pi / (n*dx)
    std::vector<double> x;           // sample positions
    std::vector<double> k;           // DFT ordering: 0, dk, ..., -dk
};

using GridPtr = std::shared_ptr<const Grid>;

/// n must be a power of two >= 2, x_max > x_min.
GridPtr make_grid(int n_points, double x_min, double x_max);

/// Complex amplitude on a grid, position representation, unit L2 norm
/// (sum |psi_j|^2 dx = 1) after construction and after every renormalizing
/// operation.
struct Wavefunction {
    GridPtr grid;
    std::vector<cplx> psi;
};

struct WavepacketSpec {
    double center = 0.0;    // bohr
    double sigma_x = 0.0;   // bohr, spatial dispersion
    double k0 = 0.0;        // bohr^-1, central wavevector
};

/// psi_j ~ exp(-(x_j - x0)^2 / (4 sigma_x^2)) exp(i k0 x_j), normalized.
/// Throws if sigma_x <= 0 or the tail mass outside [x_min, x_max]
/// exceeds 1e-8.
Wavefunction gaussian_packet(const GridPtr& grid, const WavepacketSpec& spec);

double norm_l2(const Wavefunction& wf, Backend backend = default_backend());
void renormalize(Wavefunction& wf, Backend backend = default_backend());

/// Momentum coefficients g(k) with the continuum-unitary convention
/// g = DFT(psi) * dx / sqrt(2*pi), so that sum |g|^2 dk = sum |psi|^2 dx.
std::vector<cplx> to_momentum(const Wavefunction& wf, SpectralTransform& fft);
Wavefunction from_momentum(const GridPtr& grid, const std::vector<cplx>& g,
                           SpectralTransform& fft);

/// sum_k k |g(k)|^2 dk for a unit-norm state.
double mean_wavevector(const Wavefunction& wf, SpectralTransform& fft,
                       Backend backend = default_backend());

} // namespace qam

#endif
