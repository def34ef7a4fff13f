#include "qammeter/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "qammeter/fft.hpp"

namespace qam {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }
} // namespace

GridPtr make_grid(int n_points, double x_min, double x_max) {
    if (!is_power_of_two(n_points))
        throw std::invalid_argument("make_grid: n_points must be a power of two >= 2");
    if (!(x_max > x_min))
        throw std::invalid_argument("make_grid: x_max must exceed x_min");

    auto g = std::make_shared<Grid>();
    g->n = n_points;
    g->x_min = x_min;
    g->x_max = x_max;
    g->dx = (x_max - x_min) / n_points;
    g->dk = 2.0 * kPi / (n_points * g->dx);
    g->x.resize(n_points);
    g->k.resize(n_points);
    for (int j = 0; j < n_points; ++j) {
        g->x[j] = x_min + j * g->dx;
        // DFT ordering: 0 .. n/2-1 positive, then negative frequencies.
        const int m = j < n_points / 2 ? j : j - n_points;
        g->k[j] = m * g->dk;
    }
    return g;
}

double norm_l2(const Wavefunction& wf, Backend backend) {
    return std::sqrt(kernels::sum_abs2(wf.psi.data(), wf.psi.size(), backend) * wf.grid->dx);
}

void renormalize(Wavefunction& wf, Backend backend) {
    const double nrm = norm_l2(wf, backend);
    if (!(nrm > 0.0))
        throw std::runtime_error("renormalize: zero-norm state");
    kernels::scale(wf.psi.data(), 1.0 / nrm, wf.psi.size(), backend);
}

Wavefunction gaussian_packet(const GridPtr& grid, const WavepacketSpec& spec) {
    if (!(spec.sigma_x > 0.0))
        throw std::invalid_argument("gaussian_packet: sigma_x must be positive");

    // Analytic tail mass outside [x_min, x_max] for the continuum packet.
    const double s = spec.sigma_x;
    const double zl = (grid->x_min - spec.center) / (std::sqrt(2.0) * s);
    const double zr = (spec.center - grid->x_max) / (std::sqrt(2.0) * s);
    const double tail = 0.5 * (std::erfc(-zl) + std::erfc(-zr));
    if (tail >= 1e-8)
        throw std::invalid_argument("gaussian_packet: packet tail mass outside the grid exceeds 1e-8");

    Wavefunction wf;
    wf.grid = grid;
    wf.psi.resize(grid->n);
    for (int j = 0; j < grid->n; ++j) {
        const double u = grid->x[j] - spec.center;
        const double env = std::exp(-u * u / (4.0 * s * s));
        wf.psi[j] = env * std::polar(1.0, spec.k0 * grid->x[j]);
    }
    renormalize(wf);
    return wf;
}

std::vector<cplx> to_momentum(const Wavefunction& wf, SpectralTransform& fft) {
    if (fft.size() != wf.grid->n)
        throw std::invalid_argument("to_momentum: transform size mismatch");
    std::vector<cplx> g(wf.grid->n);
    fft.forward(wf.psi.data(), g.data());
    const double scale = wf.grid->dx / std::sqrt(2.0 * kPi);
    kernels::scale(g.data(), scale, g.size(), default_backend());
    return g;
}

Wavefunction from_momentum(const GridPtr& grid, const std::vector<cplx>& g,
                           SpectralTransform& fft) {
    if (static_cast<int>(g.size()) != grid->n || fft.size() != grid->n)
        throw std::invalid_argument("from_momentum: size mismatch");
    Wavefunction wf;
    wf.grid = grid;
    wf.psi.resize(grid->n);
    fft.inverse(g.data(), wf.psi.data());
    const double scale = grid->dk / std::sqrt(2.0 * kPi);
    kernels::scale(wf.psi.data(), scale, wf.psi.size(), default_backend());
    return wf;
}

double mean_wavevector(const Wavefunction& wf, SpectralTransform& fft, Backend backend) {
    const std::vector<cplx> g = to_momentum(wf, fft);
    const double num =
        kernels::weighted_abs2_sum(g.data(), wf.grid->k.data(), g.size(), backend);
    const double den = kernels::sum_abs2(g.data(), g.size(), backend);
    return num / den;
}

} // namespace qam
