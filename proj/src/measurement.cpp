#include "qammeter/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qam {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double multi_particle_eigenvalue(std::span<const double> k,
                                 std::span<const double> q,
                                 std::span<const double> m, double L_x) {
    if (k.size() != q.size() || k.size() != m.size())
        throw std::invalid_argument("multi_particle_eigenvalue: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) s += q[i] * k[i] / m[i];
    return s / L_x;
}

double expectation_current(const Wavefunction& wf, SpectralTransform& fft,
                           double L_x, Backend backend) {
    const std::vector<cplx> g = to_momentum(wf, fft);
    const Grid& grid = *wf.grid;
    std::vector<double> eig(grid.n);
    for (int j = 0; j < grid.n; ++j) eig[j] = current_eigenvalue(grid.k[j], L_x);
    const double num =
        kernels::weighted_abs2_sum(g.data(), eig.data(), g.size(), backend);
    const double den = kernels::sum_abs2(g.data(), g.size(), backend);
    return num / den;
}

double gamma_q_volume(const Wavefunction& wf, SpectralTransform& fft, double L_x,
                      double x_a, double x_b, double mass) {
    const Grid& grid = *wf.grid;
    if (x_a < grid.x_min || x_b > grid.x_max || x_b < x_a)
        throw std::invalid_argument("gamma_q_volume: volume outside the grid");

    // spectral derivative: dpsi/dx = IDFT(i k DFT(psi)) / n
    std::vector<cplx> work(grid.n), dpsi(grid.n);
    fft.forward(wf.psi.data(), work.data());
    for (int j = 0; j < grid.n; ++j)
        work[j] *= cplx(0.0, grid.k[j] / grid.n);
    fft.inverse(work.data(), dpsi.data());

    // q = -1: integrand = Re[ psi^* (+i/m) dpsi/dx ]
    double acc = 0.0;
    for (int j = 0; j < grid.n; ++j) {
        if (grid.x[j] < x_a || grid.x[j] > x_b) continue;
        const cplx val = std::conj(wf.psi[j]) * cplx(0.0, 1.0 / mass) * dpsi[j];
        acc += val.real();
    }
    return acc * grid.dx / L_x;
}

CurrentOutcome sample_outcome(const Wavefunction& wf, SpectralTransform& fft,
                              const MeasurementConfig& config, CounterRng& rng,
                              double time) {
    const std::vector<cplx> g = to_momentum(wf, fft);
    const Grid& grid = *wf.grid;

    double total = 0.0;
    for (int j = 0; j < grid.n; ++j) total += std::norm(g[j]);
    const double u = rng.next_double() * total;

    int pick = grid.n - 1;
    double cum = 0.0;
    for (int j = 0; j < grid.n; ++j) {
        cum += std::norm(g[j]);
        if (u < cum) {
            pick = j;
            break;
        }
    }

    const double mean = current_eigenvalue(grid.k[pick], config.L_x);
    const double std_dev = config.sigma_current() / std::sqrt(2.0);
    CurrentOutcome out;
    out.value = mean + std_dev * rng.next_normal();
    out.time = time;
    return out;
}

void apply_weak_operator(Wavefunction& wf, SpectralTransform& fft, double outcome,
                         const MeasurementConfig& config, Backend backend) {
    const Grid& grid = *wf.grid;
    std::vector<cplx> g = to_momentum(wf, fft);

    // Work in wavevector units: (I(k) - outcome)^2 / (2 sigma_I^2)
    //                          = (k + outcome L_x)^2 / (2 sigma_k^2)
    const double k_center = -outcome * config.L_x;
    std::vector<double> filter(grid.n);
    for (int j = 0; j < grid.n; ++j) {
        const double d = grid.k[j] - k_center;
        filter[j] = std::exp(-d * d / (2.0 * config.sigma_k * config.sigma_k));
    }
    kernels::multiply_real(g.data(), filter.data(), g.size(), backend);

    const double norm_sq = kernels::sum_abs2(g.data(), g.size(), backend) * grid.dk;
    if (!(norm_sq > 1e-300))
        throw std::runtime_error(
            "apply_weak_operator: filtered norm underflow (outcome incompatible with the state)");
    kernels::scale(g.data(), 1.0 / std::sqrt(norm_sq), g.size(), backend);

    Wavefunction updated = from_momentum(wf.grid, g, fft);
    wf.psi = std::move(updated.psi);
    renormalize(wf, backend);
}

double povm_completeness_check(const MeasurementConfig& config,
                               std::span<const double> k_values,
                               int quadrature_points) {
    const double sigma_i = config.sigma_current();
    const double c_sq = sigma_i * std::sqrt(kPi);
    double worst = 0.0;
    for (const double k : k_values) {
        const double center = current_eigenvalue(k, config.L_x);
        const double lo = center - 10.0 * sigma_i;
        const double hi = center + 10.0 * sigma_i;
        const int n = quadrature_points | 1; // Simpson needs odd count
        const double h = (hi - lo) / (n - 1);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double s = lo + i * h;
            const double d = s - center;
            const double f = std::exp(-d * d / (sigma_i * sigma_i));
            const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            sum += w * f;
        }
        const double integral = sum * h / 3.0 / c_sq;
        worst = std::max(worst, std::abs(integral - 1.0));
    }
    return worst;
}

} // namespace qam
