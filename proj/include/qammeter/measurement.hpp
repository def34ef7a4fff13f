#ifndef QAMMETER_MEASUREMENT_HPP
#define QAMMETER_MEASUREMENT_HPP

#include <span>

#include "qammeter/fft.hpp"
#include "qammeter/grid.hpp"
#include "qammeter/rng.hpp"

namespace qam {

/// Gaussian ammeter parameters. The measurement strength sigma is specified
/// on the wavevector grid (bohr^-1) and maps to current units through
/// sigma_I = sigma_k / L_x, matching the single-particle eigenvalue relation
/// I(k) = -k / L_x.
struct MeasurementConfig {
    double sigma_k = 0.0;  // bohr^-1
    double tau = 0.0;      // au, lapse between measurements
    double L_x = 0.0;      // bohr, extent of the probe volume along transport
    double epsilon = 1.0;  // permittivity entering the displacement term
    std::uint64_t seed = 0;

    double sigma_current() const { return sigma_k / L_x; }
};

struct CurrentOutcome {
    double value = 0.0; // current, atomic units
    double time = 0.0;  // au
};

/// Single-particle total-current eigenvalue (q = -1, m = 1 units of the
/// operator itself; the carrier mass cancels against p = hbar k).
inline double current_eigenvalue(double k_x, double L_x) { return -k_x / L_x; }

/// (1/L_x) sum_i q_i k_i / m_i. Desk-scale enumerator; equal-length spans.
double multi_particle_eigenvalue(std::span<const double> k,
                                 std::span<const double> q,
                                 std::span<const double> m, double L_x);

/// sum_k I(k) |g(k)|^2 dk for a unit-norm state.
double expectation_current(const Wavefunction& wf, SpectralTransform& fft,
                           double L_x, Backend backend = default_backend());

/// Volume form of the current expectation:
/// Re (1/L_x) integral_{x_a}^{x_b} psi* (-i q/m) d/dx psi dx with q = -1.
/// The derivative is spectral; over the full grid this equals
/// expectation_current by Parseval.
double gamma_q_volume(const Wavefunction& wf, SpectralTransform& fft, double L_x,
                      double x_a, double x_b, double mass = 1.0);

/// -(epsilon / L_x) dV_bias/dt
inline double displacement_term(double epsilon, double L_x, double dvbias_dt) {
    return -(epsilon / L_x) * dvbias_dt;
}

/// Draws an outcome from prob(I) = (1/C^2) sum_k e^{-(I(k)-I)^2/sigma_I^2}
/// |g(k)|^2 dk via the exact mixture decomposition: pick bin k with
/// probability |g(k)|^2 dk, then I ~ Normal(I(k), sigma_I/sqrt(2)).
CurrentOutcome sample_outcome(const Wavefunction& wf, SpectralTransform& fft,
                              const MeasurementConfig& config, CounterRng& rng,
                              double time);

/// Multiplies g(k) by exp(-(I(k)-outcome)^2 / (2 sigma_I^2)) and
/// renormalizes. Throws if the filtered norm underflows (below 1e-300 of
/// unity), signalling an impossible outcome/sigma pairing.
void apply_weak_operator(Wavefunction& wf, SpectralTransform& fft, double outcome,
                         const MeasurementConfig& config,
                         Backend backend = default_backend());

/// Verifies the continuous-outcome completeness identity
/// integral dI e^{-(I(k)-I)^2/sigma_I^2} / C^2 = 1 with C^2 = sigma_I
/// sqrt(pi), by numeric quadrature over [I(k)-10 sigma_I, I(k)+10 sigma_I]
/// for every supplied k. Returns the maximum |deviation|.
double povm_completeness_check(const MeasurementConfig& config,
                               std::span<const double> k_values,
                               int quadrature_points = 16001);

} // namespace qam

#endif
