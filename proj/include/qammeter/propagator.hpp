#ifndef QAMMETER_PROPAGATOR_HPP
#define QAMMETER_PROPAGATOR_HPP

#include "qammeter/fft.hpp"
#include "qammeter/grid.hpp"
#include "qammeter/potential.hpp"

namespace qam {

/// Symmetric split-operator stepper for i d/dt psi = (K + V) psi:
/// exp(-i V dt/2) exp(-i K dt) exp(-i V dt/2), kinetic part applied in
/// momentum space. Second order in dt; exactly norm-preserving up to
/// rounding. A time-dependent bias is sampled at the midpoint of each step.
class SplitOperator {
public:
    /// Throws if dt <= 0 or dt k_max^2 / (2 m) >= pi (phase aliasing at the
    /// grid Nyquist wavevector).
    SplitOperator(GridPtr grid, double mass, double dt,
                  Backend backend = default_backend());

    void step(Wavefunction& wf, const PotentialProfile& profile, double t);

    /// t_span must be a nonnegative integer multiple of dt (within 1e-9
    /// relative). Returns the time after evolution (t + t_span).
    double evolve(Wavefunction& wf, const PotentialProfile& profile, double t,
                  double t_span);

    double dt() const { return dt_; }
    double mass() const { return mass_; }
    SpectralTransform& transform() { return fft_; }

    /// <K> + <V(t)> for diagnostics; uses the momentum representation for K.
    double energy(const Wavefunction& wf, const PotentialProfile& profile, double t);

private:
    void refresh_potential_phase(const PotentialProfile& profile, double t_mid);

    GridPtr grid_;
    double mass_;
    double dt_;
    Backend backend_;
    SpectralTransform fft_;
    std::vector<cplx> kinetic_phase_;    // exp(-i k^2 dt / (2m)) / n  (inverse-FFT norm folded in)
    std::vector<cplx> potential_phase_;  // exp(-i v dt / 2)
    std::vector<double> v_scratch_;
    std::vector<cplx> work_;
    double phase_bias_ = 0.0;            // bias value baked into potential_phase_
    bool phase_valid_ = false;
};

} // namespace qam

#endif
