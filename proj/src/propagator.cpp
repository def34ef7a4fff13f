#include "qammeter/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace qam {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

SplitOperator::SplitOperator(GridPtr grid, double mass, double dt, Backend backend)
    : grid_(std::move(grid)), mass_(mass), dt_(dt), backend_(backend),
      fft_(grid_->n) {
    if (!(dt > 0.0)) throw std::invalid_argument("SplitOperator: dt must be positive");
    if (!(mass > 0.0)) throw std::invalid_argument("SplitOperator: mass must be positive");
    const double k_max = kPi / grid_->dx;
    if (dt * k_max * k_max / (2.0 * mass) >= kPi)
        throw std::invalid_argument(
            "SplitOperator: dt violates the Nyquist phase-aliasing bound dt*k_max^2/(2m) < pi");

    kinetic_phase_.resize(grid_->n);
    const double inv_n = 1.0 / grid_->n;
    for (int j = 0; j < grid_->n; ++j) {
        const double k = grid_->k[j];
        kinetic_phase_[j] = std::polar(inv_n, -k * k * dt / (2.0 * mass));
    }
    potential_phase_.resize(grid_->n);
    work_.resize(grid_->n);
}

void SplitOperator::refresh_potential_phase(const PotentialProfile& profile,
                                            double t_mid) {
    const double vb = profile.bias_at(t_mid);
    if (phase_valid_ && vb == phase_bias_) return;
    profile.potential_at(t_mid, v_scratch_);
    for (int j = 0; j < grid_->n; ++j)
        potential_phase_[j] = std::polar(1.0, -v_scratch_[j] * dt_ / 2.0);
    phase_bias_ = vb;
    phase_valid_ = true;
}

void SplitOperator::step(Wavefunction& wf, const PotentialProfile& profile, double t) {
    refresh_potential_phase(profile, t + dt_ / 2.0);
    const std::size_t n = wf.psi.size();
    kernels::multiply(wf.psi.data(), potential_phase_.data(), n, backend_);
    fft_.forward(wf.psi.data(), work_.data());
    kernels::multiply(work_.data(), kinetic_phase_.data(), n, backend_);
    fft_.inverse(work_.data(), wf.psi.data());
    kernels::multiply(wf.psi.data(), potential_phase_.data(), n, backend_);
}

double SplitOperator::evolve(Wavefunction& wf, const PotentialProfile& profile,
                             double t, double t_span) {
    if (t_span < 0.0) throw std::invalid_argument("evolve: negative time span");
    const double steps_real = t_span / dt_;
    const long steps = std::lround(steps_real);
    if (std::abs(steps_real - steps) > 1e-9 * (std::abs(steps_real) + 1.0))
        throw std::invalid_argument("evolve: t_span is not an integer multiple of dt");
    for (long i = 0; i < steps; ++i) step(wf, profile, t + i * dt_);
    return t + steps * dt_;
}

double SplitOperator::energy(const Wavefunction& wf, const PotentialProfile& profile,
                             double t) {
    const std::size_t n = wf.psi.size();
    fft_.forward(wf.psi.data(), work_.data());
    double kin = 0.0;
    {
        std::vector<double> w(n);
        for (std::size_t j = 0; j < n; ++j)
            w[j] = grid_->k[j] * grid_->k[j] / (2.0 * mass_);
        // |G|^2 carries an n^2 factor relative to |g|^2 dk integral weights
        const double scale = grid_->dx / (2.0 * kPi) * grid_->dk;
        kin = kernels::weighted_abs2_sum(work_.data(), w.data(), n, backend_) * scale *
              grid_->dx;
    }
    profile.potential_at(t, v_scratch_);
    const double pot =
        kernels::weighted_abs2_sum(wf.psi.data(), v_scratch_.data(), n, backend_) *
        grid_->dx;
    return kin + pot;
}

} // namespace qam
