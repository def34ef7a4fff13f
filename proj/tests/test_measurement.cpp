#include <doctest.h>

#include <cmath>
#include <vector>

#include "qammeter/measurement.hpp"
#include "qammeter/potential.hpp"
#include "qammeter/units.hpp"

using namespace qam;

namespace {

// unit-norm state from momentum-space weights placed on given bins
Wavefunction state_from_bins(const GridPtr& g, SpectralTransform& fft,
                             const std::vector<std::pair<int, double>>& bins) {
    std::vector<cplx> gk(g->n, 0.0);
    for (const auto& [bin, w] : bins) gk[(bin % g->n + g->n) % g->n] = std::sqrt(w);
    double nrm = 0.0;
    for (const auto& z : gk) nrm += std::norm(z);
    nrm = std::sqrt(nrm * g->dk);
    for (auto& z : gk) z /= nrm;
    return from_momentum(g, gk, fft);
}

} // namespace

TEST_CASE("current eigenvalues") {
    CHECK(current_eigenvalue(0.0, 100.0) == 0.0);
    CHECK(current_eigenvalue(0.13555, 2834.589) ==
          doctest::Approx(-4.782e-5).epsilon(1e-3));
    CHECK(current_eigenvalue(0.2, 50.0) < 0.0); // positive k -> negative I

    const double k2[] = {0.1, -0.1};
    const double q2[] = {-1.0, -1.0};
    const double m2[] = {1.0, 1.0};
    CHECK(multi_particle_eigenvalue(k2, q2, m2, 1.0) == doctest::Approx(0.0));

    const double k1[] = {0.13555};
    const double q1[] = {-1.0};
    const double m1[] = {1.0};
    CHECK(multi_particle_eigenvalue(k1, q1, m1, 2834.589) ==
          doctest::Approx(current_eigenvalue(0.13555, 2834.589)));

    const double ka[] = {0.1, 0.2};
    CHECK(multi_particle_eigenvalue(ka, q2, m2, 1.0) == doctest::Approx(-0.3));

    const double bad_m[] = {1.0};
    CHECK_THROWS(multi_particle_eigenvalue(ka, q2, bad_m, 1.0));
}

TEST_CASE("expectation current equals the momentum-space sum") {
    const GridPtr g = make_grid(1024, -2000.0, 2000.0);
    SpectralTransform fft(g->n);
    const double L = 2834.589;

    WavepacketSpec spec{0.0, 150.0, 0.13555};
    const Wavefunction wf = gaussian_packet(g, spec);

    const auto gk = to_momentum(wf, fft);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < g->n; ++j) {
        num += current_eigenvalue(g->k[j], L) * std::norm(gk[j]);
        den += std::norm(gk[j]);
    }
    CHECK(expectation_current(wf, fft, L) ==
          doctest::Approx(num / den).epsilon(1e-12));
    CHECK(expectation_current(wf, fft, L) ==
          doctest::Approx(-spec.k0 / L).epsilon(1e-6));
}

TEST_CASE("volume form over the full grid matches the momentum form") {
    const GridPtr g = make_grid(1024, -2000.0, 2000.0);
    SpectralTransform fft(g->n);
    const double L = 1000.0;
    WavepacketSpec spec{-300.0, 120.0, 0.09};
    const Wavefunction wf = gaussian_packet(g, spec);

    const double full = gamma_q_volume(wf, fft, L, g->x_min, g->x_max);
    CHECK(full == doctest::Approx(expectation_current(wf, fft, L)).epsilon(1e-6));

    // subregion containing virtually all the packet gives the same answer
    const double sub = gamma_q_volume(wf, fft, L, -1500.0, 1500.0);
    CHECK(sub == doctest::Approx(full).epsilon(1e-6));

    CHECK_THROWS(gamma_q_volume(wf, fft, L, -3000.0, 0.0));
}

TEST_CASE("displacement term") {
    CHECK(displacement_term(1.0, 1.0, 0.0) == 0.0);
    CHECK(displacement_term(1.0, 1.0, 1.0) == doctest::Approx(-1.0));
    // 0 -> 0.1 V over 10 fs across 150 nm
    const double dvdt = 0.1 * units::hartree_per_ev / (10.0 * units::aut_per_fs);
    const double lx = 150.0 * units::bohr_per_nm;
    CHECK(displacement_term(1.0, lx, dvdt) ==
          doctest::Approx(-(1.0 / 2834.6) * (3.675e-3 / 413.4)).epsilon(1e-4));
}

TEST_CASE("POVM completeness with C^2 = sigma_I sqrt(pi)") {
    MeasurementConfig cfg;
    cfg.sigma_k = 0.105835;
    cfg.tau = 16.5365;
    cfg.L_x = 2834.589;
    const double ks[] = {-0.3, -0.05, 0.0, 0.13555, 0.4};
    CHECK(povm_completeness_check(cfg, ks) < 1e-10);
}

TEST_CASE("sample_outcome on a single-bin state: mixture analytics") {
    const GridPtr g = make_grid(256, 0.0, 256.0);
    SpectralTransform fft(g->n);
    MeasurementConfig cfg;
    cfg.sigma_k = 0.05;
    cfg.tau = 1.0;
    cfg.L_x = 500.0;
    cfg.seed = 31;

    const Wavefunction wf = state_from_bins(g, fft, {{9, 1.0}});
    const double mean_expected = current_eigenvalue(9 * g->dk, cfg.L_x);
    const double var_expected = cfg.sigma_current() * cfg.sigma_current() / 2.0;

    CounterRng rng = CounterRng::substream(cfg.seed, 0);
    const int n = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = sample_outcome(wf, fft, cfg, rng, 0.0).value;
        sum += v;
        sq += v * v;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    const double se = std::sqrt(var_expected / n);
    CHECK(std::abs(mean - mean_expected) < 5.0 * se);
    CHECK(var == doctest::Approx(var_expected).epsilon(0.05));
}

TEST_CASE("sigma -> 0 limit reproduces Born weights on a two-peak state") {
    const GridPtr g = make_grid(256, 0.0, 256.0);
    SpectralTransform fft(g->n);
    MeasurementConfig cfg;
    cfg.sigma_k = 1e-4; // far below the bin separation
    cfg.tau = 1.0;
    cfg.L_x = 100.0;
    cfg.seed = 77;

    const int bin_a = 10, bin_b = 40;
    const Wavefunction wf = state_from_bins(g, fft, {{bin_a, 0.3}, {bin_b, 0.7}});
    const double ia = current_eigenvalue(bin_a * g->dk, cfg.L_x);
    const double ib = current_eigenvalue(bin_b * g->dk, cfg.L_x);

    CounterRng rng = CounterRng::substream(cfg.seed, 0);
    const int n = 100000;
    int hits_a = 0;
    for (int i = 0; i < n; ++i) {
        const double v = sample_outcome(wf, fft, cfg, rng, 0.0).value;
        if (std::abs(v - ia) < std::abs(v - ib)) ++hits_a;
    }
    const double p = double(hits_a) / n;
    const double binom_se = std::sqrt(0.3 * 0.7 / n);
    CHECK(std::abs(p - 0.3) < 5.0 * binom_se);
}

TEST_CASE("identical seed gives an identical outcome sequence") {
    const GridPtr g = make_grid(128, 0.0, 128.0);
    SpectralTransform fft(g->n);
    MeasurementConfig cfg;
    cfg.sigma_k = 0.02;
    cfg.tau = 1.0;
    cfg.L_x = 50.0;
    WavepacketSpec spec{64.0, 10.0, 0.5};
    const Wavefunction wf = gaussian_packet(g, spec);

    CounterRng r1 = CounterRng::substream(5, 2);
    CounterRng r2 = CounterRng::substream(5, 2);
    for (int i = 0; i < 50; ++i)
        CHECK(sample_outcome(wf, fft, cfg, r1, 0.0).value ==
              sample_outcome(wf, fft, cfg, r2, 0.0).value);
}

TEST_CASE("weak operator: norm, fixed points, both sigma limits") {
    const GridPtr g = make_grid(512, -500.0, 500.0);
    SpectralTransform fft(g->n);
    MeasurementConfig cfg;
    cfg.tau = 1.0;
    cfg.L_x = 1000.0;

    WavepacketSpec spec{0.0, 50.0, 0.25};
    const Wavefunction wf = gaussian_packet(g, spec);

    SUBCASE("sigma -> infinity leaves the state untouched") {
        cfg.sigma_k = 10.0; // packet k-width is 0.01
        Wavefunction out = wf;
        apply_weak_operator(out, fft, current_eigenvalue(spec.k0, cfg.L_x), cfg);
        CHECK(std::abs(norm_l2(out) - 1.0) < 1e-10);
        cplx overlap = 0.0;
        for (int j = 0; j < g->n; ++j)
            overlap += std::conj(out.psi[j]) * wf.psi[j] * g->dx;
        CHECK(std::norm(overlap) > 1.0 - 1e-6);
    }

    SUBCASE("plane wave is a fixed point up to a global factor") {
        Wavefunction tone{g, std::vector<cplx>(g->n)};
        const double kj = 20 * g->dk;
        for (int j = 0; j < g->n; ++j) tone.psi[j] = std::polar(1.0, kj * g->x[j]);
        renormalize(tone);
        const Wavefunction before = tone;
        cfg.sigma_k = 0.05;
        apply_weak_operator(tone, fft, current_eigenvalue(kj, cfg.L_x) + 2e-5, cfg);
        cplx overlap = 0.0;
        for (int j = 0; j < g->n; ++j)
            overlap += std::conj(tone.psi[j]) * before.psi[j] * g->dx;
        CHECK(std::norm(overlap) == doctest::Approx(1.0).epsilon(1e-10));
    }

    SUBCASE("collapse: narrow filter on one of two separated peaks") {
        const int bin = 40; // +/- bin 40 -> +/- k0
        Wavefunction bimodal{g, std::vector<cplx>(g->n)};
        {
            SpectralTransform tmp(g->n);
            std::vector<std::pair<int, double>> bins;
            for (int d = -3; d <= 3; ++d) {
                bins.push_back({bin + d, std::exp(-d * d / 2.0)});
                bins.push_back({-bin + d, std::exp(-d * d / 2.0)});
            }
            bimodal = state_from_bins(g, tmp, bins);
        }
        const double k0 = bin * g->dk;
        cfg.sigma_k = k0 / 8.0; // well below the 2 k0 gap
        Wavefunction out = bimodal;
        apply_weak_operator(out, fft, current_eigenvalue(k0, cfg.L_x), cfg);
        CHECK(std::abs(norm_l2(out) - 1.0) < 1e-10);

        const auto gout = to_momentum(out, fft);
        double wrong = 0.0, total = 0.0;
        for (int j = 0; j < g->n; ++j) {
            total += std::norm(gout[j]);
            if (g->k[j] < 0.0) wrong += std::norm(gout[j]);
        }
        CHECK(wrong / total < 1e-6);
    }

    SUBCASE("impossible outcome underflows and throws") {
        cfg.sigma_k = 1e-4;
        Wavefunction out = wf;
        CHECK_THROWS(apply_weak_operator(out, fft, 5.0, cfg));
    }
}
