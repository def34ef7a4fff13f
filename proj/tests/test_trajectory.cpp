#include <doctest.h>

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qammeter/trajectory.hpp"
#include "qammeter/units.hpp"

using namespace qam;

namespace {

struct Scenario {
    GridPtr grid;
    PotentialProfile profile;
    Wavefunction initial;
    MeasurementConfig mcfg;
};

Scenario small_scenario() {
    Scenario s;
    s.grid = make_grid(1024, -2000.0, 2000.0);
    DeviceSpec dev;
    dev.barrier_height = 0.5 * units::hartree_per_ev;
    dev.barrier_width = 0.4 * units::bohr_per_nm;
    dev.well_width = 0.4 * units::bohr_per_nm;
    dev.device_start = -11.34;
    s.profile = make_double_barrier(s.grid, dev, 0.0);
    WavepacketSpec spec{-400.0, 120.0, 0.13555};
    s.initial = gaussian_packet(s.grid, spec);
    s.mcfg.sigma_k = 0.105835;
    s.mcfg.tau = 16.5365;
    s.mcfg.L_x = 2834.589;
    s.mcfg.seed = 13;
    return s;
}

} // namespace

TEST_CASE("ensemble statistics are bitwise thread-count independent") {
    const Scenario s = small_scenario();
    RunConfig rc;
    rc.t_end = 8 * s.mcfg.tau;
    rc.keep_final_state = false;

#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    const EnsembleResult one = run_ensemble(s.initial, s.profile, s.mcfg, rc, 12, true);
#ifdef _OPENMP
    omp_set_num_threads(4);
#endif
    const EnsembleResult four = run_ensemble(s.initial, s.profile, s.mcfg, rc, 12, true);

    CHECK(one.mean_current == four.mean_current);
    CHECK(one.std_error == four.std_error);
    for (int m = 0; m < 12; ++m) {
        REQUIRE(one.records[m].outcomes.size() == four.records[m].outcomes.size());
        for (std::size_t i = 0; i < one.records[m].outcomes.size(); ++i)
            CHECK(one.records[m].outcomes[i].value ==
                  four.records[m].outcomes[i].value);
    }
}

TEST_CASE("unmeasured trajectory equals plain propagation") {
    const Scenario s = small_scenario();
    RunConfig rc;
    rc.t_end = 4 * s.mcfg.tau;
    rc.measure = false;

    const TrajectoryRecord rec = run_trajectory(s.initial, s.profile, s.mcfg, rc, 0,
                                                Backend::serial);

    Wavefunction ref = s.initial;
    SplitOperator stepper(s.grid, 1.0, s.mcfg.tau / rc.substeps, Backend::serial);
    stepper.evolve(ref, s.profile, 0.0, rc.t_end);
    CHECK(rec.final_state.psi == ref.psi);

    // a single measurement at t_end leaves the pre-measurement state alone:
    // its recorded expectation matches the unmeasured state's
    SpectralTransform fft(s.grid->n);
    CHECK(rec.outcomes.back().value ==
          doctest::Approx(expectation_current(ref, fft, s.mcfg.L_x)).epsilon(1e-12));
}

TEST_CASE("M = 1 ensemble reduces to run_trajectory") {
    const Scenario s = small_scenario();
    RunConfig rc;
    rc.t_end = 3 * s.mcfg.tau;

    const EnsembleResult ens = run_ensemble(s.initial, s.profile, s.mcfg, rc, 1, true);
    const TrajectoryRecord solo =
        run_trajectory(s.initial, s.profile, s.mcfg, rc, 0, Backend::serial);
    REQUIRE(ens.records.size() == 1);
    CHECK(ens.records[0].outcomes.size() == solo.outcomes.size());
    for (std::size_t i = 0; i < solo.outcomes.size(); ++i) {
        CHECK(ens.records[0].outcomes[i].value == solo.outcomes[i].value);
        CHECK(ens.mean_current[i] == solo.outcomes[i].value);
        CHECK(ens.std_error[i] == 0.0);
    }
}

TEST_CASE("mass bookkeeping at the final snapshot") {
    const Scenario s = small_scenario();
    RunConfig rc;
    rc.t_end = 6 * s.mcfg.tau;
    const TrajectoryRecord rec = run_trajectory(s.initial, s.profile, s.mcfg, rc);
    const double total = rec.final_mass.reflected + rec.final_mass.in_device +
                         rec.final_mass.transmitted;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rec.snapshots.front().time == 0.0);
    CHECK(rec.snapshots.back().time == doctest::Approx(rc.t_end));
}

TEST_CASE("ensemble mean of the first outcome obeys the expectation identity") {
    const Scenario s = small_scenario();
    RunConfig rc;
    rc.t_end = s.mcfg.tau;
    rc.keep_final_state = false;

    const int m = 400;
    const EnsembleResult ens = run_ensemble(s.initial, s.profile, s.mcfg, rc, m);

    Wavefunction evolved = s.initial;
    SplitOperator stepper(s.grid, 1.0, s.mcfg.tau / rc.substeps, Backend::serial);
    stepper.evolve(evolved, s.profile, 0.0, s.mcfg.tau);
    SpectralTransform fft(s.grid->n);
    const double expect = expectation_current(evolved, fft, s.mcfg.L_x);

    CHECK(std::abs(ens.mean_current[0] - expect) < 5.0 * ens.std_error[0]);
}

TEST_CASE("wide-filter control: measured run shadows the unmeasured one") {
    Scenario s = small_scenario();
    s.mcfg.sigma_k *= 1e3;
    RunConfig rc;
    rc.t_end = 8 * s.mcfg.tau;

    const TrajectoryRecord measured =
        run_trajectory(s.initial, s.profile, s.mcfg, rc, 0, Backend::serial);

    rc.measure = false;
    const TrajectoryRecord unmeasured =
        run_trajectory(s.initial, s.profile, s.mcfg, rc, 0, Backend::serial);

    cplx overlap = 0.0;
    for (int j = 0; j < s.grid->n; ++j)
        overlap += std::conj(measured.final_state.psi[j]) *
                   unmeasured.final_state.psi[j] * s.grid->dx;
    CHECK(std::norm(overlap) > 1.0 - 1e-4);
}

TEST_CASE("transit window is ordered and tau-aligned") {
    WavepacketSpec spec{-1890.0, 566.9, 0.13555};
    const double tau = 16.5365;
    double t_in = 0.0, t_out = 0.0;
    transit_window(spec, 1.0, -11.34, tau, t_in, t_out);
    CHECK(t_in > 0.0);
    CHECK(t_out > t_in);
    CHECK(std::abs(std::remainder(t_in, tau)) < 1e-6);
    CHECK(std::abs(std::remainder(t_out, tau)) < 1e-6);
    // ballistic center crossing sits inside the window
    const double t_center = 1890.0 / 0.13555;
    CHECK(t_in < t_center);
    CHECK(t_out > t_center);

    WavepacketSpec backwards{0.0, 10.0, -0.1};
    CHECK_THROWS(transit_window(backwards, 1.0, 100.0, tau, t_in, t_out));
}

TEST_CASE("t_end must be a multiple of tau") {
    const Scenario s = small_scenario();
    RunConfig rc;
    rc.t_end = 2.5 * s.mcfg.tau;
    CHECK_THROWS(run_trajectory(s.initial, s.profile, s.mcfg, rc));
}
