#ifndef QAMMETER_TRAJECTORY_HPP
#define QAMMETER_TRAJECTORY_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "qammeter/measurement.hpp"
#include "qammeter/potential.hpp"
#include "qammeter/propagator.hpp"

namespace qam {

struct Snapshot {
    double time = 0.0;
    std::vector<cplx> psi;       // position representation
    std::vector<double> abs2_k;  // |g(k)|^2, DFT ordering
};

struct TrajectoryRecord {
    std::vector<CurrentOutcome> outcomes; // spaced exactly tau apart
    std::vector<Snapshot> snapshots;
    MassSplit final_mass;
    Wavefunction final_state;
};

struct RunConfig {
    double t_end = 0.0;       // au, must be an integer multiple of tau
    int substeps = 16;        // dt = tau / substeps
    bool measure = true;      // false: unitary evolution only; outcomes
                              // record the expectation current instead
    int snapshot_stride = 0;  // 0: only initial and final snapshots; n > 0:
                              // every n-th measurement time as well
    bool keep_final_state = true;
    double mass_override = 0.0; // <= 0: unit mass
};

/// Repeats [evolve tau; sample; apply weak operator] until t_end. With a
/// bias ramp active the displacement term is added to each recorded
/// outcome. Deterministic given (config.seed, trajectory_index).
TrajectoryRecord run_trajectory(const Wavefunction& initial,
                                const PotentialProfile& profile,
                                const MeasurementConfig& mconfig,
                                const RunConfig& rconfig,
                                std::uint64_t trajectory_index = 0,
                                Backend backend = default_backend());

struct EnsembleResult {
    std::vector<double> times;
    std::vector<double> mean_current;
    std::vector<double> std_error;
    std::vector<TrajectoryRecord> records;
};

/// M independent trajectories with per-index RNG substreams. Aggregates are
/// reduced in fixed order (pairwise), so results are bit-identical for any
/// thread count.
EnsembleResult run_ensemble(const Wavefunction& initial,
                            const PotentialProfile& profile,
                            const MeasurementConfig& mconfig,
                            const RunConfig& rconfig, int trajectories,
                            bool keep_records = false);

struct IVPoint {
    double bias = 0.0;     // Ha per unit charge
    double current = 0.0;  // mean sampled outcome over the transit window
    double std_error = 0.0;
    double t_arrival = 0.0;
    double t_exit = 0.0;
};

struct SweepSetup {
    GridPtr grid;
    DeviceSpec device;
    WavepacketSpec packet;
    double mass = 1.0;
    MeasurementConfig measurement;
    RunConfig run; // t_end chosen per bias from the transit window if 0
    int trajectories = 200;
};

/// One I-V point per bias: ensemble of measured trajectories (or a single
/// unmeasured run when run.measure is false), current averaged over the
/// transit window [t_arrival, t_exit] in which the free-streaming packet
/// goes from 1% to 99% past the device entrance.
std::vector<IVPoint> iv_sweep(const SweepSetup& setup,
                              std::span<const double> biases);

/// Transit window from free-packet kinematics (center x0 + v t, dispersion
/// sigma_x(t)); returned times are rounded up to multiples of tau.
void transit_window(const WavepacketSpec& packet, double mass,
                    double device_start, double tau, double& t_arrival,
                    double& t_exit);

} // namespace qam

#endif
