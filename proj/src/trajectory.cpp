#include "qammeter/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qam {

namespace {

long checked_multiple(double whole, double part, const char* what) {
    const double ratio = whole / part;
    const long n = std::lround(ratio);
    if (n < 0 || std::abs(ratio - n) > 1e-9 * (std::abs(ratio) + 1.0))
        throw std::invalid_argument(std::string(what) +
                                    " must be a nonnegative integer multiple");
    return n;
}

Snapshot take_snapshot(const Wavefunction& wf, SpectralTransform& fft, double t) {
    Snapshot s;
    s.time = t;
    s.psi = wf.psi;
    const std::vector<cplx> g = to_momentum(wf, fft);
    s.abs2_k.resize(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) s.abs2_k[j] = std::norm(g[j]);
    return s;
}

double pairwise(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise(v, lo, mid) + pairwise(v, mid, hi);
}

} // namespace

TrajectoryRecord run_trajectory(const Wavefunction& initial,
                                const PotentialProfile& profile,
                                const MeasurementConfig& mconfig,
                                const RunConfig& rconfig,
                                std::uint64_t trajectory_index, Backend backend) {
    if (!(mconfig.tau > 0.0))
        throw std::invalid_argument("run_trajectory: tau must be positive");
    if (rconfig.substeps < 1)
        throw std::invalid_argument("run_trajectory: substeps must be >= 1");
    const long n_meas = checked_multiple(rconfig.t_end, mconfig.tau,
                                         "run_trajectory: t_end / tau");

    const double dt = mconfig.tau / rconfig.substeps;
    SplitOperator stepper(initial.grid, rconfig.mass_override > 0.0
                              ? rconfig.mass_override
                              : 1.0,
                          dt, backend);

    Wavefunction wf = initial;
    CounterRng rng = CounterRng::substream(mconfig.seed, trajectory_index);

    TrajectoryRecord rec;
    rec.outcomes.reserve(n_meas);
    rec.snapshots.push_back(take_snapshot(wf, stepper.transform(), 0.0));

    double t = 0.0;
    for (long i = 1; i <= n_meas; ++i) {
        t = stepper.evolve(wf, profile, t, mconfig.tau);
        CurrentOutcome out;
        if (rconfig.measure) {
            out = sample_outcome(wf, stepper.transform(), mconfig, rng, t);
            apply_weak_operator(wf, stepper.transform(), out.value, mconfig, backend);
        } else {
            out.value = expectation_current(wf, stepper.transform(), mconfig.L_x, backend);
            out.time = t;
        }
        if (profile.time_dependent())
            out.value += displacement_term(mconfig.epsilon, mconfig.L_x,
                                           profile.dbias_dt(t));
        rec.outcomes.push_back(out);
        if (rconfig.snapshot_stride > 0 && i % rconfig.snapshot_stride == 0 &&
            i != n_meas)
            rec.snapshots.push_back(take_snapshot(wf, stepper.transform(), t));
    }
    rec.snapshots.push_back(take_snapshot(wf, stepper.transform(), t));
    rec.final_mass = mass_split(wf, profile, backend);
    if (rconfig.keep_final_state) rec.final_state = wf;
    return rec;
}

EnsembleResult run_ensemble(const Wavefunction& initial,
                            const PotentialProfile& profile,
                            const MeasurementConfig& mconfig,
                            const RunConfig& rconfig, int trajectories,
                            bool keep_records) {
    if (trajectories < 1)
        throw std::invalid_argument("run_ensemble: need at least one trajectory");

    RunConfig per_traj = rconfig;
    per_traj.keep_final_state = keep_records && rconfig.keep_final_state;
    per_traj.snapshot_stride = keep_records ? rconfig.snapshot_stride : 0;

    std::vector<TrajectoryRecord> records(trajectories);
#pragma omp parallel for schedule(dynamic)
    for (int m = 0; m < trajectories; ++m) {
        // trajectory-level parallelism only: serial kernels inside
        records[m] = run_trajectory(initial, profile, mconfig, per_traj,
                                    static_cast<std::uint64_t>(m), Backend::serial);
    }

    EnsembleResult res;
    const std::size_t n_times = records.front().outcomes.size();
    res.times.resize(n_times);
    res.mean_current.resize(n_times);
    res.std_error.resize(n_times);
    std::vector<double> vals(trajectories), sq(trajectories);
    for (std::size_t i = 0; i < n_times; ++i) {
        res.times[i] = records.front().outcomes[i].time;
        for (int m = 0; m < trajectories; ++m) {
            vals[m] = records[m].outcomes[i].value;
            sq[m] = vals[m] * vals[m];
        }
        const double mean = pairwise(vals, 0, vals.size()) / trajectories;
        res.mean_current[i] = mean;
        if (trajectories > 1) {
            const double ss = pairwise(sq, 0, sq.size());
            const double var =
                std::max(0.0, (ss - trajectories * mean * mean) / (trajectories - 1));
            res.std_error[i] = std::sqrt(var / trajectories);
        }
    }
    if (keep_records)
        res.records = std::move(records);
    else {
        // keep the outcome series only
        res.records.clear();
    }
    return res;
}

void transit_window(const WavepacketSpec& packet, double mass,
                    double device_start, double tau, double& t_arrival,
                    double& t_exit) {
    const double v = packet.k0 / mass;
    if (!(v > 0.0))
        throw std::invalid_argument("transit_window: packet must move forward");
    auto fraction_past = [&](double t) {
        const double spread = t / (2.0 * mass * packet.sigma_x * packet.sigma_x);
        const double sx = packet.sigma_x * std::sqrt(1.0 + spread * spread);
        const double z = (packet.center + v * t - device_start) / (std::sqrt(2.0) * sx);
        return 0.5 * std::erfc(-z);
    };
    t_arrival = 0.0;
    t_exit = 0.0;
    double t = 0.0;
    bool have_arrival = fraction_past(0.0) >= 0.01;
    const double t_cap = 1e9;
    while (t < t_cap) {
        t += tau;
        const double f = fraction_past(t);
        if (!have_arrival && f >= 0.01) {
            t_arrival = t;
            have_arrival = true;
        }
        if (f >= 0.99) {
            t_exit = t;
            return;
        }
    }
    throw std::runtime_error("transit_window: packet never clears the device");
}

std::vector<IVPoint> iv_sweep(const SweepSetup& setup,
                              std::span<const double> biases) {
    if (biases.empty())
        throw std::invalid_argument("iv_sweep: empty bias list");

    std::vector<IVPoint> points;
    points.reserve(biases.size());
    for (const double bias : biases) {
        const PotentialProfile profile =
            make_double_barrier(setup.grid, setup.device, bias);
        const Wavefunction initial = gaussian_packet(setup.grid, setup.packet);

        IVPoint pt;
        pt.bias = bias;
        transit_window(setup.packet, setup.mass, setup.device.device_start,
                       setup.measurement.tau, pt.t_arrival, pt.t_exit);

        RunConfig rc = setup.run;
        rc.mass_override = setup.mass;
        rc.keep_final_state = false;
        rc.snapshot_stride = 0;
        if (rc.t_end <= 0.0) rc.t_end = pt.t_exit;

        const int m = rc.measure ? setup.trajectories : 1;
        const EnsembleResult ens =
            run_ensemble(initial, profile, setup.measurement, rc, m, true);

        // per-trajectory mean over the window, then ensemble statistics
        std::vector<double> traj_means(m, 0.0);
        for (int tr = 0; tr < m; ++tr) {
            double acc = 0.0;
            int cnt = 0;
            for (const CurrentOutcome& o : ens.records[tr].outcomes) {
                if (o.time >= pt.t_arrival - 1e-9 && o.time <= pt.t_exit + 1e-9) {
                    acc += o.value;
                    ++cnt;
                }
            }
            traj_means[tr] = cnt > 0 ? acc / cnt : 0.0;
        }
        const double mean = pairwise(traj_means, 0, traj_means.size()) / m;
        pt.current = mean;
        if (m > 1) {
            double ss = 0.0;
            for (double x : traj_means) ss += (x - mean) * (x - mean);
            pt.std_error = std::sqrt(ss / (m - 1) / m);
        }
        points.push_back(pt);
    }
    return points;
}

} // namespace qam
