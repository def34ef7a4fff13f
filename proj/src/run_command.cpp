#include "qammeter/run_command.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <nlohmann/json.hpp>

#include "qammeter/transfer_matrix.hpp"

namespace qam {

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string provenance_header(const ExperimentConfig& config) {
    std::string out = std::string("# ") + kVersion + "\n# config_resolved:\n";
    std::istringstream in(serialize_config(config));
    std::string line;
    while (std::getline(in, line)) out += "#   " + line + "\n";
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

void write_snapshot(const fs::path& path, const ExperimentConfig& config,
                    const GridPtr& grid, const Snapshot& snap) {
    std::string out = provenance_header(config);
    out += "# time = " + fmt(snap.time) + " au\n";
    out += "x,abs_psi_sq,re_psi,im_psi\n";
    for (int j = 0; j < grid->n; ++j) {
        out += fmt(grid->x[j]) + "," + fmt(std::norm(snap.psi[j])) + "," +
               fmt(snap.psi[j].real()) + "," + fmt(snap.psi[j].imag()) + "\n";
    }
    write_file(path, out);
}

int cmd_run(const ExperimentConfig& config, const fs::path& out_dir) {
    const GridPtr grid = config.make_grid_ptr();
    const PotentialProfile profile =
        make_double_barrier(grid, config.device(), config.bias, config.ramp());
    const Wavefunction initial = gaussian_packet(grid, config.packet());

    const TrajectoryRecord rec = run_trajectory(initial, profile,
                                                config.measurement(),
                                                config.run_config());

    std::string out = provenance_header(config);
    out += "time,current\n";
    for (const CurrentOutcome& o : rec.outcomes)
        out += fmt(o.time) + "," + fmt(o.value) + "\n";
    write_file(out_dir / "outcomes.csv", out);

    out = provenance_header(config);
    out += "reflected,in_device,transmitted\n";
    out += fmt(rec.final_mass.reflected) + "," + fmt(rec.final_mass.in_device) +
           "," + fmt(rec.final_mass.transmitted) + "\n";
    write_file(out_dir / "mass_split.csv", out);

    const fs::path snap_dir = out_dir / "snapshots";
    fs::create_directories(snap_dir);
    for (std::size_t i = 0; i < rec.snapshots.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "snapshot_%03zu.csv", i);
        write_snapshot(snap_dir / name, config, grid, rec.snapshots[i]);
    }
    return 0;
}

int cmd_ensemble(const ExperimentConfig& config, const fs::path& out_dir) {
    const GridPtr grid = config.make_grid_ptr();
    const PotentialProfile profile =
        make_double_barrier(grid, config.device(), config.bias, config.ramp());
    const Wavefunction initial = gaussian_packet(grid, config.packet());

    const EnsembleResult res =
        run_ensemble(initial, profile, config.measurement(), config.run_config(),
                     config.ensemble_size);

    std::string out = provenance_header(config);
    out += "time,mean_current,std_error\n";
    for (std::size_t i = 0; i < res.times.size(); ++i)
        out += fmt(res.times[i]) + "," + fmt(res.mean_current[i]) + "," +
               fmt(res.std_error[i]) + "\n";
    write_file(out_dir / "ensemble.csv", out);
    return 0;
}

int cmd_sweep(const ExperimentConfig& config, const fs::path& out_dir) {
    SweepSetup setup;
    setup.grid = config.make_grid_ptr();
    setup.device = config.device();
    setup.packet = config.packet();
    setup.mass = config.mass;
    setup.measurement = config.measurement();
    setup.run = config.run_config();
    setup.trajectories = config.ensemble_size;

    std::vector<double> biases(config.sweep_points);
    const double step = (config.sweep_bias_max - config.sweep_bias_min) /
                        (config.sweep_points - 1);
    for (int i = 0; i < config.sweep_points; ++i)
        biases[i] = config.sweep_bias_min + i * step;

    const std::vector<IVPoint> points = iv_sweep(setup, biases);

    std::string out = provenance_header(config);
    out += "bias,current,std_error,t_arrival,t_exit\n";
    for (const IVPoint& p : points)
        out += fmt(p.bias) + "," + fmt(p.current) + "," + fmt(p.std_error) + "," +
               fmt(p.t_arrival) + "," + fmt(p.t_exit) + "\n";
    write_file(out_dir / (config.measure_enabled ? "iv_measured.csv"
                                                 : "iv_unmeasured.csv"),
               out);
    return 0;
}

int cmd_transmission(const ExperimentConfig& config, const fs::path& out_dir) {
    std::string out = provenance_header(config);
    out += "energy,transmission,reflection\n";
    const double step = (config.transmission_e_max - config.transmission_e_min) /
                        (config.transmission_points - 1);
    for (int i = 0; i < config.transmission_points; ++i) {
        const double e = config.transmission_e_min + i * step;
        const Scatter s =
            transmission_transfer_matrix(config.device(), config.bias, e, config.mass);
        out += fmt(e) + "," + fmt(s.transmission) + "," + fmt(s.reflection) + "\n";
    }
    write_file(out_dir / "transmission.csv", out);
    return 0;
}

int cmd_selftest(const ExperimentConfig& config, const fs::path& out_dir) {
    int failures = 0;
    std::string report = provenance_header(config);
    auto check = [&](const char* name, bool ok) {
        report += std::string(ok ? "PASS " : "FAIL ") + name + "\n";
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    const GridPtr grid = config.make_grid_ptr();
    SpectralTransform fft(grid->n);
    const Wavefunction wf = gaussian_packet(grid, config.packet());

    check("packet_norm", std::abs(norm_l2(wf) - 1.0) < 1e-10);

    { // spectral round trip and Parseval
        const std::vector<cplx> g = to_momentum(wf, fft);
        const Wavefunction back = from_momentum(grid, g, fft);
        double worst = 0.0;
        for (int j = 0; j < grid->n; ++j)
            worst = std::max(worst, std::abs(back.psi[j] - wf.psi[j]));
        check("spectral_round_trip", worst < 1e-12);
        const double pk = kernels::sum_abs2(g.data(), g.size(), default_backend()) *
                          grid->dk;
        check("parseval", std::abs(pk - 1.0) < 1e-10);
    }

    const PotentialProfile profile =
        make_double_barrier(grid, config.device(), config.bias, config.ramp());

    { // norm preservation under evolution
        Wavefunction evolved = wf;
        SplitOperator stepper(grid, config.mass, config.tau / config.substeps);
        stepper.evolve(evolved, profile, 0.0, config.tau);
        check("norm_preserved", std::abs(norm_l2(evolved) - 1.0) < 1e-10);
        const MassSplit split = mass_split(evolved, profile);
        const double total = split.reflected + split.in_device + split.transmitted;
        check("mass_bookkeeping", std::abs(total - 1.0) < 1e-8);
    }

    { // POVM completeness and flux conservation of the oracle
        const double kset[] = {0.0, 0.05, 0.13555, 0.3};
        check("povm_completeness",
              povm_completeness_check(config.measurement(), kset) < 1e-10);
        double worst = 0.0;
        for (int i = 0; i < 32; ++i) {
            const double e = config.transmission_e_min +
                             i * (config.transmission_e_max - config.transmission_e_min) / 31;
            const Scatter s =
                transmission_transfer_matrix(config.device(), 0.0, e, config.mass);
            worst = std::max(worst, std::abs(s.transmission + s.reflection - 1.0));
        }
        check("flux_conservation", worst < 1e-10);
    }

    { // seeded determinism of the outcome stream
        CounterRng a = CounterRng::substream(config.seed, 7);
        CounterRng b = CounterRng::substream(config.seed, 7);
        bool same = true;
        for (int i = 0; i < 64; ++i) same = same && a.next_u64() == b.next_u64();
        check("rng_determinism", same);
    }

    write_file(out_dir / "selftest.txt", report);
    return failures == 0 ? 0 : 1;
}

} // namespace

int run_command(const std::string& subcommand, ExperimentConfig config,
                const CommandOptions& options) {
    const fs::path out_dir(options.out_dir);
    try {
        fs::create_directories(out_dir);
        if (options.seed) config.seed = *options.seed;
#ifdef _OPENMP
        if (options.threads > 0) omp_set_num_threads(options.threads);
#endif
        write_file(out_dir / "config_resolved.txt", serialize_config(config));

        if (subcommand == "run") return cmd_run(config, out_dir);
        if (subcommand == "ensemble") return cmd_ensemble(config, out_dir);
        if (subcommand == "sweep") return cmd_sweep(config, out_dir);
        if (subcommand == "transmission") return cmd_transmission(config, out_dir);
        if (subcommand == "selftest") return cmd_selftest(config, out_dir);
        throw std::invalid_argument("unknown subcommand '" + subcommand + "'");
    } catch (const std::exception& e) {
        nlohmann::json err;
        err["subcommand"] = subcommand;
        err["error"] = e.what();
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (!ec) {
            std::ofstream out(out_dir / "error.json");
            out << err.dump(2) << "\n";
        }
        std::cerr << err.dump() << "\n";
        return 1;
    }
}

} // namespace qam
