#ifndef QAMMETER_CONFIG_HPP
#define QAMMETER_CONFIG_HPP

#include <cstdint>
#include <string>

#include "qammeter/grid.hpp"
#include "qammeter/measurement.hpp"
#include "qammeter/potential.hpp"
#include "qammeter/trajectory.hpp"

namespace qam {

/// Fully resolved experiment description, atomic units. Parsed from a flat
/// `key = value` document; physical values accept unit suffixes ("0.5 eV",
/// "2e9 /m", "4e-16 s") and bare numbers are read as atomic units.
struct ExperimentConfig {
    // grid
    int grid_n = 4096;
    double x_min = 0.0; // defaulted to device.center +- 300 nm when absent
    double x_max = 0.0;
    bool grid_span_set = false;

    // device
    double barrier_height;
    double barrier_width;
    double well_width;
    double device_center = 0.0; // bohr
    double mass = 1.0;

    // packet
    double packet_energy = -1.0;  // Ha; required
    double packet_sigma_x = -1.0; // bohr; required
    double packet_center = 0.0;   // bohr; defaults to device_center
    bool packet_center_set = false;

    // bias
    double bias = 0.0; // Ha per unit charge
    bool ramp_enabled = false;
    double ramp_v_start = 0.0;
    double ramp_v_end = 0.0;
    double ramp_t_ramp = 0.0;

    // measurement
    bool measure_enabled = true;
    double sigma_k;  // bohr^-1
    double tau;      // au
    double L_x;      // bohr
    double epsilon = 1.0;
    std::uint64_t seed = 1;

    // stepper
    int substeps = 16;
    double dt_explicit = 0.0; // 0: use tau / substeps

    // run
    double t_end = -1.0; // au; required (0 allowed: sweep transit window)
    int snapshot_stride = 0;

    // ensemble / sweep / transmission scans
    int ensemble_size = 200;
    double sweep_bias_min = 0.0;
    double sweep_bias_max;
    int sweep_points = 11;
    double transmission_e_min;
    double transmission_e_max;
    int transmission_points = 240;

    ExperimentConfig();

    bool operator==(const ExperimentConfig&) const = default;

    // derived views
    GridPtr make_grid_ptr() const;
    DeviceSpec device() const;
    WavepacketSpec packet() const;
    MeasurementConfig measurement() const;
    RunConfig run_config() const;
    std::optional<BiasRamp> ramp() const;
};

/// Parses and validates; unknown keys, duplicates, malformed lines, unit
/// mismatches, and constraint violations all throw std::invalid_argument
/// with line context. Missing required keys name the key.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config(const std::string& path);

/// Atomic-unit serialization with full precision; parse(serialize(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

} // namespace qam

#endif
