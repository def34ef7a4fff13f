#ifndef QAMMETER_POTENTIAL_HPP
#define QAMMETER_POTENTIAL_HPP

#include <optional>
#include <vector>

#include "qammeter/grid.hpp"

namespace qam {

/// Double-barrier geometry, atomic units.
struct DeviceSpec {
    double barrier_height = 0.0; // Ha
    double barrier_width = 0.0;  // bohr
    double well_width = 0.0;     // bohr
    double device_start = 0.0;   // bohr, left edge of the first barrier

    double device_end() const { return device_start + 2.0 * barrier_width + well_width; }
};

struct BiasRamp {
    double v_start = 0.0; // Ha per unit charge
    double v_end = 0.0;
    double t_ramp = 0.0;  // au
};

/// Device potential sampled on the grid plus the applied bias.
///
/// Bias convention: a forward bias V > 0 lowers the electron potential
/// energy on the drain (right) side by V, with a linear drop across the
/// device region only (ideal metallic leads). v(x) stored here is the
/// zero-bias device profile; bias_shape(x) is the unit-bias drop
/// (0 on the source side, -1 beyond the drain).
struct PotentialProfile {
    GridPtr grid;
    std::vector<double> v;          // zero-bias device profile, Ha
    std::vector<double> bias_shape; // multiply by bias(t) and add to v
    double bias = 0.0;              // Ha per unit charge
    std::optional<BiasRamp> ramp;
    double device_start = 0.0;
    double device_end = 0.0;

    double bias_at(double t) const;
    double dbias_dt(double t) const;
    /// out[j] = v[j] + bias_at(t) * bias_shape[j]
    void potential_at(double t, std::vector<double>& out) const;
    bool time_dependent() const { return ramp.has_value(); }
};

/// Piecewise-constant barriers sampled at the grid points (midpoint rule),
/// bias applied as described above. Throws if the device does not fit
/// inside the grid.
PotentialProfile make_double_barrier(const GridPtr& grid, const DeviceSpec& spec,
                                     double bias,
                                     std::optional<BiasRamp> ramp = std::nullopt);

struct MassSplit {
    double reflected = 0.0;  // x < device_start
    double in_device = 0.0;
    double transmitted = 0.0; // x > device_end
};

MassSplit mass_split(const Wavefunction& wf, const PotentialProfile& profile,
                     Backend backend = default_backend());

} // namespace qam

#endif
