#ifndef QAMMETER_TRANSFER_MATRIX_HPP
#define QAMMETER_TRANSFER_MATRIX_HPP

#include <span>

#include "qammeter/potential.hpp"

namespace qam {

struct Scatter {
    double transmission = 0.0;
    double reflection = 0.0;
};

/// Exact scattering through a sequence of constant-potential slabs
/// (widths[i], v[i]) between semi-infinite leads at v_left / v_right.
/// Requires propagating waves in both leads: E > v_left and E > v_right.
Scatter transmission_piecewise(std::span<const double> widths,
                               std::span<const double> v, double v_left,
                               double v_right, double energy, double mass);

/// Transfer-matrix oracle on the ideal (continuous) double-barrier geometry.
/// The linear bias drop is approximated by per-slab midpoint values; with
/// zero bias the result is exact.
Scatter transmission_transfer_matrix(const DeviceSpec& spec, double bias,
                                     double energy, double mass,
                                     int bias_slabs_per_region = 8);

/// Same oracle evaluated on the grid-sampled profile (one slab per grid
/// cell over the device span). This is the curve the split-operator
/// simulator actually sees.
Scatter transmission_grid_profile(const PotentialProfile& profile, double energy,
                                  double mass);

} // namespace qam

#endif
