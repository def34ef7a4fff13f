#include "qammeter/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace qam {

double PotentialProfile::bias_at(double t) const {
    if (!ramp) return bias;
    if (t <= 0.0) return ramp->v_start;
    if (t >= ramp->t_ramp) return ramp->v_end;
    return ramp->v_start + (ramp->v_end - ramp->v_start) * (t / ramp->t_ramp);
}

double PotentialProfile::dbias_dt(double t) const {
    if (!ramp) return 0.0;
    if (t < 0.0 || t > ramp->t_ramp) return 0.0;
    return (ramp->v_end - ramp->v_start) / ramp->t_ramp;
}

void PotentialProfile::potential_at(double t, std::vector<double>& out) const {
    const double vb = bias_at(t);
    out.resize(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = v[j] + vb * bias_shape[j];
}

PotentialProfile make_double_barrier(const GridPtr& grid, const DeviceSpec& spec,
                                     double bias, std::optional<BiasRamp> ramp) {
    if (!(spec.barrier_height > 0.0) || !(spec.barrier_width > 0.0) ||
        !(spec.well_width >= 0.0))
        throw std::invalid_argument("make_double_barrier: invalid device spec");
    const double dev_start = spec.device_start;
    const double dev_end = spec.device_end();
    if (dev_start < grid->x_min || dev_end > grid->x_max)
        throw std::invalid_argument("make_double_barrier: device exceeds the grid");

    PotentialProfile p;
    p.grid = grid;
    p.device_start = dev_start;
    p.device_end = dev_end;
    p.bias = bias;
    p.ramp = ramp;
    p.v.resize(grid->n, 0.0);
    p.bias_shape.resize(grid->n, 0.0);

    const double b1_lo = dev_start;
    const double b1_hi = dev_start + spec.barrier_width;
    const double b2_lo = b1_hi + spec.well_width;
    const double b2_hi = dev_end;
    const double dev_len = dev_end - dev_start;

    for (int j = 0; j < grid->n; ++j) {
        const double x = grid->x[j];
        if ((x >= b1_lo && x < b1_hi) || (x >= b2_lo && x < b2_hi))
            p.v[j] = spec.barrier_height;
        if (x < dev_start)
            p.bias_shape[j] = 0.0;
        else if (x >= dev_end)
            p.bias_shape[j] = -1.0;
        else
            p.bias_shape[j] = -(x - dev_start) / dev_len;
    }
    return p;
}

MassSplit mass_split(const Wavefunction& wf, const PotentialProfile& profile,
                     Backend backend) {
    const Grid& g = *wf.grid;
    MassSplit m;
    // fixed sequential sweep; cheap relative to the transforms
    (void)backend;
    double left = 0.0, mid = 0.0, right = 0.0;
    for (int j = 0; j < g.n; ++j) {
        const double w = std::norm(wf.psi[j]) * g.dx;
        if (g.x[j] < profile.device_start)
            left += w;
        else if (g.x[j] > profile.device_end)
            right += w;
        else
            mid += w;
    }
    m.reflected = left;
    m.in_device = mid;
    m.transmitted = right;
    return m;
}

} // namespace qam
