#include "qammeter/transfer_matrix.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace qam {

namespace {

using cd = std::complex<double>;

struct Mat2 {
    cd a, b, c, d; // [[a, b], [c, d]]
};

Mat2 mul(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

// amplitude continuity across a step from wavevector k1 to k2
Mat2 interface(cd k1, cd k2) {
    const cd r = k1 / k2;
    return {0.5 * (1.0 + r), 0.5 * (1.0 - r), 0.5 * (1.0 - r), 0.5 * (1.0 + r)};
}

Mat2 propagate(cd k, double d) {
    const cd ph = std::exp(cd(0.0, 1.0) * k * d);
    return {ph, 0.0, 0.0, 1.0 / ph};
}

cd wavevector(double energy, double v, double mass) {
    return std::sqrt(cd(2.0 * mass * (energy - v), 0.0));
}

} // namespace

Scatter transmission_piecewise(std::span<const double> widths,
                               std::span<const double> v, double v_left,
                               double v_right, double energy, double mass) {
    if (widths.size() != v.size())
        throw std::invalid_argument("transmission_piecewise: widths/v size mismatch");
    if (!(energy > v_left) || !(energy > v_right))
        throw std::invalid_argument(
            "transmission_piecewise: evanescent lead (energy below a lead band bottom)");

    const double k_l = std::sqrt(2.0 * mass * (energy - v_left));
    const double k_r = std::sqrt(2.0 * mass * (energy - v_right));

    std::vector<cd> ks(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) ks[i] = wavevector(energy, v[i], mass);

    Mat2 m{1.0, 0.0, 0.0, 1.0};
    cd k_prev = k_l;
    for (std::size_t i = 0; i < v.size(); ++i) {
        m = mul(interface(k_prev, ks[i]), m);
        m = mul(propagate(ks[i], widths[i]), m);
        k_prev = ks[i];
    }
    m = mul(interface(k_prev, cd(k_r, 0.0)), m);

    // left (1, r) -> right (t, 0)
    const cd det = m.a * m.d - m.b * m.c;
    const cd t = det / m.d;
    const cd r = -m.c / m.d;

    Scatter s;
    s.transmission = (k_r / k_l) * std::norm(t);
    s.reflection = std::norm(r);
    return s;
}

Scatter transmission_transfer_matrix(const DeviceSpec& spec, double bias,
                                     double energy, double mass,
                                     int bias_slabs_per_region) {
    const double dev_len = spec.device_end() - spec.device_start;
    const int sub = bias != 0.0 ? bias_slabs_per_region : 1;

    std::vector<double> widths, v;
    auto add_region = [&](double x_lo, double width, double v0) {
        for (int i = 0; i < sub; ++i) {
            const double w = width / sub;
            const double x_mid = x_lo + (i + 0.5) * w;
            const double drop = -bias * (x_mid - spec.device_start) / dev_len;
            widths.push_back(w);
            v.push_back(v0 + drop);
        }
    };
    add_region(spec.device_start, spec.barrier_width, spec.barrier_height);
    add_region(spec.device_start + spec.barrier_width, spec.well_width, 0.0);
    add_region(spec.device_start + spec.barrier_width + spec.well_width,
               spec.barrier_width, spec.barrier_height);

    return transmission_piecewise(widths, v, 0.0, -bias, energy, mass);
}

Scatter transmission_grid_profile(const PotentialProfile& profile, double energy,
                                  double mass) {
    const Grid& g = *profile.grid;
    std::vector<double> widths, v;
    for (int j = 0; j < g.n; ++j) {
        if (g.x[j] >= profile.device_start && g.x[j] < profile.device_end) {
            widths.push_back(g.dx);
            v.push_back(profile.v[j] + profile.bias * profile.bias_shape[j]);
        }
    }
    return transmission_piecewise(widths, v, 0.0, -profile.bias, energy, mass);
}

} // namespace qam
