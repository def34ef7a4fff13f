#ifndef QAMMETER_UNITS_HPP
#define QAMMETER_UNITS_HPP

#include <string>

namespace qam {
namespace units {

// Hartree atomic units throughout (m_e = 1, |q_e| = 1, hbar = 1).
// Conversion factors from CODATA 2018.
constexpr double bohr_per_nm = 18.897261246257702;    // 1 nm in bohr
constexpr double bohr_per_m = 1.8897261246257702e10;  // 1 m in bohr
constexpr double hartree_per_ev = 0.03674932217565499;
constexpr double aut_per_fs = 41.341373335182114;     // 1 fs in atomic time
constexpr double aut_per_s = 4.1341373335182114e16;
constexpr double invbohr_per_invm = 1.0 / bohr_per_m; // 1 m^-1 in bohr^-1

enum class Dimension {
    length,
    energy,
    time,
    wavevector,
    voltage,     // energy per unit charge; 1 V <-> 1 eV for |q| = 1
    dimensionless
};

// Parses "number [unit]" (optionally quoted) into atomic units of the
// requested dimension. Throws std::invalid_argument on malformed input,
// unknown units, or a unit of the wrong dimension.
double parse_quantity(const std::string& text, Dimension dim);

const char* dimension_name(Dimension dim);

// Canonical atomic-unit suffix for serialization ("bohr", "Ha", ...).
const char* atomic_unit_name(Dimension dim);

} // namespace units
} // namespace qam

#endif
