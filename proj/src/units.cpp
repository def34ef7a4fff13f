#include "qammeter/units.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <utility>

namespace qam {
namespace units {

namespace {

struct UnitDef {
    Dimension dim;
    double factor; // multiply by this to get atomic units
};

const std::map<std::string, UnitDef>& unit_table() {
    static const std::map<std::string, UnitDef> table = {
        {"bohr", {Dimension::length, 1.0}},
        {"a0", {Dimension::length, 1.0}},
        {"nm", {Dimension::length, bohr_per_nm}},
        {"um", {Dimension::length, bohr_per_nm * 1e3}},
        {"m", {Dimension::length, bohr_per_m}},
        {"Ha", {Dimension::energy, 1.0}},
        {"hartree", {Dimension::energy, 1.0}},
        {"eV", {Dimension::energy, hartree_per_ev}},
        {"meV", {Dimension::energy, hartree_per_ev * 1e-3}},
        {"au", {Dimension::dimensionless, 1.0}}, // dimension resolved by caller
        {"fs", {Dimension::time, aut_per_fs}},
        {"ps", {Dimension::time, aut_per_fs * 1e3}},
        {"s", {Dimension::time, aut_per_s}},
        {"/bohr", {Dimension::wavevector, 1.0}},
        {"/nm", {Dimension::wavevector, 1.0 / bohr_per_nm}},
        {"/m", {Dimension::wavevector, invbohr_per_invm}},
        {"V", {Dimension::voltage, hartree_per_ev}},
        {"mV", {Dimension::voltage, hartree_per_ev * 1e-3}},
    };
    return table;
}

std::string strip(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    std::string out = s.substr(a, b - a);
    if (out.size() >= 2 && ((out.front() == '"' && out.back() == '"') ||
                            (out.front() == '\'' && out.back() == '\''))) {
        out = out.substr(1, out.size() - 2);
    }
    return out;
}

} // namespace

const char* dimension_name(Dimension dim) {
    switch (dim) {
        case Dimension::length: return "length";
        case Dimension::energy: return "energy";
        case Dimension::time: return "time";
        case Dimension::wavevector: return "wavevector";
        case Dimension::voltage: return "voltage";
        case Dimension::dimensionless: return "dimensionless";
    }
    return "?";
}

const char* atomic_unit_name(Dimension dim) {
    switch (dim) {
        case Dimension::length: return "bohr";
        case Dimension::energy: return "Ha";
        case Dimension::time: return "au";
        case Dimension::wavevector: return "/bohr";
        case Dimension::voltage: return "Ha";   // per unit charge
        case Dimension::dimensionless: return "";
    }
    return "";
}

double parse_quantity(const std::string& text, Dimension dim) {
    const std::string s = strip(text);
    if (s.empty())
        throw std::invalid_argument("empty quantity");

    const char* begin = s.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin)
        throw std::invalid_argument("quantity '" + s + "' has no numeric part");

    std::string unit = strip(std::string(end));
    if (unit.empty()) {
        if (dim == Dimension::dimensionless)
            return value;
        throw std::invalid_argument("quantity '" + s + "' is missing a " +
                                    std::string(dimension_name(dim)) + " unit");
    }
    if (dim == Dimension::dimensionless)
        throw std::invalid_argument("quantity '" + s + "' must be a bare number");

    // "au" means atomic units of whatever dimension the field expects.
    if (unit == "au" || unit == "a.u." || unit == atomic_unit_name(dim))
        return value;

    auto it = unit_table().find(unit);
    if (it == unit_table().end())
        throw std::invalid_argument("unknown unit '" + unit + "' in '" + s + "'");
    if (it->second.dim != dim)
        throw std::invalid_argument("unit '" + unit + "' is not a " +
                                    std::string(dimension_name(dim)) + " unit");
    return value * it->second.factor;
}

} // namespace units
} // namespace qam
