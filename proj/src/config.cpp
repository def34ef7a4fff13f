#include "qammeter/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qammeter/units.hpp"

namespace qam {

using units::Dimension;

ExperimentConfig::ExperimentConfig()
    : barrier_height(0.5 * units::hartree_per_ev),
      barrier_width(0.4 * units::bohr_per_nm),
      well_width(0.4 * units::bohr_per_nm),
      sigma_k(2e9 * units::invbohr_per_invm),
      tau(4e-16 * units::aut_per_s),
      L_x(150.0 * units::bohr_per_nm),
      sweep_bias_max(0.5 * units::hartree_per_ev),
      transmission_e_min(0.01 * units::hartree_per_ev),
      transmission_e_max(0.6 * units::hartree_per_ev) {}

GridPtr ExperimentConfig::make_grid_ptr() const {
    return make_grid(grid_n, x_min, x_max);
}

DeviceSpec ExperimentConfig::device() const {
    DeviceSpec d;
    d.barrier_height = barrier_height;
    d.barrier_width = barrier_width;
    d.well_width = well_width;
    d.device_start = device_center - (2.0 * barrier_width + well_width) / 2.0;
    return d;
}

WavepacketSpec ExperimentConfig::packet() const {
    WavepacketSpec p;
    p.center = packet_center;
    p.sigma_x = packet_sigma_x;
    p.k0 = std::sqrt(2.0 * mass * packet_energy);
    return p;
}

MeasurementConfig ExperimentConfig::measurement() const {
    MeasurementConfig m;
    m.sigma_k = sigma_k;
    m.tau = tau;
    m.L_x = L_x;
    m.epsilon = epsilon;
    m.seed = seed;
    return m;
}

RunConfig ExperimentConfig::run_config() const {
    RunConfig r;
    r.t_end = t_end;
    r.substeps = substeps;
    r.measure = measure_enabled;
    r.snapshot_stride = snapshot_stride;
    r.mass_override = mass;
    return r;
}

std::optional<BiasRamp> ExperimentConfig::ramp() const {
    if (!ramp_enabled) return std::nullopt;
    return BiasRamp{ramp_v_start, ramp_v_end, ramp_t_ramp};
}

namespace {

struct KeyDef {
    std::function<void(ExperimentConfig&, const std::string&)> set;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + msg);
}

std::string strip(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

bool parse_bool(const std::string& raw) {
    const std::string s = unquote(raw);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw std::invalid_argument("expected a boolean, got '" + s + "'");
}

long parse_int(const std::string& raw) {
    const std::string s = unquote(raw);
    size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size())
        throw std::invalid_argument("expected an integer, got '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& raw) {
    const std::string s = unquote(raw);
    size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size())
        throw std::invalid_argument("expected an unsigned integer, got '" + s + "'");
    return v;
}

const std::map<std::string, KeyDef>& key_table() {
    auto quantity = [](double ExperimentConfig::* field, Dimension dim) {
        return KeyDef{[field, dim](ExperimentConfig& c, const std::string& v) {
            c.*field = units::parse_quantity(v, dim);
        }};
    };
    static const std::map<std::string, KeyDef> table = {
        {"grid.n", {[](ExperimentConfig& c, const std::string& v) {
             c.grid_n = static_cast<int>(parse_int(v));
         }}},
        {"grid.x_min", {[](ExperimentConfig& c, const std::string& v) {
             c.x_min = units::parse_quantity(v, Dimension::length);
             c.grid_span_set = true;
         }}},
        {"grid.x_max", {[](ExperimentConfig& c, const std::string& v) {
             c.x_max = units::parse_quantity(v, Dimension::length);
             c.grid_span_set = true;
         }}},
        {"device.barrier_height",
         quantity(&ExperimentConfig::barrier_height, Dimension::energy)},
        {"device.barrier_width",
         quantity(&ExperimentConfig::barrier_width, Dimension::length)},
        {"device.well_width",
         quantity(&ExperimentConfig::well_width, Dimension::length)},
        {"device.center", quantity(&ExperimentConfig::device_center, Dimension::length)},
        {"mass", quantity(&ExperimentConfig::mass, Dimension::dimensionless)},
        {"packet.energy", quantity(&ExperimentConfig::packet_energy, Dimension::energy)},
        {"packet.sigma_x",
         quantity(&ExperimentConfig::packet_sigma_x, Dimension::length)},
        {"packet.center", {[](ExperimentConfig& c, const std::string& v) {
             c.packet_center = units::parse_quantity(v, Dimension::length);
             c.packet_center_set = true;
         }}},
        {"bias", quantity(&ExperimentConfig::bias, Dimension::voltage)},
        {"ramp.enabled", {[](ExperimentConfig& c, const std::string& v) {
             c.ramp_enabled = parse_bool(v);
         }}},
        {"ramp.v_start", quantity(&ExperimentConfig::ramp_v_start, Dimension::voltage)},
        {"ramp.v_end", quantity(&ExperimentConfig::ramp_v_end, Dimension::voltage)},
        {"ramp.t_ramp", quantity(&ExperimentConfig::ramp_t_ramp, Dimension::time)},
        {"measure.enabled", {[](ExperimentConfig& c, const std::string& v) {
             c.measure_enabled = parse_bool(v);
         }}},
        {"measure.sigma", quantity(&ExperimentConfig::sigma_k, Dimension::wavevector)},
        {"measure.tau", quantity(&ExperimentConfig::tau, Dimension::time)},
        {"measure.L_x", quantity(&ExperimentConfig::L_x, Dimension::length)},
        {"measure.epsilon",
         quantity(&ExperimentConfig::epsilon, Dimension::dimensionless)},
        {"seed", {[](ExperimentConfig& c, const std::string& v) {
             c.seed = parse_u64(v);
         }}},
        {"stepper.substeps", {[](ExperimentConfig& c, const std::string& v) {
             c.substeps = static_cast<int>(parse_int(v));
         }}},
        {"stepper.dt", quantity(&ExperimentConfig::dt_explicit, Dimension::time)},
        {"run.t_end", quantity(&ExperimentConfig::t_end, Dimension::time)},
        {"run.snapshot_stride", {[](ExperimentConfig& c, const std::string& v) {
             c.snapshot_stride = static_cast<int>(parse_int(v));
         }}},
        {"ensemble.size", {[](ExperimentConfig& c, const std::string& v) {
             c.ensemble_size = static_cast<int>(parse_int(v));
         }}},
        {"sweep.bias_min",
         quantity(&ExperimentConfig::sweep_bias_min, Dimension::voltage)},
        {"sweep.bias_max",
         quantity(&ExperimentConfig::sweep_bias_max, Dimension::voltage)},
        {"sweep.points", {[](ExperimentConfig& c, const std::string& v) {
             c.sweep_points = static_cast<int>(parse_int(v));
         }}},
        {"transmission.e_min",
         quantity(&ExperimentConfig::transmission_e_min, Dimension::energy)},
        {"transmission.e_max",
         quantity(&ExperimentConfig::transmission_e_max, Dimension::energy)},
        {"transmission.points", {[](ExperimentConfig& c, const std::string& v) {
             c.transmission_points = static_cast<int>(parse_int(v));
         }}},
    };
    return table;
}

void validate(ExperimentConfig& c, const std::map<std::string, int>& seen) {
    auto require = [&](const char* key) {
        if (!seen.count(key))
            throw std::invalid_argument(std::string("config: missing required key '") +
                                        key + "'");
    };
    require("packet.energy");
    require("packet.sigma_x");
    require("run.t_end");

    if (!(c.packet_energy > 0.0))
        throw std::invalid_argument("config: packet.energy must be positive");
    if (!(c.packet_sigma_x > 0.0))
        throw std::invalid_argument("config: packet.sigma_x must be positive");
    if (c.t_end < 0.0)
        throw std::invalid_argument("config: run.t_end must be nonnegative");
    if (!(c.barrier_height > 0.0) || !(c.barrier_width > 0.0) || !(c.well_width > 0.0))
        throw std::invalid_argument("config: device dimensions must be positive");
    if (!(c.mass > 0.0))
        throw std::invalid_argument("config: mass must be positive");
    if (!(c.tau > 0.0))
        throw std::invalid_argument("config: measure.tau must be positive");
    if (!(c.L_x > 0.0))
        throw std::invalid_argument("config: measure.L_x must be positive");
    if (c.measure_enabled && !(c.sigma_k > 0.0))
        throw std::invalid_argument("config: measure.sigma must be positive");
    if (c.substeps < 1)
        throw std::invalid_argument("config: stepper.substeps must be >= 1");
    if (c.ensemble_size < 1)
        throw std::invalid_argument("config: ensemble.size must be >= 1");
    if (c.sweep_points < 2 || c.transmission_points < 2)
        throw std::invalid_argument("config: scan point counts must be >= 2");

    if (c.dt_explicit > 0.0) {
        const double ratio = c.tau / c.dt_explicit;
        const long n = std::lround(ratio);
        if (n < 1 || std::abs(ratio - n) > 1e-9 * ratio)
            throw std::invalid_argument(
                "config: measure.tau must be an integer multiple of stepper.dt");
        c.substeps = static_cast<int>(n);
    }

    if (!c.grid_span_set) {
        const double half = 300.0 * units::bohr_per_nm;
        c.x_min = c.device_center - half;
        c.x_max = c.device_center + half;
    }
    c.grid_span_set = true;
    if (!(c.x_max > c.x_min))
        throw std::invalid_argument("config: grid.x_max must exceed grid.x_min");
    if (c.grid_n < 2 || (c.grid_n & (c.grid_n - 1)) != 0)
        throw std::invalid_argument("config: grid.n must be a power of two >= 2");

    if (!c.packet_center_set) c.packet_center = c.device_center;
    c.packet_center_set = true;

    const double dev_span = 2.0 * c.barrier_width + c.well_width;
    if (c.device_center - dev_span / 2.0 < c.x_min ||
        c.device_center + dev_span / 2.0 > c.x_max)
        throw std::invalid_argument("config: device does not fit inside the grid");
}

void emit(std::string& out, const char* key, double value, Dimension dim) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    out += key;
    out += " = ";
    out += buf;
    const char* unit = units::atomic_unit_name(dim);
    if (unit[0] != '\0') {
        out += ' ';
        out += unit;
    }
    out += '\n';
}

void emit(std::string& out, const char* key, std::uint64_t value) {
    out += key;
    out += " = ";
    out += std::to_string(value);
    out += '\n';
}

void emit(std::string& out, const char* key, long value) {
    out += key;
    out += " = ";
    out += std::to_string(value);
    out += '\n';
}

void emit(std::string& out, const char* key, bool value) {
    out += key;
    out += " = ";
    out += value ? "true" : "false";
    out += '\n';
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig c;
    std::map<std::string, int> seen;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = strip(raw);
        if (line.empty()) continue;

        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(line_no, "expected 'key = value', got '" + line + "'");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        if (value.empty()) fail(line_no, "empty value for key '" + key + "'");

        const auto it = key_table().find(key);
        if (it == key_table().end()) fail(line_no, "unknown key '" + key + "'");
        const auto [seen_it, fresh] = seen.emplace(key, line_no);
        if (!fresh)
            fail(line_no, "duplicate key '" + key + "' (first set on line " +
                              std::to_string(seen_it->second) + ")");
        try {
            it->second.set(c, value);
        } catch (const std::exception& e) {
            fail(line_no, std::string("key '") + key + "': " + e.what());
        }
    }

    validate(c, seen);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
    std::string out;
    emit(out, "grid.n", static_cast<long>(c.grid_n));
    emit(out, "grid.x_min", c.x_min, Dimension::length);
    emit(out, "grid.x_max", c.x_max, Dimension::length);
    emit(out, "device.barrier_height", c.barrier_height, Dimension::energy);
    emit(out, "device.barrier_width", c.barrier_width, Dimension::length);
    emit(out, "device.well_width", c.well_width, Dimension::length);
    emit(out, "device.center", c.device_center, Dimension::length);
    emit(out, "mass", c.mass, Dimension::dimensionless);
    emit(out, "packet.energy", c.packet_energy, Dimension::energy);
    emit(out, "packet.sigma_x", c.packet_sigma_x, Dimension::length);
    emit(out, "packet.center", c.packet_center, Dimension::length);
    emit(out, "bias", c.bias, Dimension::voltage);
    emit(out, "ramp.enabled", c.ramp_enabled);
    if (c.ramp_enabled) {
        emit(out, "ramp.v_start", c.ramp_v_start, Dimension::voltage);
        emit(out, "ramp.v_end", c.ramp_v_end, Dimension::voltage);
        emit(out, "ramp.t_ramp", c.ramp_t_ramp, Dimension::time);
    }
    emit(out, "measure.enabled", c.measure_enabled);
    emit(out, "measure.sigma", c.sigma_k, Dimension::wavevector);
    emit(out, "measure.tau", c.tau, Dimension::time);
    emit(out, "measure.L_x", c.L_x, Dimension::length);
    emit(out, "measure.epsilon", c.epsilon, Dimension::dimensionless);
    emit(out, "seed", c.seed);
    emit(out, "stepper.substeps", static_cast<long>(c.substeps));
    if (c.dt_explicit > 0.0) emit(out, "stepper.dt", c.dt_explicit, Dimension::time);
    emit(out, "run.t_end", c.t_end, Dimension::time);
    emit(out, "run.snapshot_stride", static_cast<long>(c.snapshot_stride));
    emit(out, "ensemble.size", static_cast<long>(c.ensemble_size));
    emit(out, "sweep.bias_min", c.sweep_bias_min, Dimension::voltage);
    emit(out, "sweep.bias_max", c.sweep_bias_max, Dimension::voltage);
    emit(out, "sweep.points", static_cast<long>(c.sweep_points));
    emit(out, "transmission.e_min", c.transmission_e_min, Dimension::energy);
    emit(out, "transmission.e_max", c.transmission_e_max, Dimension::energy);
    emit(out, "transmission.points", static_cast<long>(c.transmission_points));
    return out;
}

} // namespace qam
