#include <doctest.h>

#include <string>

#include "qammeter/config.hpp"
#include "qammeter/units.hpp"

using namespace qam;

namespace {

const char* kMinimal = R"(
packet.energy  = "0.25 eV"
packet.sigma_x = "30 nm"
run.t_end      = "22.4 fs"
)";

} // namespace

TEST_CASE("minimal config resolves with paper-style defaults") {
    const ExperimentConfig c = parse_config(kMinimal);
    CHECK(c.packet_energy == doctest::Approx(0.25 * units::hartree_per_ev));
    CHECK(c.packet_sigma_x == doctest::Approx(566.918).epsilon(1e-5));
    CHECK(c.sigma_k == doctest::Approx(0.105835).epsilon(1e-5));
    CHECK(c.tau == doctest::Approx(16.5365).epsilon(1e-5));
    CHECK(c.L_x == doctest::Approx(2834.59).epsilon(1e-5));
    CHECK(c.grid_n == 4096);
    // grid defaults to +/- 300 nm around the device
    CHECK(c.x_max - c.x_min == doctest::Approx(600.0 * units::bohr_per_nm));
    // packet defaults to the device center
    CHECK(c.packet_center == c.device_center);
    // derived wavevector
    CHECK(c.packet().k0 == doctest::Approx(0.13555).epsilon(1e-4));
}

TEST_CASE("unit conversions at the parse boundary") {
    const std::string text = std::string(kMinimal) +
                             "measure.sigma = \"2e9 /m\"\nmeasure.tau = \"4e-16 s\"\n";
    const ExperimentConfig c = parse_config(text);
    CHECK(c.sigma_k == doctest::Approx(0.10584).epsilon(1e-4));
    CHECK(c.tau == doctest::Approx(16.537).epsilon(1e-4));
}

TEST_CASE("missing required keys are named") {
    try {
        parse_config("packet.energy = \"0.25 eV\"\nrun.t_end = \"1 fs\"\n");
        FAIL("expected a throw");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("packet.sigma_x") != std::string::npos);
    }
}

TEST_CASE("unknown and duplicate keys carry line context") {
    try {
        parse_config(std::string(kMinimal) + "packet.sgima_x = \"1 nm\"\n");
        FAIL("expected a throw");
    } catch (const std::exception& e) {
        const std::string msg = e.what();
        CHECK(msg.find("unknown key") != std::string::npos);
        CHECK(msg.find("line 5") != std::string::npos);
    }
    CHECK_THROWS(parse_config(std::string(kMinimal) + "run.t_end = \"1 fs\"\n"));
}

TEST_CASE("constraint violations") {
    // tau not a multiple of dt
    CHECK_THROWS(parse_config(std::string(kMinimal) + "stepper.dt = \"3 au\"\n"));
    // explicit dt that divides tau sets the substep count
    const ExperimentConfig ok = parse_config(
        "packet.energy = \"0.25 eV\"\npacket.sigma_x = \"30 nm\"\n"
        "run.t_end = \"22.4 fs\"\nmeasure.tau = \"16 au\"\nstepper.dt = \"2 au\"\n");
    CHECK(ok.substeps == 8);

    CHECK_THROWS(parse_config(std::string(kMinimal) + "grid.n = 1000\n"));
    CHECK_THROWS(parse_config(std::string(kMinimal) + "mass = -1\n"));
    CHECK_THROWS(parse_config(std::string(kMinimal) + "ensemble.size = 0\n"));
    // malformed line
    CHECK_THROWS(parse_config(std::string(kMinimal) + "just some words\n"));
    // unit of the wrong dimension
    CHECK_THROWS(parse_config(std::string(kMinimal) + "bias = \"1 nm\"\n"));
}

TEST_CASE("serialize/parse round trip is the identity") {
    const std::string text = std::string(kMinimal) +
                             "bias = \"0.2 V\"\nramp.enabled = true\n"
                             "ramp.v_end = \"0.1 V\"\nramp.t_ramp = \"5 fs\"\n"
                             "seed = 987654321\nensemble.size = 37\n"
                             "packet.center = \"-100 nm\"\n";
    const ExperimentConfig a = parse_config(text);
    const std::string round = serialize_config(a);
    const ExperimentConfig b = parse_config(round);
    CHECK(a == b);
    CHECK(serialize_config(b) == round);
}
