#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qammeter/run_command.hpp"

int main(int argc, char** argv) {
    CLI::App app{"1D quantum-transport simulator with a sequential Gaussian "
                 "ammeter (POVM on the total current)"};
    app.require_subcommand(1);

    std::string config_path;
    qam::CommandOptions options;
    std::uint64_t seed = 0;
    bool seed_given = false;

    const char* names[] = {"run", "ensemble", "sweep", "transmission", "selftest"};
    const char* descs[] = {
        "single measured trajectory: outcomes, snapshots, mass split",
        "Monte Carlo ensemble: mean current vs time with standard errors",
        "I-V sweep over a bias grid",
        "transfer-matrix T(E) scan (independent oracle)",
        "run the built-in invariant suite"};
    for (int i = 0; i < 5; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descs[i]);
        sub->add_option("--config", config_path, "experiment config file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", options.out_dir, "output directory");
        sub->add_option("--seed", seed, "override the config RNG seed")
            ->each([&](const std::string&) { seed_given = true; });
        sub->add_option("--threads", options.threads, "OpenMP thread count");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const qam::ExperimentConfig config = qam::load_config(config_path);
        if (seed_given) options.seed = seed;
        const std::string sub = app.get_subcommands().front()->get_name();
        return qam::run_command(sub, config, options);
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
        return 1;
    }
}
