#ifndef QAMMETER_RUN_COMMAND_HPP
#define QAMMETER_RUN_COMMAND_HPP

#include <optional>
#include <string>

#include "qammeter/config.hpp"

namespace qam {

inline constexpr const char* kVersion = "qammeter 0.1.0";

struct CommandOptions {
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed; // overrides config seed
    int threads = 0;                   // 0: leave the OpenMP default
};

/// Executes one of run | ensemble | sweep | transmission | selftest.
/// Artifacts are CSV files in out_dir, each prefixed with the resolved
/// atomic-unit config as '#' comment lines; a copy also lands in
/// config_resolved.txt. Returns a process exit status (0 on success); on
/// failure writes a machine-readable error.json and returns nonzero.
int run_command(const std::string& subcommand, ExperimentConfig config,
                const CommandOptions& options);

} // namespace qam

#endif
