#pragma once

#include "config.hpp"

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace affrigid::app {

struct Context {
    std::filesystem::path output_dir = ".";
    int jobs = 1;
    std::vector<std::string> argv; ///< recorded in the manifest
    std::ostream* out = nullptr;
    std::ostream* err = nullptr;
};

/// Exit codes shared by all subcommands.
enum ExitCode : int { kOk = 0, kPartial = 1, kUsage = 2 };

/// Spectrum table over all channels plus the run manifest.
int command_run(const RunConfig& config, const Context& ctx);

/// Ground energy, threshold and classification of every planar channel.
int command_scan(const RunConfig& config, const Context& ctx);

/// Refinement study per channel with observed orders and extrapolated values.
int command_convergence(const RunConfig& config, const Context& ctx);

/// Suite names accepted by command_verify; "all" runs every suite.
const std::vector<std::string>& verify_suites();

/// Prints one PASS/FAIL line per check; kOk iff every check passes.
int command_verify(const std::string& suite, std::uint64_t seed, const Context& ctx);

} // namespace affrigid::app
