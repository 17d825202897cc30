#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fext {

enum ExitCode : int {
    exit_ok = 0,
    exit_failures = 1,
    exit_config = 2,
    exit_consistency = 3,
    exit_replay_mismatch = 4,
};

struct RunOptions {
    std::filesystem::path scenario;
    std::vector<std::string> suites;
    std::optional<std::uint64_t> horizon;
    std::optional<std::uint64_t> seed;
    bool strict = false;
    std::optional<std::filesystem::path> replay;
    /// report.txt and decisions.log go here; empty means write nothing.
    std::filesystem::path out;
};

struct RunResult {
    int exit_code = exit_ok;
    std::string report;
    std::string log;
    /// Diagnostic for exit codes 2 to 4.
    std::string error;
};

/// Loads the scenario, runs the suites and writes the outputs. Never throws
/// for bad input; the problem is reported through the exit code.
RunResult run(const RunOptions& opts);

}  // namespace fext
