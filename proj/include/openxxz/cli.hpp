#pragma once

#include <cstdint>
#include <string>

#include "openxxz/params.hpp"
#include "openxxz/vectors.hpp"

namespace openxxz {

// Batch harness configuration.  Every run is reproducible from (command,
// seed, N, trials, precision, mode): all randomness is derived from the seed
// and reports carry no volatile fields.
struct RunConfig {
    enum class Command { VerifyAxioms, Solve, ScalarProduct, Asymptotics, FullReport };

    Command command = Command::VerifyAxioms;
    std::uint64_t seed = 1;
    int N = 2;
    int trials = 20;
    Precision precision = Precision::Double;
    ParamMode mode = ParamMode::Inhomogeneous;
    std::string output_path;  // empty: derived from OPENXXZ_OUT_DIR or cwd
};

std::string command_name(RunConfig::Command c);
std::string default_output_path(const RunConfig& cfg);

// Runs the configured command, writes the report file, prints a summary
// table to stdout.  Returns 0 when every hard criterion passed, 1 when a
// criterion failed, 2 on configuration errors.
int run(const RunConfig& cfg);

}  // namespace openxxz
