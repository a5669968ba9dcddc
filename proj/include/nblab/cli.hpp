#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nblab/numeric.hpp"

namespace nblab {

// Fully resolved invocation: one subcommand plus its typed parameters.
// Defaults are part of the public contract and stable across versions.
struct RunConfig {
    std::string command;

    std::uint64_t q = 1;
    std::uint64_t char_index = 0;
    double p = 2.0;
    std::uint64_t n = 1;
    std::vector<double> nodes;
    std::vector<std::uint64_t> n_list;
    std::vector<cplx> coeffs;
    double sigma = 2.0;
    double t = 0.0;
    double x = 1.5;
    double u = 0.0;
    double v = 0.0;
    double T = 500.0;
    double eps = 0.0;        // 0: default per-frequency policy
    double scan = 0.0;       // kappa: emit running-sup CSV up to this X
    std::string grid;        // "a:b:steps"
    std::string zeros;       // "k1..k2"
    bool json = false;
    bool csv = false;
    bool profile = false;
    bool print_config = false;
    std::string out_path;    // empty: stdout

    /// Flat key=value form; re-parseable via --config.
    std::string to_flat() const;
};

/// Parses argv-style arguments (without the program name). A --config FILE
/// provides flat key=value defaults; explicit flags override it. Throws
/// UsageError with the offending key named.
RunConfig parse_config(const std::vector<std::string>& args);

/// Executes the command, writing the artifact to `out`. Throws module errors.
void run(const RunConfig& config, std::ostream& out);

/// parse + run with the documented exit codes:
/// 0 ok, 2 usage, 3 numeric/conditioning, 4 precision failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Doubles printed with 17 significant digits (bit-exact regression diffs).
std::string fmt17(double x);

}  // namespace nblab
