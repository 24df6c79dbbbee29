#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "exfb/search.hpp"

namespace exfb {

struct RunConfig {
    std::string command;  // solve, identities, spectrum, bifurcations, branch, sweep, normalize
    int dimension = 3;

    // Exactly one of: Gamma, (gamma, u0), (gamma, alpha).
    std::optional<double> Gamma;
    std::optional<double> gamma;
    std::optional<double> u0;
    std::optional<double> alpha;
    double R0 = 1;

    std::filesystem::path domain_path;
    std::vector<double> coefficients;  // inline domain, used when no path is given

    std::vector<int> modes;        // spectrum, bifurcations
    std::vector<double> Gammas;    // spectrum, sweep
    int mode = 2;                  // branch
    int steps = 6;
    double ds = 0.01;
    VolumeMode volume = VolumeMode::free;
    int seeds = 5;
    double fd_step = 1e-3;         // spectrum
    double p = 2;                  // AM inequality exponent
    bool basis_solver = false;     // identities: least-squares basis instead of layer potentials
    int truncation = 24;           // basis solver
    int collocation = 0;           // basis solver; 0 = 4 * truncation
    SolveOptions solve;

    std::filesystem::path output_dir;  // empty: $EXFB_OUTPUT_DIR, then ./exfb_out
    std::uint64_t seed = 0;
};

// Environment variable naming the default output directory.
inline constexpr const char* output_dir_variable = "EXFB_OUTPUT_DIR";

// Parses argv (command first). Throws InvalidArgument on malformed input;
// --help is reported through the return value of help_requested.
RunConfig parse_command_line(int argc, const char* const* argv, std::string* help = nullptr);

// "2..6", "2,3,5" or "4".
std::vector<int> parse_modes(const std::string& text);
// Comma-separated reals; fractions "1/3" accepted.
std::vector<double> parse_reals(const std::string& text);

// Runs the command, writes CSV, JSON and plot files and prints a short table
// to out. Returns 0 iff every asserted check passed, 1 otherwise.
int run(const RunConfig& config, std::ostream& out);

std::filesystem::path resolve_output_dir(const RunConfig& config);

} // namespace exfb
