#pragma once

#include "atlas/raster.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace atlas {

struct RunConfig {
    /// amoeba | compactified | wca | complex | classify | check | pi0
    std::string command;
    std::optional<std::string> poly;
    std::optional<std::string> poly_file;
    /// Empty means the automatic window.
    std::optional<Window> window;
    int grid = 400;
    int thetas = 256;
    int slices = 400;
    double r = 1.0;
    std::vector<double> schedule;
    std::optional<double> eps;
    std::uint64_t seed = 1;
    std::optional<std::string> out;
    std::optional<std::string> svg;
    /// direct | limit
    std::string method = "direct";
    std::optional<std::uint64_t> jitter;

    /// Throws InputError when a field is out of range.
    void validate() const;
};

/// Flags override the JSON file named by --config, which overrides the defaults.
/// Throws InputError on unknown commands, flags or malformed values.
RunConfig parse_command_line(int argc, const char* const* argv);

/// Parses "x0,x1,y0,y1"; "auto" gives nullopt.
std::optional<Window> parse_window(const std::string& text);

std::vector<double> parse_schedule(const std::string& text);

/// Runs one command. The JSON artifact goes to config.out, or to `out` when no path
/// is set; diagnostics go to `err`. Returns 0, 1 (input error) or 2 (refusal).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Entry point shared by the executable and the tests.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace atlas
