#pragma once

#include <string>

#include "geometry.hpp"

namespace CLI {
class App;
}

namespace fcss::cli {

// Flags that several subcommands share besides the geometry.
struct CommonArgs {
    GeometryArgs geom;
    std::string in;
    std::string out;
    unsigned seed = 0;
    int threads = 1;
};

// Each register_* adds one subcommand whose callback returns its exit code
// through `status`.
void register_gen(CLI::App& app, int& status);
void register_code(CLI::App& app, int& status);
void register_params(CLI::App& app, int& status);
void register_distance(CLI::App& app, int& status);
void register_homology(CLI::App& app, int& status);
void register_gate_check(CLI::App& app, int& status);
void register_merge(CLI::App& app, int& status);
void register_scan(CLI::App& app, int& status);
void register_table1(CLI::App& app, int& status);
void register_export(CLI::App& app, int& status);

}  // namespace fcss::cli
