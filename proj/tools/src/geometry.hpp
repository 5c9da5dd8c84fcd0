#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fcss/code.hpp"
#include "fcss/complex.hpp"

namespace CLI {
class App;
}

namespace fcss::cli {

// Geometry flags shared by every subcommand that builds a complex.
struct GeometryArgs {
    int dim = 3;
    int p = 3;
    int q = 1;
    int level = 1;
    int unit = 1;
    int i = 1;
    std::string background = "open";
    std::string holes = "m";
    std::string cellulation = "auto";  // adapted on the open cube, primal elsewhere
    std::vector<int> e_axes;
};

void add_geometry_flags(CLI::App& app, GeometryArgs& g);

FractalSpec to_spec(const GeometryArgs& g);

// `hole <id> {e|m}` lines; every hole of the pattern must be listed once.
std::vector<HoleType> read_assignment(const std::string& path, std::size_t holes);

// Complex from --in (a cellcomplex file, "-" for stdin) or from the flags.
std::shared_ptr<const CellComplex> load_complex(const std::string& in, const GeometryArgs& g);
CssCode load_code(const std::string& in, const GeometryArgs& g);

}  // namespace fcss::cli
