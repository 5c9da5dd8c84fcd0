#include "geometry.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fcss/error.hpp"

namespace fcss::cli {

void add_geometry_flags(CLI::App& app, GeometryArgs& g) {
    app.add_option("--dim", g.dim, "lattice dimension n")->check(CLI::Range(2, kMaxDim));
    app.add_option("--p", g.p, "subdivision factor");
    app.add_option("--q", g.q, "hole width per block");
    app.add_option("--level", g.level, "fractal level");
    app.add_option("--unit", g.unit, "cells per smallest block");
    app.add_option("--i", g.i, "qubits on i-cells");
    app.add_option("--background", g.background, "open, torus or sphere")
        ->check(CLI::IsMember({"open", "torus", "sphere"}));
    app.add_option("--holes", g.holes, "m, e or mixed:<file>");
    app.add_option("--cellulation", g.cellulation, "primal, adapted or auto")
        ->check(CLI::IsMember({"primal", "adapted", "auto"}));
    app.add_option("--e-axes", g.e_axes, "rough axes (default: last axis)")->delimiter(',');
}

std::vector<HoleType> read_assignment(const std::string& path, std::size_t holes) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open hole assignment file " + path);
    std::vector<int> seen(holes, -1);
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        std::istringstream ls(line);
        std::string tag, kind;
        long long id = -1;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag != "hole" || !(ls >> id >> kind) || (kind != "e" && kind != "m"))
            throw ValidationError(path + ":" + std::to_string(lineno) + ": expected `hole <id> {e|m}`");
        if (id < 0 || static_cast<std::size_t>(id) >= holes)
            throw ValidationError(path + ":" + std::to_string(lineno) + ": hole id out of range");
        if (seen[static_cast<std::size_t>(id)] >= 0)
            throw ValidationError(path + ":" + std::to_string(lineno) + ": hole " + std::to_string(id) + " listed twice");
        seen[static_cast<std::size_t>(id)] = kind == "e";
    }
    std::vector<HoleType> out;
    for (std::size_t h = 0; h < holes; ++h) {
        if (seen[h] < 0) throw ValidationError("hole " + std::to_string(h) + " missing from " + path);
        out.push_back(seen[h] ? HoleType::E : HoleType::M);
    }
    return out;
}

FractalSpec to_spec(const GeometryArgs& g) {
    FractalSpec s;
    s.n = g.dim;
    s.p = g.p;
    s.q = g.q;
    s.level = g.level;
    s.unit = g.unit;
    s.i = g.i;
    s.background = g.background == "open" ? Background::OpenCube : parse_background(g.background);
    if (g.cellulation == "auto")
        s.cellulation = s.background == Background::OpenCube ? Cellulation::Adapted : Cellulation::Primal;
    else
        s.cellulation = parse_cellulation(g.cellulation);
    for (int a : g.e_axes) {
        if (a < 0 || a >= g.dim) throw ValidationError("--e-axes entry " + std::to_string(a) + " out of range");
        s.e_axes |= static_cast<std::uint8_t>(1U << a);
    }
    s.validate();
    if (g.holes == "m") {
        s.uniform = HoleType::M;
    } else if (g.holes == "e") {
        s.uniform = HoleType::E;
    } else if (g.holes.rfind("mixed:", 0) == 0) {
        s.assignment = read_assignment(g.holes.substr(6), fractal_holes(s.n, s.p, s.q, s.level, s.unit).size());
    } else {
        throw ValidationError("--holes must be m, e or mixed:<file>");
    }
    return s;
}

namespace {

template <class F>
auto with_input(const std::string& in, F&& read) {
    if (in == "-") return read(std::cin);
    std::ifstream f(in);
    if (!f) throw ValidationError("cannot open " + in);
    return read(f);
}

}  // namespace

std::shared_ptr<const CellComplex> load_complex(const std::string& in, const GeometryArgs& g) {
    if (in.empty()) return std::make_shared<const CellComplex>(build_fractal(to_spec(g)));
    return std::make_shared<const CellComplex>(with_input(in, [](std::istream& is) { return read_complex(is); }));
}

CssCode load_code(const std::string& in, const GeometryArgs& g) {
    if (in.empty()) return css_from_complex(load_complex("", g), g.i);
    // A code file or a complex file; the header tells which.
    return with_input(in, [&](std::istream& is) {
        std::string first;
        std::getline(is, first);
        std::stringstream rest;
        rest << first << '\n' << is.rdbuf();
        if (first.rfind("csscode", 0) == 0) return read_code(rest);
        return css_from_complex(std::make_shared<const CellComplex>(read_complex(rest)), g.i);
    });
}

}  // namespace fcss::cli
