#pragma once

// Deliberately naive reference implementations. They share no code with the
// library beyond reading its data structures.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "fcss/code.hpp"
#include "fcss/complex.hpp"
#include "fcss/gf2.hpp"

namespace oracle {

using Bits = std::vector<std::uint8_t>;
using Dense = std::vector<Bits>;

Dense to_dense(const fcss::Gf2Matrix& m);
Dense rows_of(const fcss::SparseRows& s);
Dense transpose(const Dense& m, std::size_t cols);
std::size_t rank(Dense m);
bool in_span(const Dense& rows, const Bits& v);
// n - rank(HX) - rank(HZ)
std::size_t logical_count(const fcss::CssCode& code);

// Smallest-weight Z (X) logical by trying every subset in weight order.
// Returns nullopt when none has weight <= w_max.
std::optional<std::size_t> brute_min_weight(const Dense& same, const Dense& other, std::size_t n, std::size_t w_max);

// Shortest path between two distinct rough (E) components through the
// non-E 0- and 1-cells, by plain BFS from every rough vertex.
std::size_t rough_to_rough_path(const fcss::CellComplex& c);

// Edge-disjoint paths between the bottom and top rough faces along `axis`,
// counted by DFS augmentation. Qubit edges have unit capacity.
std::size_t rough_max_flow(const fcss::CellComplex& c, int axis);

// Random CSS pair: HZ rows are random combinations of ker(HX).
struct RandomCss {
    std::size_t n = 0;
    Dense hx, hz;
};
RandomCss random_css(std::mt19937_64& rng, std::size_t n, std::size_t rx, std::size_t rz);

fcss::Gf2Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density);

}  // namespace oracle
