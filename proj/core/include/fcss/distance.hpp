#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fcss/code.hpp"

namespace fcss {

enum class PauliType : std::uint8_t { X, Z };

// Shortest relative 1-cycle: a path between two distinct E components or, on a
// torus, a loop with odd winding along some axis. Grading 1 only. The result is
// exact only when those paths generate every logical; otherwise this throws.
DistanceResult dz_shortest_path(const CssCode& code);

// Unit-capacity max-flow between the two outer E components of an open-cube
// grading-1 code. The witness is the residual cut.
DistanceResult dx_min_cut(const CssCode& code);

// Default node budget, overridable through FRACTALCSS_BUDGET.
std::size_t default_search_budget();

struct SearchOptions {
    std::size_t budget = default_search_budget();
};

// Connected supports of weight 1..w_max, in increasing weight. Z supports are
// connected through shared X checks and X supports through shared Z checks.
DistanceResult exhaustive_low_weight(const CssCode& code, PauliType type, std::size_t w_max,
                                     SearchOptions opts = {});

// Commutes with the opposite-type checks and lies outside the same-type span.
bool is_logical(const CssCode& code, const PauliOperator& op);

struct ScalingFit {
    std::vector<std::pair<double, double>> points;
    double exponent = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS of the log-log residuals
};

ScalingFit fit_scaling(std::vector<std::pair<double, double>> points);

// ln(p^n - q^n) / ln p with q = p - gap, stable for huge p.
double hausdorff_dimension(int n, long double p, long double gap);
// Exponent of the minimal X-brane area, ln(p^(n-1) - q^(n-1)) / ln p.
double dx_exponent(int n, long double p, long double gap);

struct Table1Entry {
    std::string name;
    double d_h = 0.0;
    double dx_exp = 0.0;
    int p = 0;  // nonzero when the family is small enough to build
    int q = 0;
};

std::vector<Table1Entry> table1_entries();

}  // namespace fcss
