#pragma once

#include <cstddef>

#include "fcss/complex.hpp"

namespace fcss {

struct HomologyRequest {
    const CellComplex& complex;
    int grade = 1;
    LabelSet relative;  // empty: absolute homology
};

struct BettiResult {
    std::size_t value = 0;
    // Grade 0 relative to a nonempty boundary: the quotient gives the
    // unreduced value, which differs from H_0(L, B) by one.
    bool reduced_caveat = false;
};

// Relative homology goes through the quotient L/B when the selection is closed
// under faces, and through excision (homology of L minus B) when it is closed
// under cofaces. Anything else is rejected with a witness cell.
BettiResult betti(const HomologyRequest& req);
BettiResult cobetti(const HomologyRequest& req);

// Absolute Betti number of a complex, dense elimination.
std::size_t absolute_betti(const CellComplex& c, int k);

struct LefschetzReport {
    std::size_t lhs = 0;  // H_i(L, B_e)
    std::size_t rhs = 0;  // H^{n-i}(L, B_m), from the transposed complex
    bool equal = false;
};

LefschetzReport verify_lefschetz(const CellComplex& c, int i, const LabelSet& labels_e, const LabelSet& labels_m);

}  // namespace fcss
