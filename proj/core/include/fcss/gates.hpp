#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fcss/code.hpp"
#include "fcss/complex.hpp"

namespace fcss {

// Site s of the stack sits on qubit qubit_of_site[j][s] of code j.
struct StackAlignment {
    std::size_t sites = 0;
    std::vector<std::vector<std::uint32_t>> qubit_of_site;

    static StackAlignment identity(std::size_t sites, std::size_t copies);
    void validate(std::span<const CssCode* const> codes) const;
};

// Pairs qubits of complex-backed codes whose cells share coordinates.
StackAlignment align_by_coordinates(std::span<const CssCode* const> codes);

enum class CondStatus : std::uint8_t { Pass, Fail, NotApplicable };

// Stabilizers are named X<row>, logicals L<index>, faces F<row>.
struct Witness {
    std::string a, b, c;  // c empty for pairs
    int parity = 0;
};

struct ConditionResult {
    std::string id;
    CondStatus status = CondStatus::Pass;
    std::size_t checked = 0;
    std::vector<Witness> failures;
};

struct GateCheckReport {
    std::vector<ConditionResult> conditions;

    bool passed() const;
    std::size_t failure_count() const;
};

void write_report(std::ostream& os, const GateCheckReport& r);

GateCheckReport check_transversal_cz(const CssCode& a, const CssCode& b, const StackAlignment& align);
GateCheckReport check_transversal_ccz(const CssCode& a, const CssCode& b, const CssCode& c,
                                      const StackAlignment& align);

// X part times a diagonal phase (-1)^(linear.z + sum over pairs z_i z_j).
// Qubit j of copy c has global index c * block + j.
struct PhasePolyOperator {
    std::size_t block = 0;
    Gf2Vector x_support;
    Gf2Vector linear_z;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> quadratic_cz;  // i < j, sorted
    int sign = 1;
    // Whether the CZ part acts as the logical identity on the other two copies;
    // otherwise identity_witness names a pair with odd triple overlap.
    bool logical_identity = true;
    std::optional<Witness> identity_witness;
};

bool commutes(const PhasePolyOperator& p, const PhasePolyOperator& q);

// Three aligned copies with their stabilizer and logical X supports on sites.
class CczStack {
public:
    CczStack(const CssCode& a, const CssCode& b, const CssCode& c, StackAlignment align);

    const CssCode& code(int j) const { return *codes_.at(static_cast<std::size_t>(j)); }
    const StackAlignment& alignment() const noexcept { return align_; }
    std::size_t block() const noexcept { return block_; }
    GateCheckReport check() const;
    PhasePolyOperator conjugate(const PauliOperator& s, int copy) const;
    // Every X and Z check of every copy, conjugated.
    std::vector<PhasePolyOperator> conjugated_stabilizers() const;

    struct Ops {
        std::vector<std::vector<std::uint32_t>> sites;  // stabilizers first, then logicals
        std::size_t stabs = 0;
        Incidence by_site;
        std::string name(std::size_t i) const;
    };

private:
    std::array<const CssCode*, 3> codes_{};
    StackAlignment align_;
    std::size_t block_ = 0;
    std::array<Ops, 3> ops_;
    std::array<std::vector<std::uint32_t>, 3> site_of_qubit_;
};

PhasePolyOperator conjugate_by_ccz(const PauliOperator& s, int copy, const CczStack& stack);

struct CommutationReport {
    std::size_t operators = 0;
    std::size_t pairs_checked = 0;
    std::size_t failures = 0;
    std::optional<std::pair<std::size_t, std::size_t>> witness;
};

// Only pairs that touch a common qubit are compared; all others commute trivially.
CommutationReport check_pairwise_commutation(std::span<const PhasePolyOperator> ops);

struct VasmerBrowneStack {
    std::vector<CssCode> codes;  // three copies
    StackAlignment align;
    // Per copy and X check: the check lost a site to a hole.
    std::array<std::vector<char>, 3> hole_boundary;
    int scale = 3;  // lattice cells per unit of L
};

// Three codes on the edges of a cubic box of side 3L. Copy 1 has vertex-star X
// checks and rough z-faces; copies 2 and 3 have X checks on the two parity
// classes of cubes with rough x- and y-faces. Holes are boxes in units of L.
VasmerBrowneStack build_vasmer_browne_stack(int L, std::span<const HoleBox> holes = {});
VasmerBrowneStack build_vasmer_browne_stack(int L, const FractalSpec& holes);

// Hexagonal color code, stored through its dual triangular lattice: faces are
// lattice points (u, w) of color (u - w) mod 3 and qubits are triangles.
struct ColorCode2D {
    using Point = std::array<int, 2>;
    CssCode code;
    std::vector<std::array<Point, 3>> triangles;  // one per qubit
    std::vector<Point> faces;                      // one per check row (X and Z alike)
    std::vector<int> face_color;
    std::vector<std::uint8_t> bipartition;  // 0: upward triangle, 1: downward
    int color_a = 0;                        // zigzag sides
    int color_b = 1;                        // straight sides
    std::vector<Point> virtual_faces;       // outside faces that close the boundary
};

ColorCode2D build_color_code_2d(int L);
// Shrinks the faces of one color to vertices; returns (L_A, L_B).
std::pair<CellComplex, CellComplex> shrunk_lattices(const ColorCode2D& cc);
CellComplex shrunk_lattice(const ColorCode2D& cc, int color);
GateCheckReport check_transversal_s_colorcode(const ColorCode2D& cc);

struct CellPair {
    int k = 0;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
};

struct MergeInterface {
    std::vector<CellPair> pairs;
};

// Pairs the E cells on the upper `axis` face of a with those on the lower face of b.
MergeInterface rough_interface(const CellComplex& a, const CellComplex& b, int axis);

struct MergeResult {
    CssCode merged;
    std::size_t k_a = 0, k_b = 0, k_merged = 0;
    std::vector<std::uint32_t> interface_qubits;
    std::vector<std::uint32_t> interface_x_checks;  // rows of merged H_X
    bool parity_identity = false;
};

// Glues the two complexes along the paired E cells, which become bulk, and
// rebuilds the code. The parity identity holds when the product of the new X
// checks equals the product of both X logicals up to the old X checks.
MergeResult merge_rough(const CssCode& a, const CssCode& b, const MergeInterface& iface);

}  // namespace fcss
