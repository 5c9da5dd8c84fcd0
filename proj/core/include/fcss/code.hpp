#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fcss/complex.hpp"
#include "fcss/gf2.hpp"

namespace fcss {

// Check matrix kept as sorted supports, one row per stabilizer.
class SparseRows {
public:
    SparseRows() = default;
    explicit SparseRows(std::size_t cols) : cols_(cols) {}

    void push_row(std::span<const std::uint32_t> support);
    std::size_t rows() const noexcept { return inc_.rows(); }
    std::size_t cols() const noexcept { return cols_; }
    std::span<const std::uint32_t> row(std::size_t r) const { return inc_.row(r); }
    std::size_t nnz() const noexcept { return inc_.nnz(); }
    Gf2Matrix dense() const;
    Gf2Vector row_vector(std::size_t r) const;
    // Column-major view: for every column, the rows touching it.
    Incidence columns() const;
    bool operator==(const SparseRows&) const = default;

private:
    std::size_t cols_ = 0;
    Incidence inc_;
};

class CssCode {
public:
    // Plain check matrices; throws unless every X row commutes with every Z row.
    static CssCode from_checks(std::size_t n_qubits, SparseRows hx, SparseRows hz, int grading = 1);

    std::size_t n_qubits() const noexcept { return n_; }
    int grading() const noexcept { return grading_; }
    const SparseRows& hx_rows() const noexcept { return hx_; }
    const SparseRows& hz_rows() const noexcept { return hz_; }
    Gf2Matrix hx() const { return hx_.dense(); }
    Gf2Matrix hz() const { return hz_.dense(); }

    // Complex-backed codes only; empty otherwise.
    const std::shared_ptr<const CellComplex>& source() const noexcept { return source_; }
    std::span<const std::uint32_t> qubit_cell() const noexcept { return qubit_cell_; }
    std::span<const std::uint32_t> x_anchor() const noexcept { return x_anchor_; }
    std::span<const std::uint32_t> z_anchor() const noexcept { return z_anchor_; }
    std::span<const char> isolated() const noexcept { return isolated_; }
    std::size_t isolated_count() const noexcept;
    // Qubit index of an i-cell id, if that cell carries a qubit.
    std::optional<std::uint32_t> qubit_of_cell(std::uint32_t cell) const;

    // X and Z exchanged.
    CssCode swapped() const;

private:
    friend CssCode css_from_complex(std::shared_ptr<const CellComplex> c, int i);
    friend CssCode read_code(std::istream& is);
    CssCode() = default;
    void finish();

    std::size_t n_ = 0;
    int grading_ = 1;
    SparseRows hx_, hz_;
    std::shared_ptr<const CellComplex> source_;
    std::vector<std::uint32_t> qubit_cell_, x_anchor_, z_anchor_;
    std::vector<char> isolated_;
    std::vector<std::uint32_t> cell_qubit_;
};

// Qubits on the non-E i-cells, X checks on the non-E (i-1)-cells and Z checks on
// the non-E (i+1)-cells. Removing E cells is the relative chain complex C(L, B_e);
// checks that end up empty are dropped.
CssCode css_from_complex(std::shared_ptr<const CellComplex> c, int i);
CssCode css_from_complex(const CellComplex& c, int i);

// Every X row has even overlap with every Z row.
bool checks_commute(const CssCode& code);

struct PauliOperator {
    Gf2Vector x;
    Gf2Vector z;

    static PauliOperator x_type(Gf2Vector v) {
        Gf2Vector z(v.size());
        return {std::move(v), std::move(z)};
    }
    static PauliOperator z_type(Gf2Vector v) {
        Gf2Vector x(v.size());
        return {std::move(x), std::move(v)};
    }
    std::size_t size() const noexcept { return x.size(); }
    std::size_t weight() const;
    bool is_x_type() const noexcept { return !z.any(); }
    bool is_z_type() const noexcept { return !x.any(); }
    bool operator==(const PauliOperator&) const = default;
};

enum class DistanceKind : std::uint8_t { Exact, UpperBound, CertifiedAbove };

struct DistanceResult {
    // For CertifiedAbove, value is w: no logical of weight <= w exists.
    std::size_t value = 0;
    DistanceKind kind = DistanceKind::Exact;
    PauliOperator witness;
};

std::string to_string(DistanceKind k);
std::string describe(const DistanceResult& r);

struct CodeParams {
    std::size_t n_qubits = 0;
    std::size_t k = 0;
    std::optional<DistanceResult> d_z;
    std::optional<DistanceResult> d_x;
};

// k from the check ranks. Complex-backed codes are cross-checked against the
// relative Betti number H_i(L, B_e); a mismatch throws InternalError.
CodeParams code_params(const CssCode& code, bool cross_check = true);
std::size_t logical_count(const CssCode& code);

struct LogicalBasis {
    std::vector<PauliOperator> z;
    std::vector<PauliOperator> x;
};

// z[a] and x[b] overlap oddly iff a == b. Z logicals are canonical coset
// representatives modulo the Z stabilizers; the X logicals are then paired to them.
LogicalBasis logical_basis(const CssCode& code);

void write_code(std::ostream& os, const CssCode& code);
CssCode read_code(std::istream& is);

}  // namespace fcss
