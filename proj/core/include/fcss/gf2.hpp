#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace fcss {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

class Gf2Vector {
public:
    Gf2Vector() = default;
    explicit Gf2Vector(std::size_t len) : len_(len), w_(words_for(len), 0) {}

    static Gf2Vector from_support(std::size_t len, std::span<const std::uint32_t> ones);

    std::size_t size() const noexcept { return len_; }
    bool get(std::size_t i) const { return (w_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i, bool v = true);
    void flip(std::size_t i) { w_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

    std::size_t weight() const noexcept;
    bool any() const noexcept;
    // Parity of the overlap.
    bool dot(const Gf2Vector& o) const;
    std::size_t overlap(const Gf2Vector& o) const;
    std::vector<std::uint32_t> support() const;
    // First set bit, or size() if none.
    std::size_t first() const noexcept;

    Gf2Vector& operator^=(const Gf2Vector& o);
    Gf2Vector& operator&=(const Gf2Vector& o);
    friend Gf2Vector operator^(Gf2Vector a, const Gf2Vector& b) { return a ^= b; }
    friend Gf2Vector operator&(Gf2Vector a, const Gf2Vector& b) { return a &= b; }
    bool operator==(const Gf2Vector&) const = default;

    std::span<const Word> words() const noexcept { return w_; }
    std::span<Word> words() noexcept { return w_; }

private:
    std::size_t len_ = 0;
    std::vector<Word> w_;
};

// Row-major, 64 bits per word, padding bits kept zero.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, 0) {}

    static Gf2Matrix identity(std::size_t n);
    static Gf2Matrix from_rows(std::span<const Gf2Vector> rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1U;
    }
    void set(std::size_t r, std::size_t c, bool v = true);
    void flip(std::size_t r, std::size_t c) { data_[r * stride_ + c / kWordBits] ^= Word{1} << (c % kWordBits); }

    std::span<Word> row_words(std::size_t r) { return {data_.data() + r * stride_, stride_}; }
    std::span<const Word> row_words(std::size_t r) const { return {data_.data() + r * stride_, stride_}; }
    Gf2Vector row(std::size_t r) const;
    void set_row(std::size_t r, const Gf2Vector& v);
    void append_row(const Gf2Vector& v);

    Gf2Matrix transpose() const;
    Gf2Vector mul(const Gf2Vector& x) const;    // m * x
    Gf2Matrix mul(const Gf2Matrix& o) const;    // m * o
    bool is_zero() const noexcept;

    bool operator==(const Gf2Matrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<Word> data_;
};

std::size_t rank(const Gf2Matrix& m);
std::vector<Gf2Vector> kernel_basis(const Gf2Matrix& m);
// First-pivot back-substitution: free variables are zero.
std::optional<Gf2Vector> solve(const Gf2Matrix& m, const Gf2Vector& b);
// rank(space) - rank(subspace), after checking rowspan(subspace) is inside rowspan(space).
std::size_t quotient_dim(const Gf2Matrix& space, const Gf2Matrix& subspace);

struct Echelon {
    Gf2Matrix rref;                    // reduced, pivot rows first
    std::vector<std::size_t> pivots;   // pivot column of row r
};
Echelon reduced_echelon(Gf2Matrix m);

// Incrementally built row space with membership tests.
class RowSpace {
public:
    explicit RowSpace(std::size_t cols) : cols_(cols) {}
    std::size_t cols() const noexcept { return cols_; }
    std::size_t rank() const noexcept { return basis_.size(); }
    // Returns true when v was independent and got added.
    bool add(const Gf2Vector& v);
    void add_rows(const Gf2Matrix& m);
    bool contains(const Gf2Vector& v) const;
    Gf2Vector reduce(Gf2Vector v) const;

private:
    std::size_t cols_;
    std::vector<Gf2Vector> basis_;      // basis_[j] has pivot bit pivot_[j], absent from every other row
    std::vector<std::size_t> pivot_;
};

// `gf2matrix v1` text format.
void write_matrix(std::ostream& os, const Gf2Matrix& m);
Gf2Matrix read_matrix(std::istream& is);

}  // namespace fcss
