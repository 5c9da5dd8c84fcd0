#include "fcss/gf2.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fcss/error.hpp"

namespace fcss {

namespace {

void xor_words(std::span<Word> dst, std::span<const Word> src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

}  // namespace

Gf2Vector Gf2Vector::from_support(std::size_t len, std::span<const std::uint32_t> ones) {
    Gf2Vector v(len);
    for (auto i : ones) {
        if (i >= len) throw ValidationError("support index out of range");
        v.flip(i);
    }
    return v;
}

void Gf2Vector::set(std::size_t i, bool v) {
    const Word bit = Word{1} << (i % kWordBits);
    if (v)
        w_[i / kWordBits] |= bit;
    else
        w_[i / kWordBits] &= ~bit;
}

std::size_t Gf2Vector::weight() const noexcept {
    std::size_t s = 0;
    for (auto w : w_) s += static_cast<std::size_t>(std::popcount(w));
    return s;
}

bool Gf2Vector::any() const noexcept {
    return std::any_of(w_.begin(), w_.end(), [](Word w) { return w != 0; });
}

std::size_t Gf2Vector::overlap(const Gf2Vector& o) const {
    if (o.len_ != len_) throw ValidationError("vector length mismatch");
    std::size_t s = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) s += static_cast<std::size_t>(std::popcount(w_[i] & o.w_[i]));
    return s;
}

bool Gf2Vector::dot(const Gf2Vector& o) const { return overlap(o) & 1U; }

std::vector<std::uint32_t> Gf2Vector::support() const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        Word w = w_[i];
        while (w) {
            out.push_back(static_cast<std::uint32_t>(i * kWordBits + std::countr_zero(w)));
            w &= w - 1;
        }
    }
    return out;
}

std::size_t Gf2Vector::first() const noexcept {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) return i * kWordBits + static_cast<std::size_t>(std::countr_zero(w_[i]));
    return len_;
}

Gf2Vector& Gf2Vector::operator^=(const Gf2Vector& o) {
    if (o.len_ != len_) throw ValidationError("vector length mismatch");
    xor_words(w_, o.w_);
    return *this;
}

Gf2Vector& Gf2Vector::operator&=(const Gf2Vector& o) {
    if (o.len_ != len_) throw ValidationError("vector length mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
}

Gf2Matrix Gf2Matrix::identity(std::size_t n) {
    Gf2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

Gf2Matrix Gf2Matrix::from_rows(std::span<const Gf2Vector> rows, std::size_t cols) {
    Gf2Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
    return m;
}

void Gf2Matrix::set(std::size_t r, std::size_t c, bool v) {
    Word& w = data_[r * stride_ + c / kWordBits];
    const Word bit = Word{1} << (c % kWordBits);
    if (v)
        w |= bit;
    else
        w &= ~bit;
}

Gf2Vector Gf2Matrix::row(std::size_t r) const {
    Gf2Vector v(cols_);
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(r * stride_), stride_, v.words().begin());
    return v;
}

void Gf2Matrix::set_row(std::size_t r, const Gf2Vector& v) {
    if (v.size() != cols_) throw ValidationError("row length mismatch");
    std::copy(v.words().begin(), v.words().end(), data_.begin() + static_cast<std::ptrdiff_t>(r * stride_));
}

void Gf2Matrix::append_row(const Gf2Vector& v) {
    if (v.size() != cols_) throw ValidationError("row length mismatch");
    data_.insert(data_.end(), v.words().begin(), v.words().end());
    ++rows_;
}

Gf2Matrix Gf2Matrix::transpose() const {
    Gf2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto rw = row_words(r);
        for (std::size_t i = 0; i < stride_; ++i) {
            Word w = rw[i];
            while (w) {
                t.flip(i * kWordBits + static_cast<std::size_t>(std::countr_zero(w)), r);
                w &= w - 1;
            }
        }
    }
    return t;
}

Gf2Vector Gf2Matrix::mul(const Gf2Vector& x) const {
    if (x.size() != cols_) throw ValidationError("matrix-vector dimension mismatch");
    Gf2Vector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto rw = row_words(r);
        unsigned par = 0;
        for (std::size_t i = 0; i < stride_; ++i) par ^= static_cast<unsigned>(std::popcount(rw[i] & x.words()[i]));
        if (par & 1U) y.flip(r);
    }
    return y;
}

Gf2Matrix Gf2Matrix::mul(const Gf2Matrix& o) const {
    if (cols_ != o.rows_) throw ValidationError("matrix-matrix dimension mismatch");
    Gf2Matrix out(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto dst = out.row_words(r);
        auto rw = row_words(r);
        for (std::size_t i = 0; i < stride_; ++i) {
            Word w = rw[i];
            while (w) {
                xor_words(dst, o.row_words(i * kWordBits + static_cast<std::size_t>(std::countr_zero(w))));
                w &= w - 1;
            }
        }
    }
    return out;
}

bool Gf2Matrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Word w) { return w == 0; });
}

Echelon reduced_echelon(Gf2Matrix m) {
    Echelon e;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        const std::size_t wi = c / kWordBits;
        const Word bit = Word{1} << (c % kWordBits);
        std::size_t piv = r;
        while (piv < rows && !(m.row_words(piv)[wi] & bit)) ++piv;
        if (piv == rows) continue;
        if (piv != r) {
            auto a = m.row_words(piv), b = m.row_words(r);
            std::swap_ranges(a.begin(), a.end(), b.begin());
        }
        auto pr = m.row_words(r);
        for (std::size_t o = 0; o < rows; ++o) {
            if (o == r) continue;
            auto orow = m.row_words(o);
            if (orow[wi] & bit) {
                // columns before c are already cleared in pivot row
                for (std::size_t i = wi; i < orow.size(); ++i) orow[i] ^= pr[i];
            }
        }
        e.pivots.push_back(c);
        ++r;
    }
    e.rref = std::move(m);
    return e;
}

std::size_t rank(const Gf2Matrix& m0) {
    // forward elimination only
    Gf2Matrix m = m0;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        const std::size_t wi = c / kWordBits;
        const Word bit = Word{1} << (c % kWordBits);
        std::size_t piv = r;
        while (piv < rows && !(m.row_words(piv)[wi] & bit)) ++piv;
        if (piv == rows) continue;
        if (piv != r) {
            auto a = m.row_words(piv), b = m.row_words(r);
            std::swap_ranges(a.begin(), a.end(), b.begin());
        }
        auto pr = m.row_words(r);
        for (std::size_t o = r + 1; o < rows; ++o) {
            auto orow = m.row_words(o);
            if (orow[wi] & bit)
                for (std::size_t i = wi; i < orow.size(); ++i) orow[i] ^= pr[i];
        }
        ++r;
    }
    return r;
}

std::vector<Gf2Vector> kernel_basis(const Gf2Matrix& m) {
    const Echelon e = reduced_echelon(m);
    const std::size_t cols = m.cols();
    std::vector<char> is_pivot(cols, 0);
    for (auto p : e.pivots) is_pivot[p] = 1;
    std::vector<Gf2Vector> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Gf2Vector v(cols);
        v.set(f);
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            if (e.rref.get(r, f)) v.set(e.pivots[r]);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<Gf2Vector> solve(const Gf2Matrix& m, const Gf2Vector& b) {
    if (b.size() != m.rows()) throw ValidationError("solve: b length must equal matrix rows");
    // Augment [m | b] and reduce.
    Gf2Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (auto c : m.row(r).support()) aug.set(r, c);
        if (b.get(r)) aug.set(r, m.cols());
    }
    const Echelon e = reduced_echelon(std::move(aug));
    Gf2Vector x(m.cols());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == m.cols()) return std::nullopt;
        if (e.rref.get(r, m.cols())) x.set(e.pivots[r]);
    }
    return x;
}

std::size_t quotient_dim(const Gf2Matrix& space, const Gf2Matrix& subspace) {
    if (space.cols() != subspace.cols()) throw ValidationError("quotient_dim: column count mismatch");
    RowSpace rs(space.cols());
    rs.add_rows(space);
    for (std::size_t r = 0; r < subspace.rows(); ++r) {
        if (!rs.contains(subspace.row(r))) {
            std::ostringstream msg;
            msg << "quotient_dim: subspace row " << r << " lies outside span(space)";
            throw ContainmentError(r, msg.str());
        }
    }
    return rs.rank() - rank(subspace);
}

bool RowSpace::add(const Gf2Vector& v) {
    if (v.size() != cols_) throw ValidationError("RowSpace: length mismatch");
    Gf2Vector r = reduce(v);
    const std::size_t p = r.first();
    if (p == cols_) return false;
    // keep the basis fully reduced on pivot columns
    for (auto& b : basis_)
        if (b.get(p)) b ^= r;
    basis_.push_back(std::move(r));
    pivot_.push_back(p);
    return true;
}

void RowSpace::add_rows(const Gf2Matrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) add(m.row(r));
}

Gf2Vector RowSpace::reduce(Gf2Vector v) const {
    if (basis_.empty()) return v;
    for (std::size_t j = 0; j < basis_.size(); ++j)
        if (v.get(pivot_[j])) v ^= basis_[j];
    return v;
}

bool RowSpace::contains(const Gf2Vector& v) const { return !reduce(v).any(); }

void write_matrix(std::ostream& os, const Gf2Matrix& m) {
    os << "gf2matrix v1\n" << m.rows() << ' ' << m.cols() << '\n';
    std::string line(m.cols(), '0');
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) line[c] = m.get(r, c) ? '1' : '0';
        os << line << '\n';
    }
}

Gf2Matrix read_matrix(std::istream& is) {
    std::string magic, version;
    if (!(is >> magic >> version) || magic != "gf2matrix" || version != "v1")
        throw ValidationError("expected 'gf2matrix v1' header");
    std::size_t rows = 0, cols = 0;
    if (!(is >> rows >> cols)) throw ValidationError("gf2matrix: missing dimensions");
    Gf2Matrix m(rows, cols);
    std::string line;
    for (std::size_t r = 0; r < rows; ++r) {
        if (cols == 0) {
            // empty rows are blank lines; nothing to read
            continue;
        }
        if (!(is >> line) || line.size() != cols) throw ValidationError("gf2matrix: bad row " + std::to_string(r));
        for (std::size_t c = 0; c < cols; ++c) {
            if (line[c] == '1')
                m.set(r, c);
            else if (line[c] != '0')
                throw ValidationError("gf2matrix: non-binary character");
        }
    }
    return m;
}

}  // namespace fcss
