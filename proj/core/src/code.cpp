#include "fcss/code.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "fcss/error.hpp"
#include "fcss/homology.hpp"

namespace fcss {

void SparseRows::push_row(std::span<const std::uint32_t> support) {
    std::vector<std::uint32_t> s(support.begin(), support.end());
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw ValidationError("check row repeats a column");
    if (!s.empty() && s.back() >= cols_) throw ValidationError("check row column out of range");
    inc_.push_row(s);
}

Gf2Matrix SparseRows::dense() const {
    Gf2Matrix m(rows(), cols_);
    for (std::size_t r = 0; r < rows(); ++r)
        for (auto c : row(r)) m.set(r, c);
    return m;
}

Gf2Vector SparseRows::row_vector(std::size_t r) const { return Gf2Vector::from_support(cols_, row(r)); }

Incidence SparseRows::columns() const {
    std::vector<std::vector<std::uint32_t>> cols(cols_);
    for (std::uint32_t r = 0; r < rows(); ++r)
        for (auto c : row(r)) cols[c].push_back(r);
    Incidence inc;
    for (auto& c : cols) inc.push_row(c);
    return inc;
}

std::size_t CssCode::isolated_count() const noexcept {
    return static_cast<std::size_t>(std::count(isolated_.begin(), isolated_.end(), 1));
}

std::optional<std::uint32_t> CssCode::qubit_of_cell(std::uint32_t cell) const {
    if (cell >= cell_qubit_.size() || cell_qubit_[cell] == UINT32_MAX) return std::nullopt;
    return cell_qubit_[cell];
}

void CssCode::finish() {
    if (hx_.cols() != n_ || hz_.cols() != n_) throw ValidationError("check matrices do not match the qubit count");
    if (!checks_commute(*this)) throw ValidationError("X and Z checks do not commute");
    std::vector<char> seen(n_, 0);
    for (std::size_t r = 0; r < hx_.rows(); ++r)
        for (auto q : hx_.row(r)) seen[q] = 1;
    for (std::size_t r = 0; r < hz_.rows(); ++r)
        for (auto q : hz_.row(r)) seen[q] = 1;
    isolated_.assign(n_, 0);
    for (std::size_t q = 0; q < n_; ++q) isolated_[q] = !seen[q];
}

CssCode CssCode::from_checks(std::size_t n_qubits, SparseRows hx, SparseRows hz, int grading) {
    CssCode c;
    c.n_ = n_qubits;
    c.grading_ = grading;
    c.hx_ = std::move(hx);
    c.hz_ = std::move(hz);
    c.finish();
    return c;
}

CssCode CssCode::swapped() const {
    CssCode c = *this;
    std::swap(c.hx_, c.hz_);
    std::swap(c.x_anchor_, c.z_anchor_);
    return c;
}

bool checks_commute(const CssCode& code) {
    const Incidence zcols = code.hz_rows().columns();
    std::vector<std::uint8_t> parity(code.hz_rows().rows(), 0), seen(code.hz_rows().rows(), 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t r = 0; r < code.hx_rows().rows(); ++r) {
        touched.clear();
        for (auto q : code.hx_rows().row(r))
            for (auto z : zcols.row(q)) {
                if (!seen[z]) {
                    seen[z] = 1;
                    touched.push_back(z);
                }
                parity[z] ^= 1;
            }
        bool ok = true;
        for (auto z : touched) {
            ok = ok && !parity[z];
            parity[z] = seen[z] = 0;
        }
        if (!ok) return false;
    }
    return true;
}

CssCode css_from_complex(std::shared_ptr<const CellComplex> cp, int i) {
    if (!cp) throw ValidationError("css_from_complex: null complex");
    const CellComplex& c = *cp;
    if (i < 1 || i > c.dim() - 1)
        throw ValidationError("grading " + std::to_string(i) + " outside 1.." + std::to_string(c.dim() - 1));
    CssCode code;
    code.grading_ = i;
    code.cell_qubit_.assign(c.count(i), UINT32_MAX);
    for (const auto& cell : c.cells(i)) {
        if (cell.label.is_e()) continue;
        code.cell_qubit_[cell.id] = static_cast<std::uint32_t>(code.qubit_cell_.size());
        code.qubit_cell_.push_back(cell.id);
    }
    code.n_ = code.qubit_cell_.size();
    code.hx_ = SparseRows(code.n_);
    code.hz_ = SparseRows(code.n_);
    std::vector<std::uint32_t> row;
    for (const auto& cell : c.cells(i - 1)) {
        if (cell.label.is_e()) continue;
        row.clear();
        for (auto up : c.coboundary_of(i - 1, cell.id))
            if (code.cell_qubit_[up] != UINT32_MAX) row.push_back(code.cell_qubit_[up]);
        if (row.empty()) continue;
        code.hx_.push_row(row);
        code.x_anchor_.push_back(cell.id);
    }
    for (const auto& cell : c.cells(i + 1)) {
        if (cell.label.is_e()) continue;
        row.clear();
        for (auto f : c.boundary_of(i + 1, cell.id))
            if (code.cell_qubit_[f] != UINT32_MAX) row.push_back(code.cell_qubit_[f]);
        if (row.empty()) continue;
        code.hz_.push_row(row);
        code.z_anchor_.push_back(cell.id);
    }
    code.source_ = std::move(cp);
    code.finish();
    return code;
}

CssCode css_from_complex(const CellComplex& c, int i) { return css_from_complex(std::make_shared<const CellComplex>(c), i); }

std::size_t PauliOperator::weight() const {
    Gf2Vector u = x;
    auto zw = z.words();
    auto uw = u.words();
    for (std::size_t j = 0; j < uw.size(); ++j) uw[j] |= zw[j];
    return u.weight();
}

std::string to_string(DistanceKind k) {
    switch (k) {
        case DistanceKind::Exact: return "exact";
        case DistanceKind::UpperBound: return "upper_bound";
        case DistanceKind::CertifiedAbove: return "certified_above";
    }
    return "?";
}

std::string describe(const DistanceResult& r) {
    if (r.kind == DistanceKind::CertifiedAbove) return "certified_above(" + std::to_string(r.value) + ")";
    return to_string(r.kind);
}

std::size_t logical_count(const CssCode& code) {
    const std::size_t rx = rank(code.hx()), rz = rank(code.hz());
    return code.n_qubits() - rx - rz;
}

CodeParams code_params(const CssCode& code, bool cross_check) {
    CodeParams p;
    p.n_qubits = code.n_qubits();
    p.k = logical_count(code);
    if (cross_check && code.source()) {
        const auto b = betti({*code.source(), code.grading(), LabelSet::e_labels()}).value;
        if (b != p.k)
            throw InternalError("k = " + std::to_string(p.k) + " from check ranks but relative Betti number is " +
                                std::to_string(b));
    }
    return p;
}

namespace {

// Canonical representatives of ker(checks) modulo span(stabs), `want` of them.
std::vector<Gf2Vector> coset_reps(const Gf2Matrix& checks, const Gf2Matrix& stabs, std::size_t want) {
    RowSpace stab_space(stabs.cols());
    stab_space.add_rows(stabs);
    RowSpace grown = stab_space;
    std::vector<Gf2Vector> out;
    for (auto& v : kernel_basis(checks)) {
        if (out.size() == want) break;
        if (grown.add(v)) out.push_back(stab_space.reduce(std::move(v)));
    }
    if (out.size() != want) throw InternalError("logical basis: kernel too small");
    return out;
}

}  // namespace

LogicalBasis logical_basis(const CssCode& code) {
    LogicalBasis lb;
    const std::size_t k = logical_count(code);
    if (k == 0) return lb;
    const Gf2Matrix hx = code.hx(), hz = code.hz();
    const auto zs = coset_reps(hx, hz, k);
    const auto xs = coset_reps(hz, hx, k);

    Gf2Matrix gram(k, k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            if (zs[a].dot(xs[b])) gram.set(a, b);
    RowSpace xstab(hx.cols());
    xstab.add_rows(hx);
    for (std::size_t l = 0; l < k; ++l) {
        Gf2Vector e(k);
        e.set(l);
        auto m = solve(gram, e);
        if (!m) throw InternalError("logical basis: singular pairing");
        Gf2Vector x(code.n_qubits());
        for (std::size_t b = 0; b < k; ++b)
            if (m->get(b)) x ^= xs[b];
        lb.x.push_back(PauliOperator::x_type(xstab.reduce(std::move(x))));
    }
    for (const auto& z : zs) lb.z.push_back(PauliOperator::z_type(z));
    return lb;
}

void write_code(std::ostream& os, const CssCode& code) {
    os << "csscode v1\n";
    os << "nqubits " << code.n_qubits() << " i " << code.grading() << '\n';
    os << "HX\n";
    write_matrix(os, code.hx());
    os << "HZ\n";
    write_matrix(os, code.hz());
    os << "qubitmap\n";
    const auto qc = code.qubit_cell();
    for (std::size_t q = 0; q < qc.size(); ++q) os << "q " << q << " -> cell " << qc[q] << '\n';
}

CssCode read_code(std::istream& is) {
    std::string tok, ver;
    if (!(is >> tok >> ver) || tok != "csscode" || ver != "v1") throw ValidationError("expected 'csscode v1' header");
    std::size_t n = 0;
    int i = 1;
    std::string t2;
    if (!(is >> tok >> n >> t2 >> i) || tok != "nqubits" || t2 != "i") throw ValidationError("csscode: bad header line");
    auto sparse = [&](const char* name) {
        if (!(is >> tok) || tok != name) throw ValidationError(std::string("csscode: missing ") + name + " block");
        const Gf2Matrix m = read_matrix(is);
        if (m.cols() != n) throw ValidationError(std::string("csscode: ") + name + " column count mismatch");
        SparseRows s(n);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            const auto sup = m.row(r).support();
            s.push_row(sup);
        }
        return s;
    };
    CssCode code;
    code.n_ = n;
    code.grading_ = i;
    code.hx_ = sparse("HX");
    code.hz_ = sparse("HZ");
    if (is >> tok) {
        if (tok != "qubitmap") throw ValidationError("csscode: expected qubitmap");
        std::string q, arrow, cell;
        std::size_t qi = 0;
        std::uint32_t id = 0;
        while (is >> q >> qi >> arrow >> cell >> id) {
            if (q != "q" || arrow != "->" || cell != "cell" || qi != code.qubit_cell_.size())
                throw ValidationError("csscode: bad qubitmap line");
            code.qubit_cell_.push_back(id);
        }
        if (!code.qubit_cell_.empty() && code.qubit_cell_.size() != n)
            throw ValidationError("csscode: qubitmap does not cover every qubit");
    }
    code.finish();
    return code;
}

}  // namespace fcss
