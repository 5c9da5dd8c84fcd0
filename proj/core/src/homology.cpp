#include "fcss/homology.hpp"

#include <sstream>

#include "fcss/error.hpp"

namespace fcss {

namespace {

void check_grade(const CellComplex& c, int k) {
    if (k < 0 || k > c.dim())
        throw ValidationError("grade " + std::to_string(k) + " outside 0.." + std::to_string(c.dim()));
}

std::size_t boundary_rank(const CellComplex& c, int k, bool transposed) {
    if (k < 1 || k > c.dim() || c.count(k) == 0 || c.count(k - 1) == 0) return 0;
    Gf2Matrix m = c.boundary_matrix(k);
    return transposed ? rank(m.transpose()) : rank(m);
}

enum class Closure { Closed, Open };

// Classifies the selected cells; throws on a selection that is neither
// face-closed nor coface-closed.
Closure classify(const CellComplex& c, const LabelSet& labels) {
    bool closed = true, open = true;
    std::string closed_witness, open_witness;
    for (int k = 1; k <= c.dim(); ++k) {
        for (const auto& cell : c.cells(k)) {
            const bool s = labels.matches(cell.label);
            for (auto f : c.boundary_of(k, cell.id)) {
                const bool fs = labels.matches(c.cell(k - 1, f).label);
                if (s && !fs && closed) {
                    closed = false;
                    closed_witness = std::to_string(k) + ":" + std::to_string(cell.id);
                }
                if (!s && fs && open) {
                    open = false;
                    open_witness = std::to_string(k - 1) + ":" + std::to_string(f);
                }
            }
        }
    }
    if (closed) return Closure::Closed;
    if (open) return Closure::Open;
    std::ostringstream msg;
    msg << "relative homology: selection is neither closed (cell " << closed_witness
        << " has an unselected face) nor open (cell " << open_witness << " has an unselected coface)";
    throw ValidationError(msg.str());
}

using CellMask = std::vector<std::vector<char>>;

CellMask label_mask(const CellComplex& c, const LabelSet& labels) {
    CellMask m(static_cast<std::size_t>(c.dim() + 1));
    for (int k = 0; k <= c.dim(); ++k)
        for (const auto& cell : c.cells(k)) m[static_cast<std::size_t>(k)].push_back(labels.matches(cell.label));
    return m;
}

// Subcomplex of unmasked cells; valid when the mask is closed under cofaces.
CellComplex excise(const CellComplex& c, const CellMask& mask) {
    const int n = c.dim();
    std::vector<std::vector<std::uint32_t>> remap(static_cast<std::size_t>(n + 1));
    std::vector<std::vector<Cell>> cells(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        remap[kk].assign(c.count(k), UINT32_MAX);
        for (const auto& cell : c.cells(k)) {
            if (mask[kk][cell.id]) continue;
            Cell nc = cell;
            nc.id = static_cast<std::uint32_t>(cells[kk].size());
            remap[kk][cell.id] = nc.id;
            cells[kk].push_back(nc);
        }
    }
    std::vector<Incidence> bnd(static_cast<std::size_t>(n + 1));
    std::vector<std::uint32_t> ids;
    for (int k = 1; k <= n; ++k)
        for (const auto& cell : c.cells(k)) {
            if (mask[static_cast<std::size_t>(k)][cell.id]) continue;
            ids.clear();
            for (auto f : c.boundary_of(k, cell.id)) {
                const auto id = remap[static_cast<std::size_t>(k - 1)][f];
                if (id == UINT32_MAX) throw InternalError("excision: kept cell has an excised face");
                ids.push_back(id);
            }
            bnd[static_cast<std::size_t>(k)].push_row(ids);
        }
    return CellComplex(n, c.background(), c.side(), c.cellulation(), c.primal_axes(), std::move(cells),
                       std::move(bnd));
}

std::size_t absolute_cobetti(const CellComplex& c, int k) {
    // ker(delta^k) has dimension |C_k| - rank(d_{k+1}^T); im(delta^{k-1}) has rank(d_k^T)
    return c.count(k) - boundary_rank(c, k + 1, true) - boundary_rank(c, k, true);
}

template <class F>
BettiResult relative(const HomologyRequest& req, F&& absolute) {
    check_grade(req.complex, req.grade);
    if (req.relative.empty()) return {absolute(req.complex, req.grade), false};
    BettiResult r;
    r.reduced_caveat = req.grade == 0;
    bool any = false;
    for (int k = 0; k <= req.complex.dim() && !any; ++k)
        for (const auto& cell : req.complex.cells(k))
            if (req.relative.matches(cell.label)) {
                any = true;
                break;
            }
    if (!any) {
        r.value = absolute(req.complex, req.grade);
        return r;
    }
    if (classify(req.complex, req.relative) == Closure::Closed)
        r.value = absolute(quotient_to_point(req.complex, req.relative), req.grade);
    else
        r.value = absolute(excise(req.complex, label_mask(req.complex, req.relative)), req.grade);
    return r;
}

}  // namespace

std::size_t absolute_betti(const CellComplex& c, int k) {
    check_grade(c, k);
    return c.count(k) - boundary_rank(c, k, false) - boundary_rank(c, k + 1, false);
}

BettiResult betti(const HomologyRequest& req) { return relative(req, absolute_betti); }

BettiResult cobetti(const HomologyRequest& req) { return relative(req, absolute_cobetti); }

LefschetzReport verify_lefschetz(const CellComplex& c, int i, const LabelSet& labels_e, const LabelSet& labels_m) {
    check_grade(c, i);
    // Near a unit hole the half-shifted axes lose whole layers of cells, so an
    // adapted complex need not be a manifold with boundary.
    if (c.cellulation() == Cellulation::Adapted)
        throw ValidationError("lefschetz: needs a primal cellulation of the geometry");
    if (labels_e.intersects(labels_m)) throw ValidationError("lefschetz: E and M label sets overlap");
    for (int k = 0; k <= c.dim(); ++k)
        for (const auto& cell : c.cells(k))
            if (cell.label.is_boundary() && !labels_e.matches(cell.label) && !labels_m.matches(cell.label))
                throw ValidationError("lefschetz: label " + to_string(cell.label) +
                                      " is in neither the E nor the M set");
    LefschetzReport rep;
    rep.lhs = betti({c, i, labels_e}).value;
    // B_m is the closure of the M cells: it shares its rim with B_e.
    CellMask m = label_mask(c, labels_m);
    const int n = c.dim();
    for (int k = n; k >= 1; --k)
        for (const auto& cell : c.cells(k))
            if (m[static_cast<std::size_t>(k)][cell.id])
                for (auto f : c.boundary_of(k, cell.id)) m[static_cast<std::size_t>(k - 1)][f] = 1;
    // Cochains vanishing on B_m are the chains of the transposed complex with
    // those cells removed; primal grade n - i sits at transposed grade i.
    const CellComplex d = dual(c);
    CellMask dm(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) dm[static_cast<std::size_t>(n - k)] = m[static_cast<std::size_t>(k)];
    rep.rhs = absolute_betti(excise(d, dm), i);
    rep.equal = rep.lhs == rep.rhs;
    return rep;
}

}  // namespace fcss
