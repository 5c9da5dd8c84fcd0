#include "fcss/complex.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include "fcss/error.hpp"

namespace fcss {

namespace {

// Sort ids and cancel repeated pairs (mod-2 incidence).
void reduce_mod2(std::vector<std::uint32_t>& ids) {
    std::sort(ids.begin(), ids.end());
    std::vector<std::uint32_t> out;
    out.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size();) {
        std::size_t j = i;
        while (j < ids.size() && ids[j] == ids[i]) ++j;
        if ((j - i) & 1U) out.push_back(ids[i]);
        i = j;
    }
    ids.swap(out);
}

std::uint8_t full_mask(int n) { return static_cast<std::uint8_t>((1U << n) - 1U); }

void check_dim(int n) {
    if (n < 2 || n > kMaxDim) throw ValidationError("unsupported dimension " + std::to_string(n) + " (need 2..4)");
}

using LookupMaps = std::vector<std::unordered_map<Coord, std::uint32_t, CoordHash>>;

LookupMaps make_lookup(const std::vector<std::vector<Cell>>& cells) {
    LookupMaps maps(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
        maps[k].reserve(cells[k].size());
        for (const auto& c : cells[k]) maps[k].emplace(c.x2, c.id);
    }
    return maps;
}

}  // namespace

std::string to_string(BoundaryLabel l) {
    switch (l.kind) {
        case LabelKind::Bulk: return "bulk";
        case LabelKind::OuterE: return "outerE:" + std::to_string(l.id);
        case LabelKind::OuterM: return "outerM:" + std::to_string(l.id);
        case LabelKind::HoleE: return "holeE:" + std::to_string(l.id);
        case LabelKind::HoleM: return "holeM:" + std::to_string(l.id);
    }
    return "?";
}

BoundaryLabel parse_label(const std::string& s) {
    if (s == "bulk") return {};
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ValidationError("bad label '" + s + "'");
    const std::string kind = s.substr(0, colon);
    BoundaryLabel l;
    try {
        l.id = std::stoi(s.substr(colon + 1));
    } catch (const std::exception&) {
        throw ValidationError("bad label id in '" + s + "'");
    }
    if (kind == "outerE")
        l.kind = LabelKind::OuterE;
    else if (kind == "outerM")
        l.kind = LabelKind::OuterM;
    else if (kind == "holeE")
        l.kind = LabelKind::HoleE;
    else if (kind == "holeM")
        l.kind = LabelKind::HoleM;
    else
        throw ValidationError("bad label kind '" + kind + "'");
    return l;
}

std::string to_string(Background b) {
    switch (b) {
        case Background::OpenCube: return "open";
        case Background::Torus: return "torus";
        case Background::Sphere: return "sphere";
    }
    return "?";
}

Background parse_background(const std::string& s) {
    if (s == "open" || s == "open-cube") return Background::OpenCube;
    if (s == "torus") return Background::Torus;
    if (s == "sphere") return Background::Sphere;
    throw ValidationError("unknown background '" + s + "'");
}

std::string to_string(Cellulation c) { return c == Cellulation::Primal ? "primal" : "adapted"; }

Cellulation parse_cellulation(const std::string& s) {
    if (s == "primal") return Cellulation::Primal;
    if (s == "adapted") return Cellulation::Adapted;
    throw ValidationError("unknown cellulation '" + s + "'");
}

LabelSet LabelSet::kinds(std::initializer_list<LabelKind> ks) {
    LabelSet s;
    for (auto k : ks) s.items_.push_back({k, -1});
    return s;
}

bool LabelSet::matches(BoundaryLabel l) const noexcept {
    if (!l.is_boundary()) return false;
    return std::any_of(items_.begin(), items_.end(),
                       [&](const BoundaryLabel& it) { return it.kind == l.kind && (it.id < 0 || it.id == l.id); });
}

bool LabelSet::intersects(const LabelSet& o) const noexcept {
    for (const auto& a : items_)
        for (const auto& b : o.items_)
            if (a.kind == b.kind && (a.id < 0 || b.id < 0 || a.id == b.id)) return true;
    return false;
}

CellComplex::CellComplex(int dim, Background bg, int side, Cellulation cellulation, std::uint8_t primal_axes,
                         std::vector<std::vector<Cell>> cells, std::vector<Incidence> boundary)
    : dim_(dim), bg_(bg), side_(side), cellulation_(cellulation), primal_axes_(primal_axes),
      cells_(std::move(cells)), bnd_(std::move(boundary)) {
    const auto grades = static_cast<std::size_t>(dim_ + 1);
    if (cells_.size() != grades || bnd_.size() != grades) throw ValidationError("complex: grade count mismatch");
    for (std::size_t k = 0; k < grades; ++k) {
        for (std::size_t i = 0; i < cells_[k].size(); ++i)
            if (cells_[k][i].id != i) throw ValidationError("complex: cell ids must be dense indices");
        if (k == 0) continue;
        if (bnd_[k].rows() != cells_[k].size()) throw ValidationError("complex: boundary row count mismatch");
        for (std::size_t i = 0; i < cells_[k].size(); ++i)
            for (auto f : bnd_[k].row(i))
                if (f >= cells_[k - 1].size()) throw ValidationError("complex: boundary id out of range");
    }
    // coboundary lists
    cob_.resize(grades);
    for (std::size_t k = 0; k < grades; ++k) {
        std::vector<std::vector<std::uint32_t>> rows(cells_[k].size());
        if (k + 1 < grades)
            for (std::uint32_t j = 0; j < cells_[k + 1].size(); ++j)
                for (auto f : bnd_[k + 1].row(j)) rows[f].push_back(j);
        Incidence inc;
        for (auto& r : rows) inc.push_row(r);
        cob_[k] = std::move(inc);
    }
    lookup_ = make_lookup(cells_);
}

Gf2Matrix CellComplex::boundary_matrix(int k) const {
    if (k < 1 || k > dim_) throw ValidationError("boundary_matrix: grade out of range");
    Gf2Matrix m(count(k - 1), count(k));
    for (std::uint32_t j = 0; j < count(k); ++j)
        for (auto f : boundary_of(k, j)) m.flip(f, j);
    return m;
}

std::optional<std::uint32_t> CellComplex::find(int k, const Coord& x2) const {
    const auto& m = lookup_.at(static_cast<std::size_t>(k));
    auto it = m.find(x2);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

long long CellComplex::euler_characteristic() const {
    long long chi = 0;
    for (int k = 0; k <= dim_; ++k) chi += (k % 2 ? -1LL : 1LL) * static_cast<long long>(count(k));
    return chi;
}

std::size_t CellComplex::total_cells() const {
    std::size_t s = 0;
    for (const auto& g : cells_) s += g.size();
    return s;
}

CellComplex build_lattice(int n, int L, Background bg, LatticeOptions opts) {
    check_dim(n);
    if (L < 1) throw ValidationError("lattice side must be >= 1");
    std::uint8_t e_axes = opts.e_axes ? opts.e_axes : static_cast<std::uint8_t>(1U << (n - 1));
    if (e_axes & ~full_mask(n)) throw ValidationError("e-axes outside the lattice dimension");

    if (bg == Background::Sphere) {
        CellComplex open = build_lattice(n, L, Background::OpenCube, {Cellulation::Primal, e_axes});
        return quotient_to_point(open, LabelSet::outer());
    }

    const bool torus = bg == Background::Torus;
    const Cellulation cellulation = torus ? Cellulation::Primal : opts.cellulation;
    const std::uint8_t primal = cellulation == Cellulation::Primal ? full_mask(n) : e_axes;
    const int period = 2 * L;

    std::array<int, kMaxDim> lo{}, hi{};
    for (int a = 0; a < n; ++a) {
        const bool is_primal = (primal >> a) & 1U;
        lo[a] = is_primal ? 0 : 1;
        hi[a] = torus ? period - 1 : (is_primal ? period : period - 1);
    }

    std::vector<std::vector<Cell>> cells(static_cast<std::size_t>(n + 1));
    Coord x{};
    for (int a = 0; a < n; ++a) x[a] = lo[a];
    while (true) {
        Cell c;
        c.x2 = x;
        for (int a = 0; a < n; ++a) {
            const bool odd = x[a] & 1;
            const bool is_primal = (primal >> a) & 1U;
            if (odd == is_primal) c.extent |= static_cast<std::uint8_t>(1U << a);
        }
        if (!torus) {
            int first_e = -1, first_m = -1;
            for (int a = 0; a < n; ++a) {
                if (!((primal >> a) & 1U)) continue;
                int side = -1;
                if (x[a] == 0) side = 0;
                if (x[a] == period) side = 1;
                if (side < 0) continue;
                const int face = 2 * a + side;
                if ((e_axes >> a) & 1U) {
                    if (first_e < 0) first_e = face;
                } else if (first_m < 0) {
                    first_m = face;
                }
            }
            if (first_e >= 0)
                c.label = {LabelKind::OuterE, first_e};
            else if (first_m >= 0)
                c.label = {LabelKind::OuterM, first_m};
        }
        auto& grade = cells[static_cast<std::size_t>(std::popcount(c.extent))];
        c.id = static_cast<std::uint32_t>(grade.size());
        grade.push_back(c);

        int a = n - 1;
        while (a >= 0 && x[a] == hi[a]) {
            x[a] = lo[a];
            --a;
        }
        if (a < 0) break;
        ++x[a];
    }

    const LookupMaps maps = make_lookup(cells);
    std::vector<Incidence> bnd(static_cast<std::size_t>(n + 1));
    std::vector<std::uint32_t> ids;
    for (int k = 1; k <= n; ++k) {
        for (const auto& c : cells[static_cast<std::size_t>(k)]) {
            ids.clear();
            for (int a = 0; a < n; ++a) {
                if (!((c.extent >> a) & 1U)) continue;
                for (int s : {-1, 1}) {
                    Coord y = c.x2;
                    y[a] += s;
                    if (torus) y[a] = ((y[a] % period) + period) % period;
                    auto it = maps[static_cast<std::size_t>(k - 1)].find(y);
                    if (it == maps[static_cast<std::size_t>(k - 1)].end())
                        throw InternalError("lattice: missing boundary cell");
                    ids.push_back(it->second);
                }
            }
            reduce_mod2(ids);
            bnd[static_cast<std::size_t>(k)].push_row(ids);
        }
    }
    return CellComplex(n, bg, L, cellulation, primal, std::move(cells), std::move(bnd));
}

int FractalSpec::side() const {
    long long s = unit;
    for (int l = 0; l < level; ++l) s *= p;
    if (s > (1 << 20)) throw ValidationError("fractal side too large");
    return static_cast<int>(s);
}

void FractalSpec::validate() const {
    check_dim(n);
    if (!(0 < q && q < p)) throw ValidationError("need 0 < q < p");
    if ((p - q) % 2 != 0) throw ValidationError("(p - q) must be even so holes sit on the integer lattice");
    if (level < 0) throw ValidationError("level must be >= 0");
    if (unit < 1) throw ValidationError("unit must be >= 1");
    if (i < 1 || i > n - 1) throw ValidationError("grading i must lie in 1..n-1");
}

std::vector<HoleBox> fractal_holes(int n, int p, int q, int level, int unit) {
    std::vector<HoleBox> out;
    const int off = (p - q) / 2;
    std::function<void(const Coord&, int, int)> rec = [&](const Coord& origin, int size, int lev) {
        if (lev == 0) return;
        const int sub = size / p;
        HoleBox h;
        for (int a = 0; a < n; ++a) {
            h.lo[a] = origin[a] + off * sub;
            h.hi[a] = origin[a] + (off + q) * sub;
        }
        out.push_back(h);
        std::array<int, kMaxDim> idx{};
        while (true) {
            bool in_hole = true;
            for (int a = 0; a < n; ++a) in_hole = in_hole && idx[a] >= off && idx[a] < off + q;
            if (!in_hole) {
                Coord o = origin;
                for (int a = 0; a < n; ++a) o[a] += idx[a] * sub;
                rec(o, sub, lev - 1);
            }
            int a = n - 1;
            while (a >= 0 && idx[a] == p - 1) {
                idx[a] = 0;
                --a;
            }
            if (a < 0) break;
            ++idx[a];
        }
    };
    long long L = unit;
    for (int l = 0; l < level; ++l) L *= p;
    rec(Coord{}, static_cast<int>(L), level);
    return out;
}

CellComplex punch_holes(const CellComplex& base, std::span<const HoleBox> boxes, std::span<const HoleType> types) {
    if (boxes.size() != types.size()) throw ValidationError("hole assignment size does not match hole count");
    if (base.background() == Background::Sphere) throw ValidationError("punch holes before collapsing to a sphere");
    const int n = base.dim();
    const auto grades = static_cast<std::size_t>(n + 1);

    std::vector<std::vector<char>> deleted(grades), mark(grades);
    std::vector<std::vector<BoundaryLabel>> labels(grades);
    for (std::size_t k = 0; k < grades; ++k) {
        deleted[k].assign(base.count(static_cast<int>(k)), 0);
        mark[k].assign(base.count(static_cast<int>(k)), 0);
        for (const auto& c : base.cells(static_cast<int>(k))) labels[k].push_back(c.label);
    }

    struct Ref {
        int k;
        std::uint32_t id;
    };
    // mark bits: 1 = in K, 2 = in deleted set of this hole, 4 = in closure
    for (std::size_t h = 0; h < boxes.size(); ++h) {
        const HoleBox& box = boxes[h];
        std::vector<Ref> K;
        Coord x{};
        std::array<int, kMaxDim> lo{}, hi{};
        bool empty = false;
        for (int a = 0; a < n; ++a) {
            lo[a] = 2 * box.lo[a] + 1;
            hi[a] = 2 * box.hi[a] - 1;
            if (lo[a] > hi[a]) empty = true;
            x[a] = lo[a];
        }
        if (empty) throw ValidationError("hole " + std::to_string(h) + " has an empty interior");
        while (true) {
            for (int k = 0; k <= n; ++k)
                if (auto id = base.find(k, x)) K.push_back({k, *id});
            int a = n - 1;
            while (a >= 0 && x[a] == hi[a]) {
                x[a] = lo[a];
                --a;
            }
            if (a < 0) break;
            ++x[a];
        }
        for (const auto& r : K) mark[static_cast<std::size_t>(r.k)][r.id] |= 1;

        std::vector<Ref> del;
        if (types[h] == HoleType::M) {
            // upward closure of K
            std::vector<Ref> stack = K;
            for (const auto& r : K) mark[static_cast<std::size_t>(r.k)][r.id] |= 2;
            while (!stack.empty()) {
                Ref r = stack.back();
                stack.pop_back();
                del.push_back(r);
                if (r.k == n) continue;
                for (auto up : base.coboundary_of(r.k, r.id)) {
                    auto& m = mark[static_cast<std::size_t>(r.k + 1)][up];
                    if (!(m & 2)) {
                        m |= 2;
                        stack.push_back({r.k + 1, up});
                    }
                }
            }
        } else {
            // cells of K whose whole star stays in K, decided top grade first
            std::vector<Ref> sorted = K;
            std::sort(sorted.begin(), sorted.end(), [](const Ref& a, const Ref& b) { return a.k > b.k; });
            for (const auto& r : sorted) {
                bool inside = true;
                if (r.k < n)
                    for (auto up : base.coboundary_of(r.k, r.id))
                        if (!(mark[static_cast<std::size_t>(r.k + 1)][up] & 2)) inside = false;
                if (inside) {
                    mark[static_cast<std::size_t>(r.k)][r.id] |= 2;
                    del.push_back(r);
                }
            }
        }

        // closure of the seed set (star for M, K for E), minus the deleted cells, gets the hole label
        std::vector<Ref> seed = types[h] == HoleType::M ? del : K;
        std::vector<Ref> stack = seed, touched = seed;
        for (const auto& r : seed) mark[static_cast<std::size_t>(r.k)][r.id] |= 4;
        while (!stack.empty()) {
            Ref r = stack.back();
            stack.pop_back();
            if (r.k == 0) continue;
            for (auto f : base.boundary_of(r.k, r.id)) {
                auto& m = mark[static_cast<std::size_t>(r.k - 1)][f];
                if (!(m & 4)) {
                    m |= 4;
                    stack.push_back({r.k - 1, f});
                    touched.push_back({r.k - 1, f});
                }
            }
        }
        const BoundaryLabel hole_label{types[h] == HoleType::M ? LabelKind::HoleM : LabelKind::HoleE,
                                       static_cast<std::int32_t>(h)};
        for (const auto& r : touched) {
            const auto k = static_cast<std::size_t>(r.k);
            if (mark[k][r.id] & 2) continue;
            auto& l = labels[k][r.id];
            if (types[h] == HoleType::E || !l.is_boundary()) l = hole_label;
        }
        for (const auto& r : del) deleted[static_cast<std::size_t>(r.k)][r.id] = 1;
        for (const auto& r : touched) mark[static_cast<std::size_t>(r.k)][r.id] = 0;
        for (const auto& r : K) mark[static_cast<std::size_t>(r.k)][r.id] = 0;
        for (const auto& r : del) mark[static_cast<std::size_t>(r.k)][r.id] = 0;
    }

    std::vector<std::vector<std::uint32_t>> remap(grades);
    std::vector<std::vector<Cell>> cells(grades);
    for (std::size_t k = 0; k < grades; ++k) {
        remap[k].assign(base.count(static_cast<int>(k)), UINT32_MAX);
        for (const auto& c : base.cells(static_cast<int>(k))) {
            if (deleted[k][c.id]) continue;
            Cell nc = c;
            nc.id = static_cast<std::uint32_t>(cells[k].size());
            nc.label = labels[k][c.id];
            remap[k][c.id] = nc.id;
            cells[k].push_back(nc);
        }
    }
    std::vector<Incidence> bnd(grades);
    std::vector<std::uint32_t> ids;
    for (std::size_t k = 1; k < grades; ++k) {
        for (const auto& c : base.cells(static_cast<int>(k))) {
            if (deleted[k][c.id]) continue;
            ids.clear();
            for (auto f : base.boundary_of(static_cast<int>(k), c.id)) {
                if (remap[k - 1][f] == UINT32_MAX) throw InternalError("punch: surviving cell lost a face");
                ids.push_back(remap[k - 1][f]);
            }
            std::sort(ids.begin(), ids.end());
            bnd[k].push_row(ids);
        }
    }
    return CellComplex(n, base.background(), base.side(), base.cellulation(), base.primal_axes(), std::move(cells),
                       std::move(bnd));
}

CellComplex punch_fractal(const CellComplex& base, const FractalSpec& spec) {
    spec.validate();
    if (base.dim() != spec.n) throw ValidationError("fractal dimension does not match the base complex");
    if (base.side() != spec.side())
        throw ValidationError("base side " + std::to_string(base.side()) + " is not p^level * unit = " +
                              std::to_string(spec.side()));
    const auto boxes = fractal_holes(spec.n, spec.p, spec.q, spec.level, spec.unit);
    std::vector<HoleType> types = spec.assignment;
    if (types.empty()) types.assign(boxes.size(), spec.uniform);
    if (types.size() != boxes.size())
        throw ValidationError("hole assignment lists " + std::to_string(types.size()) + " holes, geometry has " +
                              std::to_string(boxes.size()));
    return punch_holes(base, boxes, types);
}

CellComplex build_fractal(const FractalSpec& spec) {
    spec.validate();
    const bool sphere = spec.background == Background::Sphere;
    const Background bg = sphere ? Background::OpenCube : spec.background;
    const Cellulation cl = spec.background == Background::OpenCube ? spec.cellulation : Cellulation::Primal;
    CellComplex c = build_lattice(spec.n, spec.side(), bg, {cl, spec.e_axes});
    c = punch_fractal(c, spec);
    if (sphere) c = quotient_to_point(c, LabelSet::outer());
    return c;
}

CellComplex dual(const CellComplex& c) {
    const int n = c.dim();
    const auto grades = static_cast<std::size_t>(n + 1);
    std::vector<std::vector<Cell>> cells(grades);
    for (int k = 0; k <= n; ++k) {
        auto& out = cells[static_cast<std::size_t>(n - k)];
        for (const auto& cell : c.cells(k)) {
            Cell d = cell;
            d.extent = static_cast<std::uint8_t>(~cell.extent & full_mask(n));
            out.push_back(d);
        }
    }
    std::vector<Incidence> bnd(grades);
    std::vector<std::uint32_t> ids;
    for (int dk = 1; dk <= n; ++dk) {
        const int k = n - dk;  // primal grade of these dual cells
        for (std::uint32_t i = 0; i < c.count(k); ++i) {
            auto cob = c.coboundary_of(k, i);
            ids.assign(cob.begin(), cob.end());
            bnd[static_cast<std::size_t>(dk)].push_row(ids);
        }
    }
    return CellComplex(n, c.background(), c.side(), c.cellulation(),
                       static_cast<std::uint8_t>(~c.primal_axes() & full_mask(n)), std::move(cells), std::move(bnd));
}

CellComplex quotient_to_point(const CellComplex& c, const LabelSet& labels) {
    if (labels.empty()) throw ValidationError("quotient_to_point: empty label set");
    const int n = c.dim();
    const auto grades = static_cast<std::size_t>(n + 1);
    std::vector<std::vector<char>> sel(grades);
    std::size_t selected = 0;
    bool all_outer = true;
    for (int k = 0; k <= n; ++k) {
        for (const auto& cell : c.cells(k)) {
            const bool s = labels.matches(cell.label);
            sel[static_cast<std::size_t>(k)].push_back(s);
            selected += s;
            if ((cell.label.kind == LabelKind::OuterE || cell.label.kind == LabelKind::OuterM) && !s) all_outer = false;
        }
    }
    if (selected == 0) throw ValidationError("quotient_to_point: labels select no cells");
    for (int k = 1; k <= n; ++k)
        for (const auto& cell : c.cells(k)) {
            if (!sel[static_cast<std::size_t>(k)][cell.id]) continue;
            for (auto f : c.boundary_of(k, cell.id))
                if (!sel[static_cast<std::size_t>(k - 1)][f]) {
                    std::ostringstream msg;
                    msg << "quotient_to_point: selection not closed; cell " << k << ":" << cell.id << " ("
                        << to_string(cell.label) << ") has unselected face " << (k - 1) << ":" << f;
                    throw ValidationError(msg.str());
                }
        }

    std::vector<std::vector<std::uint32_t>> remap(grades);
    std::vector<std::vector<Cell>> cells(grades);
    for (std::size_t k = 0; k < grades; ++k) {
        remap[k].assign(c.count(static_cast<int>(k)), UINT32_MAX);
        for (const auto& cell : c.cells(static_cast<int>(k))) {
            if (sel[k][cell.id]) continue;
            Cell nc = cell;
            nc.id = static_cast<std::uint32_t>(cells[k].size());
            remap[k][cell.id] = nc.id;
            cells[k].push_back(nc);
        }
    }
    Cell point;
    point.id = static_cast<std::uint32_t>(cells[0].size());
    point.x2.fill(-1);
    cells[0].push_back(point);

    std::vector<Incidence> bnd(grades);
    std::vector<std::uint32_t> ids;
    for (std::size_t k = 1; k < grades; ++k) {
        for (const auto& cell : c.cells(static_cast<int>(k))) {
            if (sel[k][cell.id]) continue;
            ids.clear();
            for (auto f : c.boundary_of(static_cast<int>(k), cell.id)) {
                if (remap[k - 1][f] != UINT32_MAX)
                    ids.push_back(remap[k - 1][f]);
                else if (k == 1)
                    ids.push_back(point.id);
            }
            reduce_mod2(ids);
            bnd[k].push_row(ids);
        }
    }
    const Background bg = (c.background() == Background::OpenCube && all_outer) ? Background::Sphere : c.background();
    return CellComplex(n, bg, c.side(), c.cellulation(), c.primal_axes(), std::move(cells), std::move(bnd));
}

bool boundary_squared_zero(const CellComplex& c) {
    std::vector<std::uint32_t> acc;
    for (int k = 2; k <= c.dim(); ++k) {
        for (std::uint32_t j = 0; j < c.count(k); ++j) {
            acc.clear();
            for (auto f : c.boundary_of(k, j))
                for (auto g : c.boundary_of(k - 1, f)) acc.push_back(g);
            reduce_mod2(acc);
            if (!acc.empty()) return false;
        }
    }
    return true;
}

void write_complex(std::ostream& os, const CellComplex& c) {
    const int n = c.dim();
    os << "cellcomplex v1\n";
    os << "dim " << n << " background " << to_string(c.background()) << " side " << c.side() << " cellulation "
       << to_string(c.cellulation()) << " primal " << static_cast<int>(c.primal_axes()) << '\n';
    for (int k = 0; k <= n; ++k) {
        os << "grade " << k << " count " << c.count(k) << '\n';
        for (const auto& cell : c.cells(k)) {
            os << "cell " << k << ' ' << cell.id << ' ' << to_string(cell.label);
            for (int a = 0; a < n; ++a) os << ' ' << cell.x2[a];
            os << ' ' << static_cast<int>(cell.extent) << " :";
            if (k > 0)
                for (auto f : c.boundary_of(k, cell.id)) os << ' ' << f;
            os << '\n';
        }
    }
}

CellComplex read_complex(std::istream& is) {
    std::string line, tok;
    if (!std::getline(is, line) || line != "cellcomplex v1") throw ValidationError("expected 'cellcomplex v1' header");
    if (!std::getline(is, line)) throw ValidationError("cellcomplex: missing dim line");
    std::istringstream hdr(line);
    int n = 0, side = 0, primal = 0;
    std::string bg, cl = "primal";
    hdr >> tok >> n >> tok >> bg;
    if (!hdr || n < 2 || n > kMaxDim) throw ValidationError("cellcomplex: bad dim line");
    while (hdr >> tok) {
        if (tok == "side")
            hdr >> side;
        else if (tok == "cellulation")
            hdr >> cl;
        else if (tok == "primal")
            hdr >> primal;
    }
    const auto grades = static_cast<std::size_t>(n + 1);
    std::vector<std::vector<Cell>> cells(grades);
    std::vector<Incidence> bnd(grades);
    std::vector<std::uint32_t> ids;
    for (int k = 0; k <= n; ++k) {
        if (!std::getline(is, line)) throw ValidationError("cellcomplex: missing grade line");
        std::istringstream g(line);
        int kk = -1;
        std::size_t count = 0;
        g >> tok >> kk >> tok >> count;
        if (!g || kk != k) throw ValidationError("cellcomplex: bad grade line");
        for (std::size_t i = 0; i < count; ++i) {
            if (!std::getline(is, line)) throw ValidationError("cellcomplex: truncated cell list");
            std::istringstream cs(line);
            Cell c;
            int ck = -1, ext = 0;
            std::string label;
            cs >> tok >> ck >> c.id >> label;
            if (!cs || tok != "cell" || ck != k || c.id != i) throw ValidationError("cellcomplex: bad cell line");
            c.label = parse_label(label);
            for (int a = 0; a < n; ++a) cs >> c.x2[a];
            cs >> ext >> tok;
            if (!cs || tok != ":") throw ValidationError("cellcomplex: bad cell coordinates");
            c.extent = static_cast<std::uint8_t>(ext);
            ids.clear();
            std::uint32_t f = 0;
            while (cs >> f) ids.push_back(f);
            cells[static_cast<std::size_t>(k)].push_back(c);
            if (k > 0) bnd[static_cast<std::size_t>(k)].push_row(ids);
            else if (!ids.empty()) throw ValidationError("cellcomplex: vertices have no boundary");
        }
    }
    return CellComplex(n, parse_background(bg), side, parse_cellulation(cl), static_cast<std::uint8_t>(primal),
                       std::move(cells), std::move(bnd));
}

}  // namespace fcss
