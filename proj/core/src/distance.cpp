#include "fcss/distance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <numeric>

#include "fcss/error.hpp"

namespace fcss {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0U); }
    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::uint32_t> parent_;
};

// Vertices of a grading-1 code with every E component shrunk to one terminal.
struct EdgeGraph {
    std::size_t nodes = 0;
    std::size_t terminals = 0;  // nodes [0, terminals) are terminals
    std::vector<bool> terminal_outer;
    std::vector<std::array<std::uint32_t, 2>> ends;  // per qubit; kNone for loops
    std::vector<std::uint32_t> offsets, adj_node, adj_qubit;

    void build_adjacency() {
        std::vector<std::uint32_t> deg(nodes, 0);
        for (const auto& e : ends)
            if (e[0] != kNone) {
                ++deg[e[0]];
                ++deg[e[1]];
            }
        offsets.assign(nodes + 1, 0);
        for (std::size_t v = 0; v < nodes; ++v) offsets[v + 1] = offsets[v] + deg[v];
        adj_node.assign(offsets.back(), 0);
        adj_qubit.assign(offsets.back(), 0);
        std::vector<std::uint32_t> pos(offsets.begin(), offsets.end() - 1);
        for (std::uint32_t q = 0; q < ends.size(); ++q) {
            const auto& e = ends[q];
            if (e[0] == kNone) continue;
            adj_node[pos[e[0]]] = e[1];
            adj_qubit[pos[e[0]]++] = q;
            adj_node[pos[e[1]]] = e[0];
            adj_qubit[pos[e[1]]++] = q;
        }
    }
};

const CellComplex& grading1_source(const CssCode& code, const char* who) {
    if (!code.source()) throw ValidationError(std::string(who) + ": code has no source complex");
    if (code.grading() != 1) throw ValidationError(std::string(who) + ": requires grading i = 1");
    return *code.source();
}

EdgeGraph edge_graph(const CssCode& code, const CellComplex& c) {
    UnionFind uf(c.count(0));
    for (const auto& e : c.cells(1)) {
        if (!e.label.is_e()) continue;
        auto b = c.boundary_of(1, e.id);
        for (std::size_t j = 1; j < b.size(); ++j) uf.unite(b[0], b[j]);
    }
    EdgeGraph g;
    std::vector<std::uint32_t> node(c.count(0), kNone), root_terminal(c.count(0), kNone);
    for (const auto& v : c.cells(0)) {
        if (!v.label.is_e()) continue;
        const auto r = uf.find(v.id);
        if (root_terminal[r] == kNone) {
            root_terminal[r] = static_cast<std::uint32_t>(g.terminals++);
            g.terminal_outer.push_back(false);
        }
        node[v.id] = root_terminal[r];
        if (v.label.kind == LabelKind::OuterE) g.terminal_outer[node[v.id]] = true;
    }
    g.nodes = g.terminals;
    for (const auto& v : c.cells(0))
        if (!v.label.is_e()) node[v.id] = static_cast<std::uint32_t>(g.nodes++);
    // terminals absorb every E cell, so a hole component with no E vertex cannot occur
    g.ends.assign(code.n_qubits(), {kNone, kNone});
    const auto qc = code.qubit_cell();
    for (std::size_t q = 0; q < qc.size(); ++q) {
        auto b = c.boundary_of(1, qc[q]);
        if (b.size() != 2) continue;
        const auto u = node[b[0]], v = node[b[1]];
        if (u == v) continue;
        g.ends[q] = {u, v};
    }
    g.build_adjacency();
    return g;
}

PauliOperator z_from_qubits(std::size_t n, const std::vector<std::uint32_t>& qubits) {
    Gf2Vector v(n);
    for (auto q : qubits) v.flip(q);
    return PauliOperator::z_type(std::move(v));
}

struct PathHit {
    std::size_t length = std::numeric_limits<std::size_t>::max();
    std::vector<std::uint32_t> qubits;
};

// Multi-source BFS from all terminals; closest pair of distinct terminals.
PathHit terminal_pairs(const EdgeGraph& g) {
    PathHit best;
    if (g.terminals < 2) return best;
    std::vector<std::uint32_t> dist(g.nodes, kNone), src(g.nodes, kNone), via(g.nodes, kNone), from(g.nodes, kNone);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t t = 0; t < g.terminals; ++t) {
        dist[t] = 0;
        src[t] = t;
        queue.push_back(t);
    }
    while (!queue.empty()) {
        const auto u = queue.front();
        queue.pop_front();
        for (auto j = g.offsets[u]; j < g.offsets[u + 1]; ++j) {
            const auto v = g.adj_node[j];
            if (dist[v] != kNone) continue;
            dist[v] = dist[u] + 1;
            src[v] = src[u];
            via[v] = g.adj_qubit[j];
            from[v] = u;
            queue.push_back(v);
        }
    }
    std::uint32_t best_q = kNone;
    for (std::uint32_t q = 0; q < g.ends.size(); ++q) {
        const auto& e = g.ends[q];
        if (e[0] == kNone || dist[e[0]] == kNone || dist[e[1]] == kNone || src[e[0]] == src[e[1]]) continue;
        const std::size_t len = std::size_t{dist[e[0]]} + dist[e[1]] + 1;
        if (len < best.length) {
            best.length = len;
            best_q = q;
        }
    }
    if (best_q == kNone) return best;
    best.qubits.push_back(best_q);
    for (auto v : g.ends[best_q])
        for (; from[v] != kNone; v = from[v]) best.qubits.push_back(via[v]);
    return best;
}

// Shortest odd-winding loop along `axis` on a torus, through the doubled cover
// cut at the seam layer.
PathHit torus_winding(const EdgeGraph& g, const CssCode& code, const CellComplex& c, int axis) {
    const int seam = 2 * c.side() - 1;
    std::vector<char> crosses(code.n_qubits(), 0);
    const auto qc = code.qubit_cell();
    for (std::size_t q = 0; q < qc.size(); ++q) {
        const Cell& e = c.cell(1, qc[q]);
        crosses[q] = ((e.extent >> axis) & 1U) && e.x2[static_cast<std::size_t>(axis)] == seam;
    }
    std::vector<std::uint32_t> sources;
    for (std::uint32_t t = 0; t < g.terminals; ++t) sources.push_back(t);
    std::vector<char> seam_node(g.nodes, 0);
    for (std::size_t q = 0; q < qc.size(); ++q)
        if (crosses[q] && g.ends[q][0] != kNone) seam_node[g.ends[q][0]] = seam_node[g.ends[q][1]] = 1;
    for (std::uint32_t v = static_cast<std::uint32_t>(g.terminals); v < g.nodes; ++v)
        if (seam_node[v]) sources.push_back(v);

    PathHit best;
    const std::size_t N = g.nodes;
    std::vector<std::uint32_t> dist(2 * N), via(2 * N), from(2 * N);
    std::deque<std::uint32_t> queue;
    for (auto s : sources) {
        std::fill(dist.begin(), dist.end(), kNone);
        dist[s] = 0;
        from[s] = kNone;
        queue.assign(1, s);
        const std::uint32_t target = static_cast<std::uint32_t>(s + N);
        while (!queue.empty() && dist[target] == kNone) {
            const auto x = queue.front();
            queue.pop_front();
            if (dist[x] + 1 >= best.length) break;
            const auto u = static_cast<std::uint32_t>(x % N);
            const auto sheet = static_cast<std::uint32_t>(x / N);
            for (auto j = g.offsets[u]; j < g.offsets[u + 1]; ++j) {
                const auto q = g.adj_qubit[j];
                const auto y = static_cast<std::uint32_t>(g.adj_node[j] + N * (sheet ^ static_cast<std::uint32_t>(crosses[q])));
                if (dist[y] != kNone) continue;
                dist[y] = dist[x] + 1;
                via[y] = q;
                from[y] = x;
                queue.push_back(y);
            }
        }
        if (dist[target] == kNone || dist[target] >= best.length) continue;
        best.length = dist[target];
        best.qubits.clear();
        for (auto y = target; from[y] != kNone; y = from[y]) best.qubits.push_back(via[y]);
    }
    return best;
}

bool zero_syndrome(const SparseRows& checks, const Gf2Vector& v) {
    for (std::size_t r = 0; r < checks.rows(); ++r) {
        bool p = false;
        for (auto q : checks.row(r)) p ^= v.get(q);
        if (p) return false;
    }
    return true;
}

}  // namespace

DistanceResult dz_shortest_path(const CssCode& code) {
    const CellComplex& c = grading1_source(code, "dz_shortest_path");
    const EdgeGraph g = edge_graph(code, c);
    const bool torus = c.background() == Background::Torus;
    if (g.terminals < 2 && !torus) throw ValidationError("dz_shortest_path: needs two E components or a torus");

    const std::size_t expected = (g.terminals > 0 ? g.terminals - 1 : 0) + (torus ? std::size_t(c.dim()) : 0);
    const std::size_t k = logical_count(code);
    if (k != expected)
        throw ValidationError("dz_shortest_path: k = " + std::to_string(k) + " but terminal paths and windings span " +
                              std::to_string(expected) + " logicals; use exhaustive search");

    PathHit best = terminal_pairs(g);
    if (torus)
        for (int a = 0; a < c.dim(); ++a) {
            PathHit h = torus_winding(g, code, c, a);
            if (h.length < best.length) best = std::move(h);
        }
    if (best.qubits.empty()) throw ValidationError("dz_shortest_path: no nontrivial path exists");
    DistanceResult r;
    r.witness = z_from_qubits(code.n_qubits(), best.qubits);
    r.value = r.witness.weight();
    r.kind = DistanceKind::Exact;
    return r;
}

DistanceResult dx_min_cut(const CssCode& code) {
    const CellComplex& c = grading1_source(code, "dx_min_cut");
    if (c.background() != Background::OpenCube) throw ValidationError("dx_min_cut: open-cube background required");
    bool m_holes = false;
    for (int k = 0; k <= c.dim(); ++k)
        for (const auto& cell : c.cells(k)) {
            if (cell.label.kind == LabelKind::HoleE)
                throw ValidationError("dx_min_cut: e-holes present; use exhaustive search");
            m_holes = m_holes || cell.label.kind == LabelKind::HoleM;
        }
    if (c.dim() == 2 && m_holes)
        throw ValidationError("dx_min_cut: 2D m-holes carry X logicals the cut does not see; use exhaustive search");
    const EdgeGraph g = edge_graph(code, c);
    if (g.terminals != 2) throw ValidationError("dx_min_cut: needs exactly two outer E components");

    // flow[q] in {-1,0,1} along ends[q][0] -> ends[q][1]
    std::vector<int> flow(code.n_qubits(), 0);
    const std::uint32_t s = 0, t = 1;
    std::vector<std::uint32_t> via(g.nodes), from(g.nodes);
    std::vector<char> seen(g.nodes);
    std::deque<std::uint32_t> queue;
    std::size_t total = 0;
    auto residual = [&](std::uint32_t q, std::uint32_t u) {
        const int dir = g.ends[q][0] == u ? 1 : -1;
        return 1 - dir * flow[q] > 0;
    };
    while (true) {
        std::fill(seen.begin(), seen.end(), 0);
        seen[s] = 1;
        queue.assign(1, s);
        while (!queue.empty() && !seen[t]) {
            const auto u = queue.front();
            queue.pop_front();
            for (auto j = g.offsets[u]; j < g.offsets[u + 1]; ++j) {
                const auto v = g.adj_node[j];
                const auto q = g.adj_qubit[j];
                if (seen[v] || !residual(q, u)) continue;
                seen[v] = 1;
                via[v] = q;
                from[v] = u;
                queue.push_back(v);
            }
        }
        if (!seen[t]) break;
        for (auto v = t; v != s; v = from[v]) {
            const auto q = via[v];
            flow[q] += g.ends[q][0] == from[v] ? 1 : -1;
        }
        ++total;
    }
    Gf2Vector cut(code.n_qubits());
    for (std::uint32_t q = 0; q < g.ends.size(); ++q) {
        const auto& e = g.ends[q];
        if (e[0] != kNone && seen[e[0]] != seen[e[1]]) cut.set(q);
    }
    if (cut.weight() != total) throw InternalError("dx_min_cut: cut size differs from flow value");
    if (!zero_syndrome(code.hz_rows(), cut)) throw InternalError("dx_min_cut: cut is not a cocycle");
    DistanceResult r;
    r.value = total;
    r.kind = DistanceKind::Exact;
    r.witness = PauliOperator::x_type(std::move(cut));
    return r;
}

std::size_t default_search_budget() {
    if (const char* env = std::getenv("FRACTALCSS_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0) throw ValidationError("FRACTALCSS_BUDGET must be a positive integer");
        return static_cast<std::size_t>(v);
    }
    return 200'000'000;
}

namespace {

class LowWeightSearch {
public:
    LowWeightSearch(const CssCode& code, PauliType type, std::size_t budget)
        : n_(code.n_qubits()),
          checks_(type == PauliType::Z ? code.hx_rows() : code.hz_rows()),
          stabs_(code.n_qubits()),
          budget_(budget) {
        stabs_.add_rows(type == PauliType::Z ? code.hz() : code.hx());
        check_cols_ = checks_.columns();
        const SparseRows& link = checks_;
        std::vector<std::vector<std::uint32_t>> nb(n_);
        for (std::size_t r = 0; r < link.rows(); ++r) {
            auto row = link.row(r);
            for (auto a : row)
                for (auto b : row)
                    if (a != b) nb[a].push_back(b);
        }
        for (auto& l : nb) {
            std::sort(l.begin(), l.end());
            l.erase(std::unique(l.begin(), l.end()), l.end());
            nbr_.push_row(l);
        }
        odd_.assign(checks_.rows(), 0);
        in_sub_.assign(n_, 0);
        near_.assign(n_, 0);
    }

    std::optional<Gf2Vector> run(std::size_t w) {
        target_ = w;
        for (std::uint32_t v = 0; v < n_; ++v) {
            std::vector<std::uint32_t> ext;
            for (auto u : nbr_.row(v))
                if (u > v) ext.push_back(u);
            push(v);
            const bool hit = extend(ext, v);
            pop(v);
            if (hit) return found_;
        }
        return std::nullopt;
    }

    std::size_t nodes() const noexcept { return nodes_; }

private:
    void push(std::uint32_t q) {
        sub_.push_back(q);
        in_sub_[q] = 1;
        for (auto u : nbr_.row(q)) ++near_[u];
        for (auto r : check_cols_.row(q)) {
            odd_[r] ^= 1;
            odd_count_ += odd_[r] ? 1 : -1;
        }
    }
    void pop(std::uint32_t q) {
        sub_.pop_back();
        in_sub_[q] = 0;
        for (auto u : nbr_.row(q)) --near_[u];
        for (auto r : check_cols_.row(q)) {
            odd_[r] ^= 1;
            odd_count_ += odd_[r] ? 1 : -1;
        }
    }

    bool extend(std::vector<std::uint32_t> ext, std::uint32_t root) {
        if (++nodes_ > budget_)
            throw BudgetExceeded(budget_, "exhaustive search exceeded its node budget of " + std::to_string(budget_));
        if (sub_.size() == target_) {
            if (odd_count_ != 0) return false;
            Gf2Vector v = Gf2Vector::from_support(n_, sub_);
            if (stabs_.contains(v)) return false;
            found_ = std::move(v);
            return true;
        }
        while (!ext.empty()) {
            const auto w = ext.back();
            ext.pop_back();
            std::vector<std::uint32_t> next = ext;
            for (auto u : nbr_.row(w))
                if (u > root && !in_sub_[u] && near_[u] == 0) next.push_back(u);
            push(w);
            const bool hit = extend(std::move(next), root);
            pop(w);
            if (hit) return true;
        }
        return false;
    }

    std::size_t n_;
    const SparseRows& checks_;
    Incidence check_cols_, nbr_;
    RowSpace stabs_;
    std::size_t budget_, nodes_ = 0, target_ = 0;
    std::vector<std::uint32_t> sub_;
    std::vector<std::uint8_t> odd_, in_sub_;
    std::vector<std::uint32_t> near_;
    long long odd_count_ = 0;
    Gf2Vector found_;
};

}  // namespace

DistanceResult exhaustive_low_weight(const CssCode& code, PauliType type, std::size_t w_max, SearchOptions opts) {
    if (w_max < 1) throw ValidationError("exhaustive_low_weight: w_max must be >= 1");
    LowWeightSearch search(code, type, opts.budget);
    DistanceResult r;
    for (std::size_t w = 1; w <= w_max; ++w) {
        if (auto v = search.run(w)) {
            r.value = w;
            r.kind = DistanceKind::Exact;
            r.witness = type == PauliType::Z ? PauliOperator::z_type(std::move(*v)) : PauliOperator::x_type(std::move(*v));
            return r;
        }
    }
    r.value = w_max;
    r.kind = DistanceKind::CertifiedAbove;
    r.witness = PauliOperator::z_type(Gf2Vector(code.n_qubits()));
    return r;
}

bool is_logical(const CssCode& code, const PauliOperator& op) {
    if (op.size() != code.n_qubits()) throw ValidationError("is_logical: operator size mismatch");
    if (op.is_z_type() == op.is_x_type()) return false;  // identity or mixed
    const bool z = op.is_z_type();
    const Gf2Vector& v = z ? op.z : op.x;
    if (!zero_syndrome(z ? code.hx_rows() : code.hz_rows(), v)) return false;
    RowSpace span(code.n_qubits());
    span.add_rows(z ? code.hz() : code.hx());
    return !span.contains(v);
}

ScalingFit fit_scaling(std::vector<std::pair<double, double>> points) {
    if (points.size() < 2) throw ValidationError("fit_scaling: need at least two points");
    for (const auto& [L, d] : points)
        if (!(L > 0) || !(d > 0)) throw ValidationError("fit_scaling: points must be positive");
    const double m = static_cast<double>(points.size());
    double sx = 0, sy = 0;
    for (const auto& [L, d] : points) {
        sx += std::log(L);
        sy += std::log(d);
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (const auto& [L, d] : points) {
        sxx += (std::log(L) - mx) * (std::log(L) - mx);
        sxy += (std::log(L) - mx) * (std::log(d) - my);
    }
    ScalingFit f;
    f.exponent = sxx > 0 ? sxy / sxx : 0.0;
    f.intercept = my - f.exponent * mx;
    double ss = 0;
    for (const auto& [L, d] : points) {
        const double e = std::log(d) - (f.intercept + f.exponent * std::log(L));
        ss += e * e;
    }
    f.residual = std::sqrt(ss / m);
    f.points = std::move(points);
    return f;
}

namespace {

// ln(p^m - q^m) with q = p - gap.
long double log_power_gap(int m, long double p, long double gap) {
    const long double r = 1.0L - gap / p;
    long double sum = 0, term = 1;
    for (int j = 0; j < m; ++j) {
        sum += term;
        term *= r;
    }
    return std::log(gap) + (m - 1) * std::log(p) + std::log(sum);
}

void check_family(int n, long double p, long double gap) {
    if (n < 2) throw ValidationError("dimension must be >= 2");
    if (!(p > 1) || !(gap > 0) || !(gap < p)) throw ValidationError("need 0 < q < p");
}

}  // namespace

double hausdorff_dimension(int n, long double p, long double gap) {
    check_family(n, p, gap);
    return static_cast<double>(log_power_gap(n, p, gap) / std::log(p));
}

double dx_exponent(int n, long double p, long double gap) {
    check_family(n, p, gap);
    return static_cast<double>(log_power_gap(n - 1, p, gap) / std::log(p));
}

std::vector<Table1Entry> table1_entries() {
    std::vector<Table1Entry> out;
    out.push_back({"3D surface code", 3.0, 2.0, 0, 0});
    const std::pair<int, int> small[] = {{3, 1}, {4, 2}, {5, 3}, {6, 4}, {7, 3}, {7, 5}, {10, 8}, {15, 13}, {30, 28}, {100, 98}, {500, 498}, {5000, 4998}};
    for (auto [p, q] : small) {
        Table1Entry e;
        e.name = "FC(" + std::to_string(p) + "," + std::to_string(q) + ")";
        e.d_h = hausdorff_dimension(3, p, p - q);
        e.dx_exp = dx_exponent(3, p, p - q);
        if (p <= 6) {
            e.p = p;
            e.q = q;
        }
        out.push_back(e);
    }
    for (int ex : {5, 10, 20, 80}) {
        const long double p = std::pow(10.0L, ex);
        const std::string s = "10^" + std::to_string(ex);
        out.push_back({"FC(" + s + "," + s + "-2)", hausdorff_dimension(3, p, 2), dx_exponent(3, p, 2), 0, 0});
    }
    out.push_back({"2D surface code", 2.0, 1.0, 0, 0});
    return out;
}

}  // namespace fcss
