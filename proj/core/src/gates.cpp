#include "fcss/gates.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "fcss/error.hpp"

namespace fcss {

StackAlignment StackAlignment::identity(std::size_t sites, std::size_t copies) {
    StackAlignment a;
    a.sites = sites;
    a.qubit_of_site.assign(copies, std::vector<std::uint32_t>(sites));
    for (auto& m : a.qubit_of_site)
        for (std::size_t s = 0; s < sites; ++s) m[s] = static_cast<std::uint32_t>(s);
    return a;
}

void StackAlignment::validate(std::span<const CssCode* const> codes) const {
    if (qubit_of_site.size() != codes.size())
        throw ValidationError("alignment lists " + std::to_string(qubit_of_site.size()) + " codes, got " +
                              std::to_string(codes.size()));
    for (std::size_t j = 0; j < codes.size(); ++j) {
        if (codes[j]->n_qubits() != sites || qubit_of_site[j].size() != sites)
            throw ValidationError("alignment size mismatch for code " + std::to_string(j));
        std::vector<char> hit(sites, 0);
        for (auto q : qubit_of_site[j]) {
            if (q >= sites || hit[q]) throw ValidationError("alignment is not a bijection for code " + std::to_string(j));
            hit[q] = 1;
        }
    }
}

StackAlignment align_by_coordinates(std::span<const CssCode* const> codes) {
    if (codes.empty()) throw ValidationError("align_by_coordinates: no codes");
    const CssCode& first = *codes[0];
    if (!first.source()) throw ValidationError("align_by_coordinates: codes need source complexes");
    StackAlignment al;
    al.sites = first.n_qubits();
    for (const CssCode* c : codes) {
        if (!c->source()) throw ValidationError("align_by_coordinates: codes need source complexes");
        if (c->n_qubits() != al.sites) throw ValidationError("align_by_coordinates: qubit counts differ");
        std::vector<std::uint32_t> map(al.sites);
        for (std::size_t s = 0; s < al.sites; ++s) {
            const Coord& x = first.source()->cell(first.grading(), first.qubit_cell()[s]).x2;
            auto id = c->source()->find(c->grading(), x);
            auto q = id ? c->qubit_of_cell(*id) : std::nullopt;
            if (!q) throw ValidationError("align_by_coordinates: site " + std::to_string(s) + " has no partner");
            map[s] = *q;
        }
        al.qubit_of_site.push_back(std::move(map));
    }
    al.validate(codes);
    return al;
}

bool GateCheckReport::passed() const {
    return std::none_of(conditions.begin(), conditions.end(),
                        [](const ConditionResult& c) { return c.status == CondStatus::Fail; });
}

std::size_t GateCheckReport::failure_count() const {
    std::size_t n = 0;
    for (const auto& c : conditions) n += c.failures.size();
    return n;
}

void write_report(std::ostream& os, const GateCheckReport& r) {
    auto wit = [&](const Witness& w) {
        os << "witness: a=" << w.a << " b=" << w.b;
        if (!w.c.empty()) os << " c=" << w.c;
        os << " parity=" << w.parity;
    };
    for (const auto& c : r.conditions) {
        os << "COND " << c.id << ' ';
        switch (c.status) {
            case CondStatus::Pass: os << "PASS"; break;
            case CondStatus::Fail: os << "FAIL"; break;
            case CondStatus::NotApplicable: os << "N/A"; break;
        }
        if (!c.failures.empty()) {
            os << ' ';
            wit(c.failures.front());
        }
        os << '\n';
        for (std::size_t j = 1; j < c.failures.size(); ++j) {
            os << "  ";
            wit(c.failures[j]);
            os << '\n';
        }
    }
}

namespace {

std::vector<std::uint32_t> site_of_qubit(const StackAlignment& al, std::size_t j) {
    std::vector<std::uint32_t> inv(al.sites);
    for (std::size_t s = 0; s < al.sites; ++s) inv[al.qubit_of_site[j][s]] = static_cast<std::uint32_t>(s);
    return inv;
}

// Stabilizer X supports then logical X supports, both as sorted site lists.
struct SiteOps {
    std::vector<std::vector<std::uint32_t>> sites;
    std::size_t stabs = 0;
    std::size_t logicals = 0;
    Incidence by_site;

    std::string name(std::size_t i) const {
        return i < stabs ? "X" + std::to_string(i) : "L" + std::to_string(i - stabs);
    }
    bool logical(std::size_t i) const { return i >= stabs; }
};

SiteOps site_ops(const CssCode& code, const std::vector<std::uint32_t>& site_of, std::size_t nsites) {
    SiteOps ops;
    auto add = [&](auto&& qubits) {
        std::vector<std::uint32_t> s;
        for (auto q : qubits) s.push_back(site_of[q]);
        std::sort(s.begin(), s.end());
        ops.sites.push_back(std::move(s));
    };
    for (std::size_t r = 0; r < code.hx_rows().rows(); ++r) add(code.hx_rows().row(r));
    ops.stabs = ops.sites.size();
    for (const auto& x : logical_basis(code).x) add(x.x.support());
    ops.logicals = ops.sites.size() - ops.stabs;
    std::vector<std::vector<std::uint32_t>> per(nsites);
    for (std::uint32_t i = 0; i < ops.sites.size(); ++i)
        for (auto s : ops.sites[i]) per[s].push_back(i);
    for (auto& p : per) ops.by_site.push_row(p);
    return ops;
}

std::size_t overlap(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::size_t n = 0;
    for (auto i = a.begin(), j = b.begin(); i != a.end() && j != b.end();) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

std::size_t triple_overlap(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                           const std::vector<std::uint32_t>& c) {
    std::vector<std::uint32_t> ab;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(ab));
    return overlap(ab, c);
}

ConditionResult logical_condition(std::string id, std::size_t ka, std::size_t kb, std::size_t kc, bool triple,
                                  const std::function<std::size_t(std::size_t, std::size_t, std::size_t)>& ov,
                                  const std::array<const SiteOps*, 3>& ops) {
    ConditionResult r;
    r.id = std::move(id);
    if (ka == 0 || kb == 0 || (triple && kc == 0)) {
        r.status = CondStatus::NotApplicable;
        return r;
    }
    const std::size_t k = std::min({ka, kb, triple ? kc : kb});
    for (std::size_t j = 0; j < k; ++j) {
        ++r.checked;
        const int parity = static_cast<int>(ov(j, j, j) & 1U);
        if (parity != 1) {
            Witness w{ops[0]->name(ops[0]->stabs + j), ops[1]->name(ops[1]->stabs + j),
                      triple ? ops[2]->name(ops[2]->stabs + j) : "", parity};
            r.failures.push_back(w);
        }
    }
    r.status = r.failures.empty() ? CondStatus::Pass : CondStatus::Fail;
    return r;
}

}  // namespace

GateCheckReport check_transversal_cz(const CssCode& a, const CssCode& b, const StackAlignment& align) {
    const std::array<const CssCode*, 2> codes{&a, &b};
    align.validate(codes);
    const SiteOps oa = site_ops(a, site_of_qubit(align, 0), align.sites);
    const SiteOps ob = site_ops(b, site_of_qubit(align, 1), align.sites);

    std::unordered_map<std::uint64_t, std::uint32_t> count;
    for (std::size_t s = 0; s < align.sites; ++s)
        for (auto i : oa.by_site.row(s))
            for (auto j : ob.by_site.row(s)) ++count[std::uint64_t{i} * ob.sites.size() + j];
    std::vector<std::pair<std::uint64_t, std::uint32_t>> sorted(count.begin(), count.end());
    std::sort(sorted.begin(), sorted.end());

    ConditionResult c1{"CZ1", CondStatus::Pass, 0, {}}, c2{"CZ2", CondStatus::Pass, 0, {}};
    for (const auto& [key, n] : sorted) {
        const std::size_t i = key / ob.sites.size(), j = key % ob.sites.size();
        const int nl = oa.logical(i) + ob.logical(j);
        if (nl == 2) continue;
        ConditionResult& c = nl == 0 ? c1 : c2;
        ++c.checked;
        if (n & 1U) c.failures.push_back({oa.name(i), ob.name(j), "", 1});
    }
    for (auto* c : {&c1, &c2}) c->status = c->failures.empty() ? CondStatus::Pass : CondStatus::Fail;
    auto ov = [&](std::size_t i, std::size_t j, std::size_t) {
        return overlap(oa.sites[oa.stabs + i], ob.sites[ob.stabs + j]);
    };
    GateCheckReport rep;
    rep.conditions.push_back(std::move(c1));
    rep.conditions.push_back(std::move(c2));
    rep.conditions.push_back(logical_condition("CZ3", oa.logicals, ob.logicals, 0, false, ov, {&oa, &ob, nullptr}));
    return rep;
}

std::string CczStack::Ops::name(std::size_t i) const {
    return i < stabs ? "X" + std::to_string(i) : "L" + std::to_string(i - stabs);
}

namespace {

CczStack::Ops to_ops(SiteOps s) {
    CczStack::Ops o;
    o.sites = std::move(s.sites);
    o.stabs = s.stabs;
    o.by_site = std::move(s.by_site);
    return o;
}

}  // namespace

CczStack::CczStack(const CssCode& a, const CssCode& b, const CssCode& c, StackAlignment align)
    : codes_{&a, &b, &c}, align_(std::move(align)), block_(a.n_qubits()) {
    align_.validate(codes_);
    for (std::size_t j = 0; j < 3; ++j) {
        site_of_qubit_[j] = site_of_qubit(align_, j);
        ops_[j] = to_ops(site_ops(*codes_[j], site_of_qubit_[j], align_.sites));
    }
}

GateCheckReport CczStack::check() const {
    const std::uint64_t nb = ops_[1].sites.size(), nc = ops_[2].sites.size();
    std::unordered_map<std::uint64_t, std::uint32_t> count;
    for (std::size_t s = 0; s < align_.sites; ++s)
        for (auto i : ops_[0].by_site.row(s))
            for (auto j : ops_[1].by_site.row(s))
                for (auto k : ops_[2].by_site.row(s)) ++count[(i * nb + j) * nc + k];
    std::vector<std::pair<std::uint64_t, std::uint32_t>> sorted(count.begin(), count.end());
    std::sort(sorted.begin(), sorted.end());

    std::array<ConditionResult, 3> cond{ConditionResult{"CCZ1", CondStatus::Pass, 0, {}},
                                        ConditionResult{"CCZ2", CondStatus::Pass, 0, {}},
                                        ConditionResult{"CCZ3", CondStatus::Pass, 0, {}}};
    for (const auto& [key, n] : sorted) {
        const std::size_t k = key % nc, j = (key / nc) % nb, i = key / nc / nb;
        const std::size_t nl = (i >= ops_[0].stabs) + (j >= ops_[1].stabs) + (k >= ops_[2].stabs);
        if (nl == 3) continue;
        ConditionResult& c = cond[nl];
        ++c.checked;
        if (n & 1U) c.failures.push_back({ops_[0].name(i), ops_[1].name(j), ops_[2].name(k), 1});
    }
    GateCheckReport rep;
    for (auto& c : cond) {
        c.status = c.failures.empty() ? CondStatus::Pass : CondStatus::Fail;
        rep.conditions.push_back(std::move(c));
    }
    ConditionResult t4;
    t4.id = "CCZ4";
    const std::size_t ka = ops_[0].sites.size() - ops_[0].stabs, kb = nb - ops_[1].stabs, kc = nc - ops_[2].stabs;
    if (ka == 0 || kb == 0 || kc == 0) {
        t4.status = CondStatus::NotApplicable;
    } else {
        for (std::size_t j = 0; j < std::min({ka, kb, kc}); ++j) {
            ++t4.checked;
            const int parity = static_cast<int>(triple_overlap(ops_[0].sites[ops_[0].stabs + j],
                                                               ops_[1].sites[ops_[1].stabs + j],
                                                               ops_[2].sites[ops_[2].stabs + j]) &
                                                1U);
            if (parity != 1)
                t4.failures.push_back({ops_[0].name(ops_[0].stabs + j), ops_[1].name(ops_[1].stabs + j),
                                       ops_[2].name(ops_[2].stabs + j), parity});
        }
        t4.status = t4.failures.empty() ? CondStatus::Pass : CondStatus::Fail;
    }
    rep.conditions.push_back(std::move(t4));
    return rep;
}

PhasePolyOperator CczStack::conjugate(const PauliOperator& s, int copy) const {
    if (copy < 0 || copy > 2) throw ValidationError("conjugate_by_ccz: copy must be 0, 1 or 2");
    if (s.size() != block_) throw ValidationError("conjugate_by_ccz: operator size does not match the code");
    if (!s.is_x_type() && !s.is_z_type()) throw ValidationError("conjugate_by_ccz: mixed X/Z operator");
    const auto cp = static_cast<std::size_t>(copy);
    PhasePolyOperator p;
    p.block = block_;
    p.x_support = Gf2Vector(3 * block_);
    p.linear_z = Gf2Vector(3 * block_);
    const auto base = static_cast<std::uint32_t>(cp * block_);
    if (s.is_z_type()) {
        for (auto q : s.z.support()) p.linear_z.set(base + q);
        return p;
    }
    std::array<std::size_t, 2> other{};
    for (std::size_t j = 0, t = 0; j < 3; ++j)
        if (j != cp) other[t++] = j;
    std::vector<std::uint32_t> sites;
    for (auto q : s.x.support()) {
        p.x_support.set(base + q);
        sites.push_back(site_of_qubit_[cp][q]);
    }
    std::sort(sites.begin(), sites.end());
    for (auto site : sites) {
        const auto u = static_cast<std::uint32_t>(other[0] * block_ + align_.qubit_of_site[other[0]][site]);
        const auto v = static_cast<std::uint32_t>(other[1] * block_ + align_.qubit_of_site[other[1]][site]);
        p.quadratic_cz.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(p.quadratic_cz.begin(), p.quadratic_cz.end());

    // CZ on the support is a logical identity iff every pair of X operators of
    // the other two copies meets it evenly.
    const Ops& ob = ops_[other[0]];
    const Ops& oc = ops_[other[1]];
    std::unordered_map<std::uint64_t, std::uint32_t> count;
    for (auto site : sites)
        for (auto i : ob.by_site.row(site))
            for (auto j : oc.by_site.row(site)) ++count[std::uint64_t{i} * oc.sites.size() + j];
    std::uint64_t first_odd = UINT64_MAX;
    for (const auto& [key, n] : count)
        if ((n & 1U) && key < first_odd) first_odd = key;
    if (first_odd != UINT64_MAX) {
        p.logical_identity = false;
        p.identity_witness = Witness{"*", ob.name(first_odd / oc.sites.size()), oc.name(first_odd % oc.sites.size()), 1};
    }
    return p;
}

std::vector<PhasePolyOperator> CczStack::conjugated_stabilizers() const {
    std::vector<PhasePolyOperator> out;
    for (int j = 0; j < 3; ++j) {
        const CssCode& c = *codes_[static_cast<std::size_t>(j)];
        for (std::size_t r = 0; r < c.hx_rows().rows(); ++r)
            out.push_back(conjugate(PauliOperator::x_type(c.hx_rows().row_vector(r)), j));
        for (std::size_t r = 0; r < c.hz_rows().rows(); ++r)
            out.push_back(conjugate(PauliOperator::z_type(c.hz_rows().row_vector(r)), j));
    }
    return out;
}

GateCheckReport check_transversal_ccz(const CssCode& a, const CssCode& b, const CssCode& c,
                                      const StackAlignment& align) {
    return CczStack(a, b, c, align).check();
}

PhasePolyOperator conjugate_by_ccz(const PauliOperator& s, int copy, const CczStack& stack) {
    return stack.conjugate(s, copy);
}

bool commutes(const PhasePolyOperator& p, const PhasePolyOperator& q) {
    if (p.x_support.size() != q.x_support.size()) throw ValidationError("commutes: operator sizes differ");
    // (-1)^(f_p(z + x_q) + f_p(z) + f_q(z + x_p) + f_q(z)) must be constant 1 in z.
    bool constant = p.linear_z.dot(q.x_support) ^ q.linear_z.dot(p.x_support);
    std::vector<std::uint32_t> linear;
    auto spread = [&](const PhasePolyOperator& f, const Gf2Vector& shift) {
        for (const auto& [i, j] : f.quadratic_cz) {
            const bool si = shift.get(i), sj = shift.get(j);
            if (sj) linear.push_back(i);
            if (si) linear.push_back(j);
            constant ^= si && sj;
        }
    };
    spread(p, q.x_support);
    spread(q, p.x_support);
    if (constant) return false;
    std::sort(linear.begin(), linear.end());
    for (std::size_t i = 0; i < linear.size();) {
        std::size_t j = i;
        while (j < linear.size() && linear[j] == linear[i]) ++j;
        if ((j - i) & 1U) return false;
        i = j;
    }
    return true;
}

CommutationReport check_pairwise_commutation(std::span<const PhasePolyOperator> ops) {
    CommutationReport rep;
    rep.operators = ops.size();
    if (ops.empty()) return rep;
    const std::size_t width = ops.front().x_support.size();
    std::vector<std::vector<std::uint32_t>> touching(width);
    for (std::uint32_t o = 0; o < ops.size(); ++o) {
        std::vector<std::uint32_t> t = ops[o].x_support.support();
        auto lin = ops[o].linear_z.support();
        t.insert(t.end(), lin.begin(), lin.end());
        for (const auto& [i, j] : ops[o].quadratic_cz) {
            t.push_back(i);
            t.push_back(j);
        }
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        for (auto g : t) touching[g].push_back(o);
    }
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint64_t> pairs;
    for (const auto& list : touching)
        for (std::size_t i = 0; i < list.size(); ++i)
            for (std::size_t j = i + 1; j < list.size(); ++j) {
                const std::uint64_t key = std::uint64_t{list[i]} * ops.size() + list[j];
                if (seen.insert(key).second) pairs.push_back(key);
            }
    std::sort(pairs.begin(), pairs.end());
    for (auto key : pairs) {
        const std::size_t i = key / ops.size(), j = key % ops.size();
        ++rep.pairs_checked;
        if (!commutes(ops[i], ops[j])) {
            ++rep.failures;
            if (!rep.witness) rep.witness = std::make_pair(i, j);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Three-copy stack

namespace {

struct BoxLattice {
    int N;  // lattice side in cells
    std::vector<HoleBox> holes;  // in cells
    std::vector<std::int32_t> edge_id;  // indexed by doubled coords
    std::size_t n_edges = 0;

    int span() const { return 2 * N + 1; }
    bool in_box(const std::array<int, 3>& p) const {
        for (int v : p)
            if (v < 0 || v > 2 * N) return false;
        return true;
    }
    bool in_hole(const std::array<int, 3>& p) const {
        for (const auto& h : holes) {
            bool inside = true;
            for (std::size_t a = 0; a < 3; ++a) inside = inside && 2 * h.lo[a] < p[a] && p[a] < 2 * h.hi[a];
            if (inside) return true;
        }
        return false;
    }
    std::size_t flat(const std::array<int, 3>& p) const {
        return (static_cast<std::size_t>(p[0]) * span() + p[1]) * span() + p[2];
    }
    // -1 outside the box or inside a hole
    std::int32_t id(const std::array<int, 3>& p) const { return in_box(p) ? edge_id[flat(p)] : -1; }
};

std::array<int, 3> shifted(std::array<int, 3> p, int axis, int by) {
    p[static_cast<std::size_t>(axis)] += by;
    return p;
}

struct RowBuilder {
    SparseRows rows;
    std::vector<char> lost;
    std::set<std::vector<std::uint32_t>> unique;

    explicit RowBuilder(std::size_t n) : rows(n) {}
    // Support from candidate edge positions; `lost` records edges cut by a hole.
    void add(const BoxLattice& B, const std::vector<std::array<int, 3>>& cand, bool dedupe = false) {
        std::vector<std::uint32_t> s;
        bool cut = false;
        for (const auto& e : cand) {
            const auto i = B.id(e);
            if (i >= 0)
                s.push_back(static_cast<std::uint32_t>(i));
            else if (B.in_box(e) && B.in_hole(e))
                cut = true;
        }
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.empty()) return;
        if (dedupe && !unique.insert(s).second) return;
        rows.push_row(s);
        lost.push_back(cut);
    }
};

std::vector<std::array<int, 3>> cube_edges(const std::array<int, 3>& c) {
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a < 3; ++a)
        for (int o1 = 0; o1 < 2; ++o1)
            for (int o2 = 0; o2 < 2; ++o2) {
                std::array<int, 3> p{};
                int oi = 0;
                for (int i = 0; i < 3; ++i) {
                    if (i == a)
                        p[static_cast<std::size_t>(i)] = 2 * c[static_cast<std::size_t>(i)] + 1;
                    else
                        p[static_cast<std::size_t>(i)] = 2 * (c[static_cast<std::size_t>(i)] + (oi++ == 0 ? o1 : o2));
                }
                out.push_back(p);
            }
    return out;
}

int parity(const std::array<int, 3>& c) { return ((c[0] + c[1] + c[2]) % 2 + 2) % 2; }

}  // namespace

VasmerBrowneStack build_vasmer_browne_stack(int L, std::span<const HoleBox> holes) {
    if (L < 2) throw ValidationError("vasmer-browne stack needs L >= 2");
    VasmerBrowneStack st;
    BoxLattice B;
    B.N = st.scale * L;
    for (const auto& h : holes) {
        HoleBox s;
        for (std::size_t a = 0; a < 3; ++a) {
            if (h.lo[a] < 0 || h.hi[a] > L || h.lo[a] >= h.hi[a]) throw ValidationError("hole box outside the stack");
            s.lo[a] = h.lo[a] * st.scale;
            s.hi[a] = h.hi[a] * st.scale;
        }
        B.holes.push_back(s);
    }
    const int N = B.N;
    B.edge_id.assign(static_cast<std::size_t>(B.span()) * B.span() * B.span(), -1);
    for (int x = 0; x <= N; ++x)
        for (int y = 0; y <= N; ++y)
            for (int z = 0; z <= N; ++z)
                for (int a = 0; a < 3; ++a) {
                    const std::array<int, 3> v{x, y, z};
                    if (v[static_cast<std::size_t>(a)] >= N) continue;
                    std::array<int, 3> e{2 * x, 2 * y, 2 * z};
                    e[static_cast<std::size_t>(a)] += 1;
                    if (B.in_hole(e)) continue;
                    B.edge_id[B.flat(e)] = static_cast<std::int32_t>(B.n_edges++);
                }
    const std::size_t n = B.n_edges;
    auto on_zface = [&](const std::array<int, 3>& p) { return p[2] == 0 || p[2] == 2 * N; };

    // copy 1: vertex stars, rough z-faces
    {
        RowBuilder X(n), Z(n);
        for (int x = 0; x <= N; ++x)
            for (int y = 0; y <= N; ++y)
                for (int z = 0; z <= N; ++z) {
                    const std::array<int, 3> p{2 * x, 2 * y, 2 * z};
                    if (on_zface(p) || B.in_hole(p)) continue;
                    std::vector<std::array<int, 3>> star;
                    for (int a = 0; a < 3; ++a)
                        for (int s : {-1, 1}) {
                            auto e = shifted(p, a, s);
                            if (!on_zface(e)) star.push_back(e);
                        }
                    X.add(B, star);
                }
        for (int x = 0; x <= 2 * N; ++x)
            for (int y = 0; y <= 2 * N; ++y)
                for (int z : {0, 2 * N}) {
                    const std::array<int, 3> e{x, y, z};
                    if ((x & 1) + (y & 1) == 1 && B.id(e) >= 0) Z.add(B, {e});
                }
        for (int x = 0; x <= 2 * N; ++x)
            for (int y = 0; y <= 2 * N; ++y)
                for (int z = 0; z <= 2 * N; ++z) {
                    const std::array<int, 3> f{x, y, z};
                    if ((x & 1) + (y & 1) + (z & 1) != 2 || on_zface(f) || B.in_hole(f)) continue;
                    std::vector<std::array<int, 3>> bd;
                    for (int a = 0; a < 3; ++a)
                        if (f[static_cast<std::size_t>(a)] & 1)
                            for (int s : {-1, 1}) {
                                auto e = shifted(f, a, s);
                                if (!on_zface(e)) bd.push_back(e);
                            }
                    Z.add(B, bd);
                }
        st.codes.push_back(CssCode::from_checks(n, std::move(X.rows), std::move(Z.rows)));
        st.hole_boundary[0] = std::move(X.lost);
    }

    // copies 2 and 3: cubes of one parity class, rough along x resp. y
    for (int copy = 1; copy <= 2; ++copy) {
        const int color = copy - 1, rough = copy - 1;
        RowBuilder X(n), Z(n);
        for (int x = -1; x <= N; ++x)
            for (int y = -1; y <= N; ++y)
                for (int z = -1; z <= N; ++z) {
                    const std::array<int, 3> c{x, y, z};
                    if (parity(c) != color) continue;
                    const int r = c[static_cast<std::size_t>(rough)];
                    if (r < 0 || r >= N) continue;
                    X.add(B, cube_edges(c));
                }
        const Incidence xcols = X.rows.columns();
        std::vector<std::uint8_t> odd(X.rows.rows(), 0);
        for (int x = 0; x <= N; ++x)
            for (int y = 0; y <= N; ++y)
                for (int z = 0; z <= N; ++z) {
                    std::vector<std::array<int, 3>> around;
                    for (int dx : {-1, 0})
                        for (int dy : {-1, 0})
                            for (int dz : {-1, 0}) {
                                const std::array<int, 3> c{x + dx, y + dy, z + dz};
                                if (parity(c) == color) around.push_back(c);
                            }
                    for (std::size_t i = 0; i < around.size(); ++i)
                        for (std::size_t j = i + 1; j < around.size(); ++j)
                            for (std::size_t k = j + 1; k < around.size(); ++k) {
                                std::set<std::array<int, 3>> sup;
                                const std::array<std::array<int, 3>, 3> tri{around[i], around[j], around[k]};
                                for (std::size_t u = 0; u < 3; ++u)
                                    for (std::size_t v = u + 1; v < 3; ++v) {
                                        auto eu = cube_edges(tri[u]), ev = cube_edges(tri[v]);
                                        std::sort(eu.begin(), eu.end());
                                        std::sort(ev.begin(), ev.end());
                                        std::set_intersection(eu.begin(), eu.end(), ev.begin(), ev.end(),
                                                              std::inserter(sup, sup.end()));
                                    }
                                std::vector<std::uint32_t> s;
                                for (const auto& e : sup)
                                    if (auto id = B.id(e); id >= 0) s.push_back(static_cast<std::uint32_t>(id));
                                if (s.empty()) continue;
                                std::vector<std::uint32_t> touched;
                                for (auto q : s)
                                    for (auto r : xcols.row(q)) {
                                        if (!odd[r]) touched.push_back(r);
                                        odd[r] ^= 1;
                                    }
                                bool ok = true;
                                for (auto r : touched) {
                                    ok = ok && !odd[r];
                                    odd[r] = 0;
                                }
                                if (!ok) continue;
                                std::vector<std::array<int, 3>> cand(sup.begin(), sup.end());
                                Z.add(B, cand, true);
                            }
                }
        st.codes.push_back(CssCode::from_checks(n, std::move(X.rows), std::move(Z.rows)));
        st.hole_boundary[static_cast<std::size_t>(copy)] = std::move(X.lost);
    }
    st.align = StackAlignment::identity(n, 3);
    return st;
}

VasmerBrowneStack build_vasmer_browne_stack(int L, const FractalSpec& holes) {
    holes.validate();
    if (holes.n != 3) throw ValidationError("stack holes must be three-dimensional");
    if (holes.side() != L) throw ValidationError("hole pattern side does not match L");
    if (!holes.assignment.empty() || holes.uniform != HoleType::M)
        throw ValidationError("the three-copy stack supports (m,m,m) holes only");
    const auto boxes = fractal_holes(3, holes.p, holes.q, holes.level, holes.unit);
    return build_vasmer_browne_stack(L, boxes);
}

// ---------------------------------------------------------------------------
// Rough merge

MergeInterface rough_interface(const CellComplex& a, const CellComplex& b, int axis) {
    if (a.dim() != b.dim()) throw ValidationError("rough_interface: dimensions differ");
    if (axis < 0 || axis >= a.dim()) throw ValidationError("rough_interface: axis out of range");
    const auto ax = static_cast<std::size_t>(axis);
    const int top = 2 * a.side();
    MergeInterface m;
    for (int k = 0; k < a.dim(); ++k)
        for (const auto& cell : a.cells(k)) {
            if (cell.x2[ax] != top || ((cell.extent >> axis) & 1U)) continue;
            Coord y = cell.x2;
            y[ax] = 0;
            auto id = b.find(k, y);
            if (!cell.label.is_e() || !id || !b.cell(k, *id).label.is_e())
                throw ValidationError("rough_interface: face cell " + std::to_string(k) + ":" + std::to_string(cell.id) +
                                      " has no rough partner");
            m.pairs.push_back({k, cell.id, *id});
        }
    return m;
}

MergeResult merge_rough(const CssCode& a, const CssCode& b, const MergeInterface& iface) {
    if (!a.source() || !b.source()) throw ValidationError("merge_rough: codes need source complexes");
    if (iface.pairs.empty()) throw ValidationError("merge_rough: empty interface");
    const CellComplex& A = *a.source();
    const CellComplex& Bc = *b.source();
    if (A.dim() != Bc.dim() || a.grading() != b.grading()) throw ValidationError("merge_rough: codes are not alike");
    const int n = A.dim();
    const auto grades = static_cast<std::size_t>(n + 1);

    std::vector<std::vector<std::uint32_t>> a_of_b(grades), b_of_a(grades);
    for (int k = 0; k <= n; ++k) {
        a_of_b[static_cast<std::size_t>(k)].assign(Bc.count(k), UINT32_MAX);
        b_of_a[static_cast<std::size_t>(k)].assign(A.count(k), UINT32_MAX);
    }
    std::optional<Coord> offset;
    for (const auto& p : iface.pairs) {
        if (p.k < 0 || p.k > n || p.a >= A.count(p.k) || p.b >= Bc.count(p.k))
            throw ValidationError("merge_rough: interface cell out of range");
        const Cell& ca = A.cell(p.k, p.a);
        const Cell& cb = Bc.cell(p.k, p.b);
        if (!ca.label.is_e() || !cb.label.is_e()) throw ValidationError("merge_rough: interface cells must be rough");
        if (ca.extent != cb.extent) throw ValidationError("merge_rough: interface mismatch (cell shapes differ)");
        Coord d{};
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = ca.x2[i] - cb.x2[i];
        if (offset && *offset != d) throw ValidationError("merge_rough: interface mismatch (not a translation)");
        offset = d;
        auto& ab = a_of_b[static_cast<std::size_t>(p.k)][p.b];
        auto& ba = b_of_a[static_cast<std::size_t>(p.k)][p.a];
        if (ab != UINT32_MAX || ba != UINT32_MAX) throw ValidationError("merge_rough: interface pairs a cell twice");
        ab = p.a;
        ba = p.b;
    }
    for (const auto& p : iface.pairs) {
        if (p.k == 0) continue;
        std::vector<std::uint32_t> fa(A.boundary_of(p.k, p.a).begin(), A.boundary_of(p.k, p.a).end()), fb;
        for (auto f : Bc.boundary_of(p.k, p.b)) fb.push_back(a_of_b[static_cast<std::size_t>(p.k - 1)][f]);
        std::sort(fa.begin(), fa.end());
        std::sort(fb.begin(), fb.end());
        if (fa != fb) throw ValidationError("merge_rough: interface mismatch (faces are not paired)");
    }

    // Glued face of a: the axis along which all paired cells sit at one outer value.
    std::set<int> glued_faces;
    for (int ax = 0; ax < n; ++ax) {
        const auto x = A.cell(iface.pairs.front().k, iface.pairs.front().a).x2[static_cast<std::size_t>(ax)];
        if (x != 0 && x != 2 * A.side()) continue;
        bool flat = true;
        for (const auto& p : iface.pairs) flat = flat && A.cell(p.k, p.a).x2[static_cast<std::size_t>(ax)] == x;
        if (flat) glued_faces.insert(2 * ax + (x == 0 ? 0 : 1));
    }
    std::map<int, LabelKind> face_kind;
    for (int k = 0; k <= n; ++k)
        for (const auto& c : A.cells(k))
            if (c.label.kind == LabelKind::OuterE || c.label.kind == LabelKind::OuterM) face_kind.emplace(c.label.id, c.label.kind);
    auto glued_label = [&](const Cell& c) {
        BoundaryLabel best;
        for (int ax = 0; ax < n; ++ax) {
            if (!((A.primal_axes() >> ax) & 1U)) continue;
            const auto x = c.x2[static_cast<std::size_t>(ax)];
            if (x != 0 && x != 2 * A.side()) continue;
            const int face = 2 * ax + (x == 0 ? 0 : 1);
            if (glued_faces.count(face)) continue;
            auto it = face_kind.find(face);
            if (it == face_kind.end()) continue;
            if (it->second == LabelKind::OuterE && best.kind != LabelKind::OuterE) best = {LabelKind::OuterE, face};
            else if (it->second == LabelKind::OuterM && best.kind == LabelKind::Bulk) best = {LabelKind::OuterM, face};
        }
        return best;
    };

    std::vector<std::vector<Cell>> cells(grades);
    std::vector<std::vector<std::uint32_t>> b_new(grades);
    for (int k = 0; k <= n; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        for (const auto& c : A.cells(k)) {
            Cell m = c;
            if (b_of_a[kk][c.id] != UINT32_MAX) m.label = glued_label(c);
            cells[kk].push_back(m);
        }
        b_new[kk].assign(Bc.count(k), UINT32_MAX);
        for (const auto& c : Bc.cells(k)) {
            if (a_of_b[kk][c.id] != UINT32_MAX) {
                b_new[kk][c.id] = a_of_b[kk][c.id];
                continue;
            }
            Cell m = c;
            for (std::size_t i = 0; i < m.x2.size(); ++i) m.x2[i] += (*offset)[i];
            m.id = static_cast<std::uint32_t>(cells[kk].size());
            b_new[kk][c.id] = m.id;
            cells[kk].push_back(m);
        }
    }
    std::vector<Incidence> bnd(grades);
    std::vector<std::uint32_t> ids;
    for (int k = 1; k <= n; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        for (const auto& c : A.cells(k)) {
            auto r = A.boundary_of(k, c.id);
            ids.assign(r.begin(), r.end());
            bnd[kk].push_row(ids);
        }
        for (const auto& c : Bc.cells(k)) {
            if (a_of_b[kk][c.id] != UINT32_MAX) continue;
            ids.clear();
            for (auto f : Bc.boundary_of(k, c.id)) ids.push_back(b_new[kk - 1][f]);
            std::sort(ids.begin(), ids.end());
            bnd[kk].push_row(ids);
        }
    }
    auto glued = std::make_shared<const CellComplex>(n, A.background(), A.side(), A.cellulation(), A.primal_axes(),
                                                     std::move(cells), std::move(bnd));
    MergeResult res{css_from_complex(glued, a.grading()), 0, 0, 0, {}, {}, false};
    const CssCode& m = res.merged;
    const int i = a.grading();
    res.k_a = logical_count(a);
    res.k_b = logical_count(b);
    res.k_merged = logical_count(m);

    for (std::uint32_t q = 0; q < m.n_qubits(); ++q) {
        const auto cell = m.qubit_cell()[q];
        if (cell < A.count(i) && b_of_a[static_cast<std::size_t>(i)][cell] != UINT32_MAX) res.interface_qubits.push_back(q);
    }
    for (std::uint32_t r = 0; r < m.hx_rows().rows(); ++r) {
        const auto cell = m.x_anchor()[r];
        if (cell < A.count(i - 1) && b_of_a[static_cast<std::size_t>(i - 1)][cell] != UINT32_MAX)
            res.interface_x_checks.push_back(r);
    }
    if (res.k_a == 0 || res.k_b == 0 || res.interface_x_checks.empty()) return res;

    auto from_a = [&](std::uint32_t q) { return *m.qubit_of_cell(a.qubit_cell()[q]); };
    auto from_b = [&](std::uint32_t q) {
        return *m.qubit_of_cell(b_new[static_cast<std::size_t>(i)][b.qubit_cell()[q]]);
    };
    Gf2Vector target(m.n_qubits());
    for (auto r : res.interface_x_checks)
        for (auto q : m.hx_rows().row(r)) target.flip(q);
    for (auto q : logical_basis(a).x.front().x.support()) target.flip(from_a(q));
    for (auto q : logical_basis(b).x.front().x.support()) target.flip(from_b(q));
    // columns: the old X checks of both blocks, moved into the merged qubit space
    Gf2Matrix old(m.n_qubits(), a.hx_rows().rows() + b.hx_rows().rows());
    std::size_t col = 0;
    for (std::size_t r = 0; r < a.hx_rows().rows(); ++r, ++col)
        for (auto q : a.hx_rows().row(r)) old.flip(from_a(q), col);
    for (std::size_t r = 0; r < b.hx_rows().rows(); ++r, ++col)
        for (auto q : b.hx_rows().row(r)) old.flip(from_b(q), col);
    res.parity_identity = solve(old, target).has_value();
    return res;
}

}  // namespace fcss
