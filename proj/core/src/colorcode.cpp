#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "fcss/error.hpp"
#include "fcss/gates.hpp"
#include "fcss/homology.hpp"

namespace fcss {

namespace {

using Point = ColorCode2D::Point;

int color_of(const Point& v) { return ((v[0] - v[1]) % 3 + 3) % 3; }

Point operator+(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1]}; }

}  // namespace

// Triangular patch with zigzag sides (color a) at x = 2u + w in {1, 1 + A} and
// straight sides (color b) at w in {0, B}. Lattice points of a side color just
// outside the patch are virtual: they close the boundary but carry no check.
ColorCode2D build_color_code_2d(int L) {
    if (L < 1) throw ValidationError("color code needs L >= 1");
    const int A = 3 * L + 1, B = 4 * L, sh = 1;
    const int ca = 0, cb = 1;
    std::vector<std::array<Point, 3>> triangles;
    std::vector<std::uint8_t> bipartition;
    auto sides = [&](const Point& v) {
        std::vector<int> r;
        const int x = 2 * v[0] + v[1];
        if (x <= sh || x >= sh + A) r.push_back(ca);
        if (v[1] <= 0 || v[1] >= B) r.push_back(cb);
        return r;
    };
    std::set<Point> S, V;
    for (int u = -B - 4; u < A + 6; ++u)
        for (int w = -3; w < B + 4; ++w) {
            const Point v{u, w};
            const int x = 2 * u + w;
            const auto o = sides(v);
            const bool on_side = std::find(o.begin(), o.end(), color_of(v)) != o.end();
            const bool inside = sh <= x && x <= sh + A && 0 <= w && w <= B;
            if (inside && !on_side)
                S.insert(v);
            else if (on_side && sh - 3 <= x && x <= sh + A + 3 && -2 <= w && w <= B + 2)
                V.insert(v);
        }
    int umin = INT32_MAX, umax = INT32_MIN, wmin = INT32_MAX, wmax = INT32_MIN;
    for (const auto& v : S) {
        umin = std::min(umin, v[0]);
        umax = std::max(umax, v[0]);
        wmin = std::min(wmin, v[1]);
        wmax = std::max(wmax, v[1]);
    }
    auto keep = [&](const std::array<Point, 3>& t) {
        int real = 0;
        for (const auto& v : t) {
            if (S.count(v))
                ++real;
            else if (!V.count(v))
                return false;
        }
        return real > 0;
    };
    for (int u = umin - 2; u <= umax + 1; ++u)
        for (int w = wmin - 2; w <= wmax + 1; ++w) {
            const std::array<Point, 3> up{Point{u, w}, Point{u + 1, w}, Point{u, w + 1}};
            const std::array<Point, 3> down{Point{u + 1, w}, Point{u, w + 1}, Point{u + 1, w + 1}};
            if (keep(up)) {
                triangles.push_back(up);
                bipartition.push_back(0);
            }
            if (keep(down)) {
                triangles.push_back(down);
                bipartition.push_back(1);
            }
        }
    std::set<Point> used;
    for (const auto& t : triangles)
        for (const auto& v : t)
            if (V.count(v)) used.insert(v);

    std::map<Point, std::vector<std::uint32_t>> touching;
    for (std::uint32_t q = 0; q < triangles.size(); ++q)
        for (const auto& v : triangles[q]) touching[v].push_back(q);
    SparseRows hx(triangles.size()), hz(triangles.size());
    std::vector<int> face_color;
    for (const auto& f : S) {
        hx.push_row(touching[f]);
        hz.push_row(touching[f]);
        face_color.push_back(color_of(f));
    }
    const std::size_t n = triangles.size();
    return ColorCode2D{CssCode::from_checks(n, std::move(hx), std::move(hz)),
                       std::move(triangles),
                       std::vector<Point>(S.begin(), S.end()),
                       std::move(face_color),
                       std::move(bipartition),
                       ca,
                       cb,
                       std::vector<Point>(used.begin(), used.end())};
}

CellComplex shrunk_lattice(const ColorCode2D& cc, int color) {
    if (color < 0 || color > 2) throw ValidationError("shrunk_lattice: color must be 0, 1 or 2");
    const std::set<Point> S(cc.faces.begin(), cc.faces.end());
    const std::set<Point> V(cc.virtual_faces.begin(), cc.virtual_faces.end());

    // Triangles sharing their two non-color vertices merge into one edge
    // between the color vertices. A lone triangle ends on its mirror point.
    std::map<std::pair<Point, Point>, std::vector<Point>> pairs;
    for (const auto& t : cc.triangles) {
        std::vector<Point> rest;
        Point z{};
        int hits = 0;
        for (const auto& v : t) {
            if (color_of(v) == color) {
                z = v;
                ++hits;
            } else {
                rest.push_back(v);
            }
        }
        if (hits != 1) throw InternalError("shrunk_lattice: triangle without a unique vertex of the color");
        std::sort(rest.begin(), rest.end());
        pairs[{rest[0], rest[1]}].push_back(z);
    }
    std::set<Point> extra;
    for (auto& [xy, zs] : pairs) {
        if (zs.size() == 1) {
            const Point m{xy.first[0] + xy.second[0] - zs[0][0], xy.first[1] + xy.second[1] - zs[0][1]};
            zs.push_back(m);
            if (!V.count(m)) extra.insert(m);
        }
        std::sort(zs.begin(), zs.end());
    }

    std::vector<std::vector<Cell>> cells(3);
    std::map<Point, std::uint32_t> vid;
    auto vertex = [&](const Point& p) {
        auto [it, fresh] = vid.emplace(p, static_cast<std::uint32_t>(cells[0].size()));
        if (fresh) {
            Cell c;
            c.id = it->second;
            c.x2 = {2 * p[0], 2 * p[1], 0, 0};
            const bool real = (S.count(p) && color_of(p) == color) || extra.count(p);
            if (!real) c.label = {LabelKind::OuterE, 0};
            cells[0].push_back(c);
        }
        return it->second;
    };
    for (const auto& p : S)
        if (color_of(p) == color) vertex(p);
    for (const auto& p : extra) vertex(p);

    std::vector<Incidence> bnd(3);
    std::map<std::pair<Point, Point>, std::uint32_t> eid;
    auto add_edge = [&](const Point& key, std::uint32_t u, std::uint32_t v) {
        Cell c;
        c.id = static_cast<std::uint32_t>(cells[1].size());
        c.x2 = {key[0], key[1], 0, 0};
        c.extent = 1;
        if (cells[0][u].label.is_e() && cells[0][v].label.is_e()) c.label = {LabelKind::OuterE, 0};
        cells[1].push_back(c);
        const std::array<std::uint32_t, 2> ends{std::min(u, v), std::max(u, v)};
        bnd[1].push_row(ends);
        return c.id;
    };
    for (const auto& [xy, zs] : pairs) eid[xy] = add_edge(xy.first + xy.second, vertex(zs[0]), vertex(zs[1]));

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> closure;
    for (const auto& f : S) {
        if (color_of(f) == color) continue;
        std::vector<std::uint32_t> edges;
        for (const auto& [xy, id] : eid)
            if (xy.first == f || xy.second == f) edges.push_back(id);
        // boundary of the boundary: pair up odd virtual vertices with closing edges
        std::map<std::uint32_t, int> deg;
        for (auto e : edges)
            for (auto v : bnd[1].row(e)) deg[v] ^= 1;
        std::vector<std::uint32_t> odd;
        for (auto [v, d] : deg)
            if (d) {
                if (!cells[0][v].label.is_e()) throw InternalError("shrunk_lattice: face boundary is open in the bulk");
                odd.push_back(v);
            }
        for (std::size_t j = 0; j + 1 < odd.size(); j += 2) {
            const auto key = std::make_pair(odd[j], odd[j + 1]);
            auto it = closure.find(key);
            if (it == closure.end()) {
                const Cell& a = cells[0][odd[j]];
                const Cell& b = cells[0][odd[j + 1]];
                const Point mid{(a.x2[0] + b.x2[0]) / 2, (a.x2[1] + b.x2[1]) / 2};
                it = closure.emplace(key, add_edge(mid, odd[j], odd[j + 1])).first;
            }
            edges.push_back(it->second);
        }
        if (odd.size() % 2) throw InternalError("shrunk_lattice: odd number of open ends");
        std::sort(edges.begin(), edges.end());
        Cell c;
        c.id = static_cast<std::uint32_t>(cells[2].size());
        c.x2 = {2 * f[0], 2 * f[1], 0, 0};
        c.extent = 3;
        cells[2].push_back(c);
        bnd[2].push_row(edges);
    }
    return CellComplex(2, Background::OpenCube, 0, Cellulation::Primal, 0, std::move(cells), std::move(bnd));
}

std::pair<CellComplex, CellComplex> shrunk_lattices(const ColorCode2D& cc) {
    return {shrunk_lattice(cc, cc.color_a), shrunk_lattice(cc, cc.color_b)};
}

GateCheckReport check_transversal_s_colorcode(const ColorCode2D& cc) {
    const CssCode& code = cc.code;
    const std::size_t n = code.n_qubits();
    if (cc.triangles.size() != n) throw ValidationError("color code: triangle list does not match the code");

    // two-coloring of qubits: triangles sharing an edge get opposite parts
    std::map<std::pair<Point, Point>, std::vector<std::uint32_t>> by_edge;
    for (std::uint32_t q = 0; q < n; ++q) {
        const auto& t = cc.triangles[q];
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j) by_edge[std::minmax(t[i], t[j])].push_back(q);
    }
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (const auto& [e, qs] : by_edge)
        for (std::size_t i = 0; i < qs.size(); ++i)
            for (std::size_t j = i + 1; j < qs.size(); ++j) {
                adj[qs[i]].push_back(qs[j]);
                adj[qs[j]].push_back(qs[i]);
            }
    std::vector<int> part(n, -1);
    for (std::uint32_t s = 0; s < n; ++s) {
        if (part[s] >= 0) continue;
        part[s] = 0;
        std::deque<std::uint32_t> queue{s};
        while (!queue.empty()) {
            const auto q = queue.front();
            queue.pop_front();
            for (auto r : adj[q]) {
                if (part[r] < 0) {
                    part[r] = 1 - part[q];
                    queue.push_back(r);
                } else if (part[r] == part[q]) {
                    throw ValidationError("color code lattice is not bipartite (qubits " + std::to_string(q) + ", " +
                                          std::to_string(r) + ")");
                }
            }
        }
    }
    auto imbalance = [&](const std::vector<std::uint32_t>& support) {
        int d = 0;
        for (auto q : support) d += part[q] == 0 ? 1 : -1;
        return ((d % 4) + 4) % 4;
    };

    GateCheckReport rep;
    ConditionResult s1{"S1", CondStatus::Pass, 0, {}}, s2{"S2", CondStatus::Pass, 0, {}};
    const auto& hx = code.hx_rows();
    const auto& hz = code.hz_rows();
    std::set<std::vector<std::uint32_t>> zrows;
    for (std::size_t r = 0; r < hz.rows(); ++r) zrows.emplace(hz.row(r).begin(), hz.row(r).end());
    for (std::size_t r = 0; r < hx.rows(); ++r) {
        std::vector<std::uint32_t> sup(hx.row(r).begin(), hx.row(r).end());
        ++s1.checked;
        if (int m = imbalance(sup); m != 0) s1.failures.push_back({"F" + std::to_string(r), "", "", m});
        ++s2.checked;
        if (!zrows.count(sup)) s2.failures.push_back({"F" + std::to_string(r), "", "", 1});
    }
    for (auto* c : {&s1, &s2}) c->status = c->failures.empty() ? CondStatus::Pass : CondStatus::Fail;
    rep.conditions.push_back(std::move(s1));
    rep.conditions.push_back(std::move(s2));

    // X̄_j picks up Z on its own support; that must be Z̄ of the other qubit.
    ConditionResult s3{"S3", CondStatus::Pass, 0, {}};
    const auto basis = logical_basis(code);
    if (basis.x.size() != 2) {
        s3.status = CondStatus::NotApplicable;
        rep.conditions.push_back(std::move(s3));
        return rep;
    }
    const Gf2Matrix hzt = code.hz().transpose();
    for (std::size_t j = 0; j < 2; ++j) {
        ++s3.checked;
        const Gf2Vector& xs = basis.x[j].x;
        const int m = imbalance(xs.support());
        const Gf2Vector target = xs ^ basis.z[1 - j].z;
        if (m % 2 != 0 || !solve(hzt, target))
            s3.failures.push_back({"L" + std::to_string(j), "L" + std::to_string(1 - j), "", m % 2 != 0 ? m : 1});
    }
    s3.status = s3.failures.empty() ? CondStatus::Pass : CondStatus::Fail;
    rep.conditions.push_back(std::move(s3));
    return rep;
}

}  // namespace fcss
