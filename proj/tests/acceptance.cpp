// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fcss/code.hpp"
#include "fcss/complex.hpp"
#include "fcss/distance.hpp"
#include "fcss/error.hpp"
#include "fcss/gates.hpp"
#include "fcss/homology.hpp"

using namespace fcss;

namespace {

// tolerances and wall-clock limits
constexpr double kTableTol = 1e-3;
constexpr double kFitTol = 5e-3;
constexpr double kNoGoExponent = 0.1;
constexpr double kFcExponent = 1.8928;

struct Outcome {
    bool ok = true;
    std::string detail;
};

std::shared_ptr<const CellComplex> fractal(int n, int p, int q, int level, HoleType h,
                                           Background bg = Background::OpenCube,
                                           Cellulation cl = Cellulation::Adapted) {
    FractalSpec f;
    f.n = n;
    f.p = p;
    f.q = q;
    f.level = level;
    f.uniform = h;
    f.background = bg;
    f.cellulation = bg == Background::OpenCube ? cl : Cellulation::Primal;
    return std::make_shared<const CellComplex>(build_fractal(f));
}

CssCode code_of(std::shared_ptr<const CellComplex> c, int i = 1) { return css_from_complex(std::move(c), i); }

// k from ranks, cross-checked against relative homology
std::size_t k_checked(const CssCode& c) { return code_params(c, true).k; }

class Runner {
public:
    void run(int id, double limit_s, const std::function<Outcome()>& body) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (s > limit_s) {
            o.ok = false;
            o.detail += " [over time limit]";
        }
        std::printf("CRITERION %d %s %s (%.2fs / %.0fs)\n", id, o.ok ? "PASS" : "FAIL", o.detail.c_str(), s, limit_s);
        std::fflush(stdout);
        failures_ += !o.ok;
    }
    int failures() const { return failures_; }

private:
    int failures_ = 0;
};

std::string fmt(const char* f, double a, double b) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

Outcome table1() {
    struct Row {
        const char* name;
        double dh, dx;
    };
    const Row rows[] = {{"FC(3,1)", 2.965, 1.893}, {"FC(6,4)", 2.804, 1.672}, {"FC(100,98)", 2.385, 1.299}};
    const auto table = table1_entries();
    Outcome o;
    for (const auto& r : rows) {
        bool found = false;
        for (const auto& e : table) {
            if (e.name != r.name) continue;
            found = true;
            const bool good = std::abs(e.d_h - r.dh) <= kTableTol && std::abs(e.dx_exp - r.dx) <= kTableTol;
            o.ok = o.ok && good;
            o.detail += std::string(r.name) + "=" + fmt("%.3f/%.3f ", e.d_h, e.dx_exp);
        }
        o.ok = o.ok && found;
    }
    o.detail += "rows=" + std::to_string(table.size());
    return o;
}

Outcome logical_counts() {
    struct Case {
        const char* name;
        std::shared_ptr<const CellComplex> c;
        std::size_t k;
    };
    const std::vector<Case> cases{
        {"sphere", fractal(3, 3, 1, 1, HoleType::M, Background::Sphere), 0},
        {"torus", fractal(3, 3, 1, 1, HoleType::M, Background::Torus), 3},
        {"fsc1", fractal(3, 3, 1, 1, HoleType::M), 1},
        {"fsc2", fractal(3, 3, 1, 2, HoleType::M), 1},
        {"fsc1p", fractal(3, 3, 1, 1, HoleType::M, Background::OpenCube, Cellulation::Primal), 1},
        {"fsc2p", fractal(3, 3, 1, 2, HoleType::M, Background::OpenCube, Cellulation::Primal), 1},
    };
    Outcome o;
    for (const auto& c : cases) {
        const std::size_t k = k_checked(code_of(c.c));
        o.ok = o.ok && k == c.k;
        o.detail += std::string(c.name) + ":k=" + std::to_string(k) + " ";
    }
    return o;
}

Outcome fractal_cube_distances() {
    const std::size_t want_z[] = {3, 9}, want_x[] = {8, 64};
    std::vector<std::pair<double, double>> pts;
    Outcome o;
    for (int level = 1; level <= 2; ++level) {
        const CssCode c = code_of(fractal(3, 3, 1, level, HoleType::M));
        const DistanceResult dz = dz_shortest_path(c), dx = dx_min_cut(c);
        o.ok = o.ok && dz.kind == DistanceKind::Exact && dx.kind == DistanceKind::Exact;
        o.ok = o.ok && dz.value == want_z[level - 1] && dx.value == want_x[level - 1];
        o.ok = o.ok && is_logical(c, dz.witness) && is_logical(c, dx.witness);
        o.detail += "l" + std::to_string(level) + ":dz=" + std::to_string(dz.value) + ",dx=" + std::to_string(dx.value) + " ";
        pts.emplace_back(std::pow(3.0, level), static_cast<double>(dx.value));
    }
    const ScalingFit f = fit_scaling(pts);
    o.ok = o.ok && std::abs(f.exponent - kFcExponent) <= kFitTol;
    o.detail += fmt("fit=%.4f dev=%.1e", f.exponent, std::abs(f.exponent - kFcExponent));
    return o;
}

Outcome carpet_no_go() {
    std::vector<std::pair<double, double>> pts;
    Outcome o;
    for (int level = 1; level <= 3; ++level) {
        const CssCode c = code_of(fractal(2, 3, 1, level, HoleType::M));
        const DistanceResult r = exhaustive_low_weight(c, PauliType::X, 2);
        const bool found = r.kind == DistanceKind::Exact && r.value <= 2 && is_logical(c, r.witness);
        o.ok = o.ok && found;
        o.detail += "l" + std::to_string(level) + ":dx=" + (found ? std::to_string(r.value) : describe(r)) + " ";
        pts.emplace_back(std::pow(3.0, level), static_cast<double>(r.value));
    }
    const ScalingFit f = fit_scaling(pts);
    o.ok = o.ok && f.exponent < kNoGoExponent;
    o.detail += fmt("fit=%.4f limit=%.1f", f.exponent, kNoGoExponent);
    return o;
}

Outcome ehole_no_go() {
    const CssCode c = code_of(fractal(3, 3, 1, 2, HoleType::E));
    const std::size_t holes = fractal_holes(3, 3, 1, 2, 1).size();
    const DistanceResult r = exhaustive_low_weight(c, PauliType::Z, 2);
    const std::size_t k = k_checked(c);
    Outcome o;
    o.ok = r.kind == DistanceKind::Exact && r.value <= 2 && is_logical(c, r.witness) && k == holes + 1;
    o.detail = "dz=" + describe(r) + "(" + std::to_string(r.value) + ") k=" + std::to_string(k) +
               " N_h=" + std::to_string(holes);
    return o;
}

Outcome four_torus() {
    const CellComplex base = build_lattice(4, 2, Background::Torus);
    Outcome o;
    const std::size_t k0 = k_checked(code_of(std::make_shared<const CellComplex>(base), 2));
    o.ok = k0 == 6;
    o.detail = "k_nohole=" + std::to_string(k0);
    HoleBox box;
    for (int a = 0; a < 4; ++a) {
        box.lo[static_cast<std::size_t>(a)] = 0;
        box.hi[static_cast<std::size_t>(a)] = 1;
    }
    const std::vector<HoleBox> boxes{box};
    for (HoleType t : {HoleType::E, HoleType::M}) {
        const std::vector<HoleType> types{t};
        const CssCode c = code_of(std::make_shared<const CellComplex>(punch_holes(base, boxes, types)), 2);
        const std::size_t k = k_checked(c);
        const DistanceResult dz = exhaustive_low_weight(c, PauliType::Z, 2);
        const DistanceResult dx = exhaustive_low_weight(c, PauliType::X, 2);
        const bool cert = dz.kind == DistanceKind::CertifiedAbove && dz.value == 2 &&
                          dx.kind == DistanceKind::CertifiedAbove && dx.value == 2;
        o.ok = o.ok && k == k0 && cert;
        o.detail += std::string(t == HoleType::E ? " E" : " M") + ":k=" + std::to_string(k) + ",dz=" + describe(dz) +
                    ",dx=" + describe(dx);
    }
    return o;
}

// The duality is a statement about the geometry; it is checked on the primal
// cellulation of each geometry used by the logical-count and distance criteria.
Outcome lefschetz() {
    constexpr auto P = Cellulation::Primal;
    const std::vector<std::pair<const char*, std::shared_ptr<const CellComplex>>> geoms{
        {"sphere", fractal(3, 3, 1, 1, HoleType::M, Background::Sphere)},
        {"torus", fractal(3, 3, 1, 1, HoleType::M, Background::Torus)},
        {"fc1", fractal(3, 3, 1, 1, HoleType::M, Background::OpenCube, P)},
        {"fc2", fractal(3, 3, 1, 2, HoleType::M, Background::OpenCube, P)},
        {"fc2e", fractal(3, 3, 1, 2, HoleType::E, Background::OpenCube, P)},
        {"carpet", fractal(2, 3, 1, 2, HoleType::M, Background::OpenCube, P)},
    };
    Outcome o;
    for (const auto& [name, c] : geoms) {
        const LefschetzReport r = verify_lefschetz(*c, 1, LabelSet::e_labels(), LabelSet::m_labels());
        o.ok = o.ok && r.equal;
        o.detail += std::string(name) + ":" + std::to_string(r.lhs) + "=" + std::to_string(r.rhs) + " ";
    }
    return o;
}

std::vector<HoleBox> center_hole() {
    HoleBox h;
    for (std::size_t a = 0; a < 3; ++a) {
        h.lo[a] = 1;
        h.hi[a] = 2;
    }
    return {h};
}

Outcome ccz_conditions() {
    Outcome o;
    for (int L : {2, 3}) {
        const VasmerBrowneStack st = build_vasmer_browne_stack(L);
        const GateCheckReport r = check_transversal_ccz(st.codes[0], st.codes[1], st.codes[2], st.align);
        o.ok = o.ok && r.passed() && r.failure_count() == 0;
        o.detail += "L" + std::to_string(L) + ":fail=" + std::to_string(r.failure_count()) + " ";
    }
    const auto holes = center_hole();
    const VasmerBrowneStack st = build_vasmer_browne_stack(3, holes);
    const GateCheckReport r = check_transversal_ccz(st.codes[0], st.codes[1], st.codes[2], st.align);
    std::size_t off_boundary = 0;
    for (const auto& c : r.conditions)
        for (const auto& w : c.failures) {
            bool touches = false;
            const std::string ids[3] = {w.a, w.b, w.c};
            for (std::size_t j = 0; j < 3; ++j)
                if (!ids[j].empty() && ids[j][0] == 'X') touches = touches || st.hole_boundary[j][std::stoul(ids[j].substr(1))];
            off_boundary += !touches;
        }
    o.ok = o.ok && r.failure_count() > 0 && off_boundary == 0;
    o.detail += "holed:fail=" + std::to_string(r.failure_count()) + ",off_boundary=" + std::to_string(off_boundary);
    return o;
}

Outcome commutation() {
    const auto holes = center_hole();
    const VasmerBrowneStack st = build_vasmer_browne_stack(3, holes);
    const CczStack stack(st.codes[0], st.codes[1], st.codes[2], st.align);
    const auto ops = stack.conjugated_stabilizers();
    const CommutationReport r = check_pairwise_commutation(ops);
    Outcome o;
    o.ok = r.failures == 0 && r.operators > 0;
    o.detail = "ops=" + std::to_string(r.operators) + " pairs=" + std::to_string(r.pairs_checked) +
               " fail=" + std::to_string(r.failures);
    return o;
}

Outcome color_code() {
    Outcome o;
    for (int L : {1, 2}) {
        const ColorCode2D cc = build_color_code_2d(L);
        const GateCheckReport r = check_transversal_s_colorcode(cc);
        bool s3 = false;
        for (const auto& c : r.conditions) s3 = s3 || (c.id == "S3" && c.status == CondStatus::Pass);
        const auto [la, lb] = shrunk_lattices(cc);
        const std::size_t ka = k_checked(code_of(std::make_shared<const CellComplex>(la)));
        const std::size_t kb = k_checked(code_of(std::make_shared<const CellComplex>(lb)));
        o.ok = o.ok && r.passed() && s3 && ka == 1 && kb == 1;
        o.detail += "L" + std::to_string(L) + ":n=" + std::to_string(cc.code.n_qubits()) + ",S=" +
                    (r.passed() ? "pass" : "fail") + ",kA=" + std::to_string(ka) + ",kB=" + std::to_string(kb) + " ";
    }
    return o;
}

Outcome merge() {
    Outcome o;
    const std::vector<std::pair<const char*, std::shared_ptr<const CellComplex>>> geoms{
        {"sc2", std::make_shared<const CellComplex>(build_lattice(3, 2, Background::OpenCube))},
        {"fc1", fractal(3, 3, 1, 1, HoleType::M)},
    };
    for (const auto& [name, c] : geoms) {
        const CssCode a = code_of(c);
        const MergeResult m = merge_rough(a, a, rough_interface(*c, *c, 2));
        o.ok = o.ok && m.k_merged == 1 && m.parity_identity;
        o.detail += std::string(name) + ":k=" + std::to_string(m.k_merged) + ",parity=" + (m.parity_identity ? "ok" : "bad") + " ";
    }
    return o;
}

// ∂∂ = 0, commuting checks, betti = cobetti = k, rank-nullity and distance witnesses
Outcome structural() {
    std::vector<std::pair<std::string, std::shared_ptr<const CellComplex>>> geoms;
    for (auto bg : {Background::OpenCube, Background::Torus, Background::Sphere})
        for (int level = 1; level <= 2; ++level)
            for (auto h : {HoleType::M, HoleType::E})
                geoms.emplace_back(to_string(bg) + "/l" + std::to_string(level) + (h == HoleType::M ? "m" : "e"),
                                   fractal(3, 3, 1, level, h, bg));
    geoms.emplace_back("carpet", fractal(2, 3, 1, 2, HoleType::M));
    geoms.emplace_back("fc42", fractal(3, 4, 2, 1, HoleType::M));
    geoms.emplace_back("primal", fractal(3, 3, 1, 1, HoleType::M, Background::OpenCube, Cellulation::Primal));
    geoms.emplace_back("t4", std::make_shared<const CellComplex>(build_lattice(4, 2, Background::Torus)));
    Outcome o;
    std::size_t bad = 0;
    for (const auto& [name, c] : geoms) {
        bool ok = boundary_squared_zero(*c) && boundary_squared_zero(dual(*c));
        for (int i = 1; i < c->dim(); ++i) {
            const CssCode code = code_of(c, i);
            ok = ok && checks_commute(code);
            ok = ok && code.hx().mul(code.hz().transpose()).is_zero();
            const std::size_t k = logical_count(code);
            const HomologyRequest req{*c, i, LabelSet::e_labels()};
            ok = ok && betti(req).value == k && cobetti(req).value == k;
            // rank-nullity on every boundary map
            for (int d = 1; d <= c->dim(); ++d) {
                const Gf2Matrix m = c->boundary_matrix(d);
                ok = ok && rank(m) + kernel_basis(m).size() == m.cols();
            }
            if (i == 1 && c->background() == Background::OpenCube && k > 0 && c->dim() == 3) {
                const DistanceResult dz = dz_shortest_path(code);
                ok = ok && is_logical(code, dz.witness) && dz.witness.weight() == dz.value;
            }
        }
        if (!ok) {
            ++bad;
            o.detail += name + ":bad ";
        }
    }
    o.ok = bad == 0;
    o.detail += "geometries=" + std::to_string(geoms.size()) + " bad=" + std::to_string(bad) +
                " (randomized properties run in unit_tests)";
    return o;
}

}  // namespace

int main() {
    Runner r;
    r.run(1, 1, table1);
    r.run(2, 30, logical_counts);
    r.run(3, 60, fractal_cube_distances);
    r.run(4, 120, carpet_no_go);
    r.run(5, 120, ehole_no_go);
    r.run(6, 600, four_torus);
    r.run(7, 60, lefschetz);
    r.run(8, 60, ccz_conditions);
    r.run(9, 60, commutation);
    r.run(10, 60, color_code);
    r.run(11, 30, merge);
    r.run(12, 120, structural);
    std::printf("%d of 12 criteria failed\n", r.failures());
    return r.failures() == 0 ? 0 : 1;
}
