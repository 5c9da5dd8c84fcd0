#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fcss/distance.hpp"
#include "fcss/error.hpp"
#include "oracle.hpp"

using namespace fcss;

namespace {

constexpr std::uint64_t kSeed = 20261016;

CssCode fractal_code(int n, int p, int q, int level, HoleType h, Cellulation cl) {
    FractalSpec f;
    f.n = n;
    f.p = p;
    f.q = q;
    f.level = level;
    f.uniform = h;
    f.cellulation = cl;
    return css_from_complex(std::make_shared<const CellComplex>(build_fractal(f)), 1);
}

SparseRows sparse(const oracle::Dense& rows, std::size_t n) {
    SparseRows s(n);
    for (const auto& r : rows) {
        std::vector<std::uint32_t> sup;
        for (std::size_t j = 0; j < n; ++j)
            if (r[j]) sup.push_back(static_cast<std::uint32_t>(j));
        s.push_row(sup);
    }
    return s;
}

}  // namespace

TEST(Distance, FractalCubeLevelOne) {
    const CssCode c = fractal_code(3, 3, 1, 1, HoleType::M, Cellulation::Adapted);
    const DistanceResult dz = dz_shortest_path(c);
    const DistanceResult dx = dx_min_cut(c);
    EXPECT_EQ(dz.kind, DistanceKind::Exact);
    EXPECT_EQ(dz.value, oracle::rough_to_rough_path(*c.source()));
    EXPECT_EQ(dz.value, 3u);
    EXPECT_EQ(dx.value, oracle::rough_max_flow(*c.source(), 2));
    EXPECT_EQ(dx.value, 8u);
    EXPECT_TRUE(is_logical(c, dz.witness));
    EXPECT_TRUE(is_logical(c, dx.witness));
    EXPECT_EQ(dz.witness.weight(), dz.value);
    EXPECT_EQ(dx.witness.weight(), dx.value);
    EXPECT_TRUE(dz.witness.z.dot(dx.witness.x));
}

TEST(Distance, FractalCubeLevelTwo) {
    const CssCode c = fractal_code(3, 3, 1, 2, HoleType::M, Cellulation::Adapted);
    EXPECT_EQ(dz_shortest_path(c).value, 9u);
    const DistanceResult dx = dx_min_cut(c);
    EXPECT_EQ(dx.value, 64u);
    EXPECT_EQ(dx.value, oracle::rough_max_flow(*c.source(), 2));
}

TEST(Distance, FractalCubeFourTwo) {
    const CssCode c = fractal_code(3, 4, 2, 1, HoleType::M, Cellulation::Adapted);
    EXPECT_EQ(dx_min_cut(c).value, 12u);  // 4^2 - 2^2
}

TEST(Distance, SurfaceCodes) {
    // adapted: 3D surface code d_X = L^2 and d_Z = L
    for (int L : {2, 3}) {
        const CssCode c = css_from_complex(
            std::make_shared<const CellComplex>(build_lattice(3, L, Background::OpenCube, {Cellulation::Adapted, 0})), 1);
        EXPECT_EQ(dz_shortest_path(c).value, static_cast<std::size_t>(L));
        EXPECT_EQ(dx_min_cut(c).value, static_cast<std::size_t>(L * L));
    }
    // primal: the smooth faces keep their cells, so the X membrane grows to (L+1)^2
    const CssCode p = css_from_complex(std::make_shared<const CellComplex>(build_lattice(3, 3, Background::OpenCube)), 1);
    EXPECT_EQ(dx_min_cut(p).value, 16u);
    EXPECT_EQ(dx_min_cut(p).value, oracle::rough_max_flow(*p.source(), 2));
}

TEST(Distance, TorusSystoles) {
    const CssCode t2 = css_from_complex(std::make_shared<const CellComplex>(build_lattice(2, 3, Background::Torus)), 1);
    EXPECT_EQ(dz_shortest_path(t2).value, 3u);
    EXPECT_EQ(exhaustive_low_weight(t2, PauliType::Z, 3).value, 3u);
    const CssCode t3 = css_from_complex(std::make_shared<const CellComplex>(build_lattice(3, 4, Background::Torus)), 1);
    EXPECT_EQ(dz_shortest_path(t3).value, 4u);
}

TEST(Distance, EHoleShortcut) {
    const CssCode c = fractal_code(3, 3, 1, 2, HoleType::E, Cellulation::Adapted);
    const DistanceResult ex = exhaustive_low_weight(c, PauliType::Z, 2);
    EXPECT_EQ(ex.kind, DistanceKind::Exact);
    EXPECT_EQ(ex.value, 1u);
    EXPECT_EQ(dz_shortest_path(c).value, 1u);
}

TEST(Distance, SquareCarpetHasConstantXDistance) {
    for (int level = 1; level <= 2; ++level) {
        const CssCode a = fractal_code(2, 3, 1, level, HoleType::M, Cellulation::Adapted);
        EXPECT_EQ(exhaustive_low_weight(a, PauliType::X, 4).value, 1u);
        const CssCode p = fractal_code(2, 3, 1, level, HoleType::M, Cellulation::Primal);
        EXPECT_EQ(exhaustive_low_weight(p, PauliType::X, 4).value, 2u);
    }
}

TEST(Distance, CertifiedAbove) {
    const CssCode c = css_from_complex(std::make_shared<const CellComplex>(build_lattice(3, 2, Background::OpenCube)), 1);
    const DistanceResult r = exhaustive_low_weight(c, PauliType::Z, 1);
    EXPECT_EQ(r.kind, DistanceKind::CertifiedAbove);
    EXPECT_EQ(describe(r), "certified_above(1)");
}

TEST(Distance, BudgetIsEnforced) {
    const CssCode c = fractal_code(3, 3, 1, 1, HoleType::M, Cellulation::Adapted);
    SearchOptions tiny;
    tiny.budget = 10;
    EXPECT_THROW(exhaustive_low_weight(c, PauliType::X, 8, tiny), BudgetExceeded);
}

TEST(Distance, PreconditionsAreExplicit) {
    const CssCode t = css_from_complex(std::make_shared<const CellComplex>(build_lattice(3, 3, Background::Torus)), 1);
    EXPECT_THROW(dx_min_cut(t), ValidationError);
    const CssCode g2 = css_from_complex(std::make_shared<const CellComplex>(build_lattice(3, 3, Background::Torus)), 2);
    EXPECT_THROW(dz_shortest_path(g2), ValidationError);
}

TEST(Distance, ScalingFit) {
    const ScalingFit f = fit_scaling({{3, 8}, {9, 64}, {27, 512}});
    EXPECT_NEAR(f.exponent, std::log(8.0) / std::log(3.0), 1e-12);
    EXPECT_LT(f.residual, 1e-9);
    EXPECT_THROW(fit_scaling({{3, 8}}), ValidationError);
    EXPECT_THROW(fit_scaling({{3, 0}, {9, 1}}), ValidationError);
    EXPECT_EQ(fit_scaling({{3, 1}, {9, 1}, {27, 1}}).exponent, 0.0);
}

TEST(Distance, TableValues) {
    // FC(3,1), FC(6,4), FC(5,3), FC(100,98) to three decimals
    struct Row {
        const char* name;
        double dh, dx;
    };
    const Row rows[] = {{"FC(3,1)", 2.965, 1.893}, {"FC(6,4)", 2.804, 1.672}, {"FC(5,3)", 2.849, 1.723},
                        {"FC(100,98)", 2.385, 1.299}};
    const auto table = table1_entries();
    for (const auto& r : rows) {
        auto it = std::find_if(table.begin(), table.end(), [&](const Table1Entry& e) { return e.name == r.name; });
        ASSERT_NE(it, table.end()) << r.name;
        EXPECT_NEAR(it->d_h, r.dh, 1e-3) << r.name;
        EXPECT_NEAR(it->dx_exp, r.dx, 1e-3) << r.name;
    }
    EXPECT_NEAR(hausdorff_dimension(3, 3, 2), std::log(26.0) / std::log(3.0), 1e-12);
    EXPECT_NEAR(dx_exponent(3, 3, 2), std::log(8.0) / std::log(3.0), 1e-12);
}

// ---- randomized properties ------------------------------------------------

TEST(DistanceProperty, ExhaustiveMatchesBruteForce) {
    std::mt19937_64 rng(kSeed);
    int with_logicals = 0;
    for (int t = 0; t < 260; ++t) {
        const std::size_t n = 4 + rng() % 9;
        const auto r = oracle::random_css(rng, n, 1 + rng() % (n / 2), 1 + rng() % (n / 2));
        const CssCode c = CssCode::from_checks(n, sparse(r.hx, n), sparse(r.hz, n));
        const std::size_t w_max = 1 + rng() % 4;
        for (PauliType type : {PauliType::Z, PauliType::X}) {
            const auto& same = type == PauliType::Z ? r.hz : r.hx;
            const auto& other = type == PauliType::Z ? r.hx : r.hz;
            const auto want = oracle::brute_min_weight(same, other, n, w_max);
            const DistanceResult got = exhaustive_low_weight(c, type, w_max);
            if (want) {
                ++with_logicals;
                ASSERT_EQ(got.kind, DistanceKind::Exact) << "instance " << t;
                ASSERT_EQ(got.value, *want) << "instance " << t;
                ASSERT_TRUE(is_logical(c, got.witness)) << "instance " << t;
                ASSERT_EQ(got.witness.weight(), *want);
            } else {
                ASSERT_EQ(got.kind, DistanceKind::CertifiedAbove) << "instance " << t;
                ASSERT_EQ(got.value, w_max);
            }
        }
    }
    EXPECT_GT(with_logicals, 100);
}

TEST(DistanceProperty, GraphDistancesMatchOracles) {
    std::mt19937_64 rng(kSeed + 1);
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const int L = 2 + static_cast<int>(rng() % 4);
        const auto cl = rng() % 2 ? Cellulation::Adapted : Cellulation::Primal;
        const auto c = std::make_shared<const CellComplex>(build_lattice(n, L, Background::OpenCube, {cl, 0}));
        const CssCode code = css_from_complex(c, 1);
        const DistanceResult dz = dz_shortest_path(code);
        ASSERT_EQ(dz.value, oracle::rough_to_rough_path(*c)) << "instance " << t;
        ASSERT_TRUE(is_logical(code, dz.witness));
        if (n == 3) {
            const DistanceResult dx = dx_min_cut(code);
            ASSERT_EQ(dx.value, oracle::rough_max_flow(*c, n - 1)) << "instance " << t;
            ASSERT_TRUE(is_logical(code, dx.witness));
            ASSERT_TRUE(dx.witness.x.dot(dz.witness.z));
        }
    }
}
