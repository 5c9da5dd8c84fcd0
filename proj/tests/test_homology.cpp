#include <gtest/gtest.h>

#include <random>

#include "fcss/code.hpp"
#include "fcss/error.hpp"
#include "fcss/homology.hpp"
#include "oracle.hpp"

using namespace fcss;

namespace {

constexpr std::uint64_t kSeed = 20261016;

// dim C_k - rank d_k - rank d_{k+1}, from the oracle's own elimination
std::size_t oracle_betti(const CellComplex& c, int k) {
    const std::size_t nk = c.count(k);
    const std::size_t rk = k > 0 ? oracle::rank(oracle::to_dense(c.boundary_matrix(k))) : 0;
    const std::size_t rk1 = k < c.dim() ? oracle::rank(oracle::to_dense(c.boundary_matrix(k + 1))) : 0;
    return nk - rk - rk1;
}

std::size_t k_of(const FractalSpec& f) {
    return logical_count(css_from_complex(build_fractal(f), f.i));
}

}  // namespace

TEST(Homology, TorusBetti) {
    const CellComplex t2 = build_lattice(2, 3, Background::Torus);
    EXPECT_EQ(absolute_betti(t2, 0), 1u);
    EXPECT_EQ(absolute_betti(t2, 1), 2u);
    EXPECT_EQ(absolute_betti(t2, 2), 1u);
    const CellComplex t3 = build_lattice(3, 3, Background::Torus);
    EXPECT_EQ(absolute_betti(t3, 1), 3u);
    EXPECT_EQ(absolute_betti(t3, 2), 3u);
    EXPECT_EQ(oracle_betti(t3, 1), 3u);
}

TEST(Homology, SphereBetti) {
    const CellComplex s = build_lattice(3, 2, Background::Sphere);
    EXPECT_EQ(absolute_betti(s, 0), 1u);
    EXPECT_EQ(absolute_betti(s, 1), 0u);
    EXPECT_EQ(absolute_betti(s, 2), 0u);
    EXPECT_EQ(absolute_betti(s, 3), 1u);
}

TEST(Homology, SurfaceCodeLogicalCounts) {
    // 2D and 3D surface codes with rough faces along the last axis
    EXPECT_EQ(logical_count(css_from_complex(build_lattice(2, 3, Background::OpenCube), 1)), 1u);
    EXPECT_EQ(logical_count(css_from_complex(build_lattice(3, 3, Background::OpenCube), 1)), 1u);
    EXPECT_EQ(logical_count(css_from_complex(build_lattice(2, 3, Background::Torus), 1)), 2u);
    EXPECT_EQ(logical_count(css_from_complex(build_lattice(3, 3, Background::Torus), 1)), 3u);
}

TEST(Homology, FractalLogicalCounts) {
    for (auto cl : {Cellulation::Primal, Cellulation::Adapted}) {
        FractalSpec f;
        f.cellulation = cl;
        EXPECT_EQ(k_of(f), 1u);  // fractal surface code, m-holes
        f.level = 2;
        EXPECT_EQ(k_of(f), 1u);
        f.uniform = HoleType::E;
        EXPECT_EQ(k_of(f), fractal_holes(3, 3, 1, 2, 1).size() + 1);  // 28
        FractalSpec t;
        t.background = Background::Torus;
        EXPECT_EQ(k_of(t), 3u);
        FractalSpec s;
        s.background = Background::Sphere;
        EXPECT_EQ(k_of(s), 0u);
        FractalSpec sc;
        sc.n = 2;
        sc.cellulation = cl;
        EXPECT_EQ(k_of(sc), 2u);  // 1 + one m-hole
        sc.level = 2;
        EXPECT_EQ(k_of(sc), 1u + fractal_holes(2, 3, 1, 2, 1).size());
    }
}

TEST(Homology, RelativeMatchesCodeCount) {
    FractalSpec f;
    f.level = 1;
    const CellComplex c = build_fractal(f);
    const BettiResult b = betti({c, 1, LabelSet::e_labels()});
    EXPECT_EQ(b.value, 1u);
    EXPECT_FALSE(b.reduced_caveat);
    EXPECT_EQ(cobetti({c, 1, LabelSet::e_labels()}).value, 1u);
    EXPECT_TRUE(betti({c, 0, LabelSet::e_labels()}).reduced_caveat);
}

TEST(Homology, LefschetzOnPrimalGeometries) {
    FractalSpec f;
    f.level = 1;
    const CellComplex open = build_fractal(f);
    auto r = verify_lefschetz(open, 1, LabelSet::e_labels(), LabelSet::m_labels());
    EXPECT_EQ(r.lhs, 1u);
    EXPECT_TRUE(r.equal);
    f.background = Background::Torus;
    r = verify_lefschetz(build_fractal(f), 1, LabelSet::e_labels(), LabelSet::m_labels());
    EXPECT_EQ(r.lhs, 3u);
    EXPECT_EQ(r.rhs, 3u);
}

TEST(Homology, LefschetzOnDeeperGeometries) {
    for (int level = 1; level <= 2; ++level)
        for (auto h : {HoleType::M, HoleType::E}) {
            FractalSpec f;
            f.level = level;
            f.uniform = h;
            const CellComplex c = build_fractal(f);
            const auto r = verify_lefschetz(c, 1, LabelSet::e_labels(), LabelSet::m_labels());
            EXPECT_TRUE(r.equal) << "level " << level << ": " << r.lhs << " vs " << r.rhs;
            EXPECT_EQ(r.lhs, logical_count(css_from_complex(c, 1)));
        }
    // the 2D carpet, every grading of a 4D torus
    FractalSpec sc;
    sc.n = 2;
    sc.level = 2;
    EXPECT_TRUE(verify_lefschetz(build_fractal(sc), 1, LabelSet::e_labels(), LabelSet::m_labels()).equal);
    sc.cellulation = Cellulation::Adapted;
    EXPECT_THROW(verify_lefschetz(build_fractal(sc), 1, LabelSet::e_labels(), LabelSet::m_labels()), ValidationError);
    const CellComplex t4 = build_lattice(4, 2, Background::Torus);
    for (int i = 1; i <= 3; ++i) EXPECT_TRUE(verify_lefschetz(t4, i, LabelSet::e_labels(), LabelSet::m_labels()).equal);
}

TEST(Homology, LefschetzRejectsOverlappingSets) {
    const CellComplex c = build_lattice(3, 2, Background::OpenCube);
    EXPECT_THROW(verify_lefschetz(c, 1, LabelSet::all_boundary(), LabelSet::m_labels()), ValidationError);
}

TEST(Homology, MixedSelectionRejected) {
    const CellComplex c = build_lattice(2, 2, Background::OpenCube);
    // smooth face cells without their rough corners: neither closed nor open
    EXPECT_THROW(betti({c, 1, LabelSet::kinds({LabelKind::OuterM})}), ValidationError);
    EXPECT_THROW(betti({c, 1, LabelSet::kinds({LabelKind::Bulk, LabelKind::OuterM})}), ValidationError);
    // the interior alone is open
    EXPECT_NO_THROW(betti({c, 1, LabelSet::kinds({LabelKind::Bulk})}));
}

// ---- randomized properties ------------------------------------------------

TEST(HomologyProperty, BettiEqualsCobettiAndOracle) {
    std::mt19937_64 rng(kSeed);
    for (int t = 0; t < 200; ++t) {
        FractalSpec f;
        f.n = 2 + static_cast<int>(rng() % 2);
        f.p = 3;
        f.q = 1;
        f.level = f.n == 2 ? 1 + static_cast<int>(rng() % 2) : 1;
        f.unit = 1 + static_cast<int>(rng() % 2);
        f.cellulation = rng() % 2 ? Cellulation::Adapted : Cellulation::Primal;
        f.background = static_cast<Background>(rng() % 3);
        f.i = 1 + static_cast<int>(rng() % static_cast<unsigned>(f.n - 1));
        const auto nh = fractal_holes(f.n, f.p, f.q, f.level, f.unit).size();
        for (std::size_t h = 0; h < nh; ++h) f.assignment.push_back(rng() % 2 ? HoleType::E : HoleType::M);
        const CellComplex c = build_fractal(f);
        for (int k = 0; k <= c.dim(); ++k) {
            const std::size_t b = absolute_betti(c, k);
            ASSERT_EQ(b, oracle_betti(c, k)) << "instance " << t << " grade " << k;
        }
        const HomologyRequest req{c, f.i, LabelSet::e_labels()};
        const std::size_t rel = betti(req).value;
        ASSERT_EQ(rel, cobetti(req).value) << "instance " << t;
        const CssCode code = css_from_complex(c, f.i);
        ASSERT_EQ(rel, oracle::logical_count(code)) << "instance " << t;
        ASSERT_NO_THROW(code_params(code, true));
    }
}

TEST(HomologyProperty, EulerCharacteristicFromBetti) {
    std::mt19937_64 rng(kSeed + 1);
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const int L = 1 + static_cast<int>(rng() % 3);
        const auto bg = static_cast<Background>(rng() % 3);
        const CellComplex c = build_lattice(n, L, bg);
        long long alt = 0;
        for (int k = 0; k <= n; ++k) alt += (k % 2 ? -1 : 1) * static_cast<long long>(absolute_betti(c, k));
        ASSERT_EQ(alt, c.euler_characteristic()) << "instance " << t;
    }
}
