#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fcss/error.hpp"
#include "fcss/gf2.hpp"
#include "oracle.hpp"

using namespace fcss;

namespace {

constexpr std::uint64_t kSeed = 20261016;
constexpr int kInstances = 240;

Gf2Matrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
    const std::size_t cols = rows.begin()->size();
    Gf2Matrix m(rows.size(), cols);
    std::size_t r = 0;
    for (const auto& row : rows) {
        std::size_t c = 0;
        for (int v : row) m.set(r, c++, v != 0);
        ++r;
    }
    return m;
}

}  // namespace

TEST(Gf2, IdentityRank) {
    EXPECT_EQ(rank(Gf2Matrix::identity(70)), 70u);
    EXPECT_TRUE(kernel_basis(Gf2Matrix::identity(5)).empty());
}

TEST(Gf2, SmallRankAndKernel) {
    // third row is the sum of the first two
    const Gf2Matrix m = from_rows({{1, 1, 0, 1}, {0, 1, 1, 0}, {1, 0, 1, 1}});
    EXPECT_EQ(rank(m), 2u);
    const auto ker = kernel_basis(m);
    ASSERT_EQ(ker.size(), 2u);
    for (const auto& v : ker) EXPECT_FALSE(m.mul(v).any());
}

TEST(Gf2, SolveInconsistent) {
    const Gf2Matrix m = from_rows({{1, 0}, {1, 0}});
    Gf2Vector b(2);
    b.set(0);
    EXPECT_FALSE(solve(m, b).has_value());
    b.set(1);
    auto x = solve(m, b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(m.mul(*x), b);
}

TEST(Gf2, ZeroSizeMatrices) {
    EXPECT_EQ(rank(Gf2Matrix(0, 5)), 0u);
    EXPECT_EQ(rank(Gf2Matrix(4, 0)), 0u);
    EXPECT_EQ(kernel_basis(Gf2Matrix(0, 3)).size(), 3u);
}

TEST(Gf2, QuotientDimAndContainment) {
    const Gf2Matrix space = from_rows({{1, 0, 0}, {0, 1, 0}});
    const Gf2Matrix sub = from_rows({{1, 1, 0}});
    EXPECT_EQ(quotient_dim(space, sub), 1u);
    const Gf2Matrix outside = from_rows({{0, 0, 1}});
    try {
        quotient_dim(space, outside);
        FAIL() << "expected containment error";
    } catch (const ContainmentError& e) {
        EXPECT_EQ(e.witness(), 0u);
    }
}

TEST(Gf2, MatrixRoundTrip) {
    std::mt19937_64 rng(kSeed);
    const Gf2Matrix m = oracle::random_matrix(rng, 7, 131, 0.3);
    std::stringstream ss;
    write_matrix(ss, m);
    EXPECT_EQ(ss.str().rfind("gf2matrix v1", 0), 0u);
    EXPECT_EQ(read_matrix(ss), m);
}

TEST(Gf2, ReadRejectsGarbage) {
    std::stringstream ss("gf2matrix v1\n2 3\n101\n1x1\n");
    EXPECT_THROW(read_matrix(ss), ValidationError);
}

TEST(Gf2, VectorOps) {
    Gf2Vector a(130), b(130);
    a.set(3);
    a.set(129);
    b.set(129);
    b.set(64);
    EXPECT_EQ(a.weight(), 2u);
    EXPECT_EQ(a.overlap(b), 1u);
    EXPECT_TRUE(a.dot(b));
    EXPECT_EQ((a ^ b).support(), (std::vector<std::uint32_t>{3, 64}));
    EXPECT_EQ(a.first(), 3u);
    EXPECT_EQ(Gf2Vector(10).first(), 10u);
}

// ---- randomized properties ------------------------------------------------

TEST(Gf2Property, RankMatchesOracleAndTranspose) {
    std::mt19937_64 rng(kSeed);
    std::uniform_int_distribution<std::size_t> dim(1, 90);
    std::uniform_real_distribution<double> dens(0.02, 0.6);
    for (int t = 0; t < kInstances; ++t) {
        const Gf2Matrix m = oracle::random_matrix(rng, dim(rng), dim(rng), dens(rng));
        const std::size_t r = rank(m);
        ASSERT_EQ(r, oracle::rank(oracle::to_dense(m))) << "instance " << t;
        ASSERT_EQ(r, rank(m.transpose())) << "instance " << t;
    }
}

TEST(Gf2Property, RankNullity) {
    std::mt19937_64 rng(kSeed + 1);
    std::uniform_int_distribution<std::size_t> dim(1, 80);
    for (int t = 0; t < kInstances; ++t) {
        const Gf2Matrix m = oracle::random_matrix(rng, dim(rng), dim(rng), 0.25);
        const auto ker = kernel_basis(m);
        ASSERT_EQ(ker.size() + rank(m), m.cols()) << "instance " << t;
        for (const auto& v : ker) ASSERT_FALSE(m.mul(v).any());
        // kernel vectors are independent
        ASSERT_EQ(rank(Gf2Matrix::from_rows(ker, m.cols())), ker.size());
    }
}

TEST(Gf2Property, SolveConsistentSystems) {
    std::mt19937_64 rng(kSeed + 2);
    std::uniform_int_distribution<std::size_t> dim(1, 70);
    for (int t = 0; t < kInstances; ++t) {
        const Gf2Matrix m = oracle::random_matrix(rng, dim(rng), dim(rng), 0.3);
        Gf2Vector x(m.cols());
        for (std::size_t i = 0; i < x.size(); ++i)
            if (rng() & 1U) x.set(i);
        const Gf2Vector b = m.mul(x);
        const auto y = solve(m, b);
        ASSERT_TRUE(y.has_value()) << "instance " << t;
        ASSERT_EQ(m.mul(*y), b);
        // a random right-hand side is solvable iff it lies in the column space
        Gf2Vector c(m.rows());
        for (std::size_t i = 0; i < c.size(); ++i)
            if (rng() & 1U) c.set(i);
        oracle::Dense cols = oracle::transpose(oracle::to_dense(m), m.cols());
        oracle::Bits cb(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) cb[i] = c.get(i);
        ASSERT_EQ(solve(m, c).has_value(), oracle::in_span(cols, cb)) << "instance " << t;
    }
}

TEST(Gf2Property, RowSpaceMembership) {
    std::mt19937_64 rng(kSeed + 3);
    std::uniform_int_distribution<std::size_t> dim(1, 60);
    for (int t = 0; t < kInstances; ++t) {
        const Gf2Matrix m = oracle::random_matrix(rng, dim(rng), dim(rng), 0.2);
        RowSpace rs(m.cols());
        rs.add_rows(m);
        ASSERT_EQ(rs.rank(), rank(m));
        Gf2Vector combo(m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (rng() & 1U) combo ^= m.row(r);
        ASSERT_TRUE(rs.contains(combo));
        ASSERT_FALSE(rs.reduce(combo).any());
        Gf2Vector v(m.cols());
        v.set(rng() % m.cols());
        oracle::Bits vb(m.cols(), 0);
        vb[v.first()] = 1;
        ASSERT_EQ(rs.contains(v), oracle::in_span(oracle::to_dense(m), vb));
    }
}

TEST(Gf2Property, EchelonPivotsAreUnitColumns) {
    std::mt19937_64 rng(kSeed + 4);
    for (int t = 0; t < kInstances; ++t) {
        const Gf2Matrix m = oracle::random_matrix(rng, 1 + rng() % 40, 1 + rng() % 70, 0.3);
        const Echelon e = reduced_echelon(m);
        ASSERT_EQ(e.pivots.size(), rank(m));
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            for (std::size_t s = 0; s < e.rref.rows(); ++s) ASSERT_EQ(e.rref.get(s, e.pivots[r]), r == s);
    }
}
