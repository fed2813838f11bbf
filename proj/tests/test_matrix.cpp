#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mcremona;

TEST(Matrix, DeterminantMatchesCofactorExpansion) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + trial % 5;
        const IntMatrix m = oracle::random_matrix(rng, n, -4, 4);
        EXPECT_EQ(determinant(m), oracle::cofactor_det(m)) << m;
    }
}

TEST(Matrix, AdjugateTimesMatrixIsDeterminantTimesIdentity) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 5;
        const IntMatrix m = oracle::random_matrix(rng, n, -3, 3);
        const AdjugateResult adj = adjugate(m);
        const Integer det = oracle::cofactor_det(m);
        EXPECT_EQ(adj.det, det);
        if (det == 0)
            continue;
        IntMatrix expected(n, n);
        for (std::size_t i = 0; i < n; ++i)
            expected(i, i) = det;
        EXPECT_EQ(m * adj.adjugate, expected);
        EXPECT_EQ(adj.adjugate * m, expected);
    }
}

TEST(Matrix, RankOfSmallCases) {
    EXPECT_EQ(rank(IntMatrix::identity(4)), 4u);
    EXPECT_EQ(rank(IntMatrix{{1, 2}, {2, 4}}), 1u);
    EXPECT_EQ(rank(IntMatrix(3, 3)), 0u);
    // Even 4-cycle incidence matrix: rank 3.
    EXPECT_EQ(rank(IntMatrix{{1, 0, 0, 1}, {1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}}), 3u);
}

TEST(Matrix, RankAgreesWithNonzeroDeterminant) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + trial % 4;
        const IntMatrix m = oracle::random_matrix(rng, n, 0, 2);
        EXPECT_EQ(rank(m) == n, oracle::cofactor_det(m) != 0);
    }
}

TEST(Matrix, PermutedAndTranspose) {
    const IntMatrix m{{1, 2, 3}, {4, 5, 6}};
    const std::vector<std::size_t> rows{1, 0}, cols{2, 0, 1};
    const IntMatrix p = m.permuted(rows, cols);
    EXPECT_EQ(p, (IntMatrix{{6, 4, 5}, {3, 1, 2}}));
    EXPECT_EQ(m.transpose(), (IntMatrix{{1, 4}, {2, 5}, {3, 6}}));
}

TEST(Matrix, BigIntegersStayExact) {
    IntMatrix m{{1, 0}, {0, 1}};
    m(0, 0) = Integer("123456789012345678901234567890");
    m(1, 1) = Integer("987654321098765432109876543210");
    EXPECT_EQ(determinant(m), m(0, 0) * m(1, 1));
}
