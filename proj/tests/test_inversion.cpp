#include "corpus.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mcremona;

namespace {

const MonomialSet triangle = parse_monomials("x1*x2, x1*x3, x2*x3");
const MonomialSet pentagon = parse_monomials("x1*x2, x2*x3, x3*x4, x4*x5, x5*x1");
const MonomialSet loop3 = parse_monomials("x1^2, x1*x2, x2*x3");
const MonomialSet square4 = parse_monomials("x1*x2, x2*x3, x3*x4, x4*x1");

void expect_matches_brute_force(const MonomialSet& set, int max_entry) {
    const InversionData inv = invert(set);
    const auto brute = oracle::brute_force_inverses(set, max_entry);
    ASSERT_EQ(brute.size(), 1u) << render_monomials(set);
    EXPECT_EQ(inv.gamma, brute.front().gamma);
    EXPECT_EQ(inv.inverse_matrix, brute.front().inverse);
}

} // namespace

TEST(MinorGcd, Examples) {
    EXPECT_EQ(minor_gcd(log_matrix(parse_monomials("x1, x2"))), 1);
    EXPECT_EQ(minor_gcd(log_matrix(triangle)), 2);
    EXPECT_EQ(oracle::cofactor_det(log_matrix(triangle).entries), -2);
    EXPECT_EQ(minor_gcd(log_matrix(square4)), 0);
    EXPECT_EQ(oracle::cofactor_det(log_matrix(square4).entries), 0);
}

TEST(MinorGcd, OverdeterminedSets) {
    // Six quadrics in three variables: the triangle minor alone gives gcd 2.
    EXPECT_EQ(minor_gcd(log_matrix(parse_monomials("x1^2, x1*x2, x1*x3, x2^2, x2*x3, x3^2"))), 2);
    EXPECT_THROW(minor_gcd(log_matrix(parse_monomials("x1*x2", {"x1", "x2", "x3"}))), ContractError);
    EXPECT_THROW(minor_gcd(log_matrix(parse_monomials("x1^2, x2"))), ContractError);
}

TEST(IsCremona, Examples) {
    const BirationalityReport tri = is_cremona(triangle);
    EXPECT_TRUE(tri.is_cremona);
    EXPECT_EQ(tri.d, 2);
    EXPECT_FALSE(is_cremona(square4).is_cremona);
    const BirationalityReport id = is_cremona(parse_monomials("x1, x2, x3"));
    EXPECT_TRUE(id.is_cremona);
    EXPECT_EQ(id.d, 1);
    EXPECT_THROW(is_cremona(parse_monomials("x1*x2, x1*x3")), ContractError);
    EXPECT_THROW(is_cremona(parse_monomials("x1^2, x2")), ContractError);
}

TEST(Invert, TriangleIsItsOwnInverse) {
    const InversionData inv = invert(triangle);
    EXPECT_EQ(inv.inverse_matrix, log_matrix(triangle).entries);
    EXPECT_EQ(inv.gamma, (ExponentVector{1, 1, 1}));
    EXPECT_EQ(inv.delta, 2);
    expect_matches_brute_force(triangle, 3);
}

TEST(Invert, Pentagon) {
    const InversionData inv = invert(pentagon);
    EXPECT_EQ(inv.delta, 3);
    EXPECT_EQ(inv.gamma, (ExponentVector{1, 1, 1, 1, 1}));
    const MonomialSet inverse = inv.inverse_set(pentagon.variables());
    // Rows of the inverse index F's monomials; as monomials in the same names
    // the first inverse coordinate is y1*y3*y5.
    EXPECT_EQ(inverse[0], (ExponentVector{1, 0, 1, 0, 1}));
    EXPECT_EQ(render_monomial(inverse[0], pentagon.variables()), "x1*x3*x5");
    expect_matches_brute_force(pentagon, 2);
}

TEST(Invert, LoopCase) {
    const InversionData inv = invert(loop3);
    EXPECT_EQ(inv.inverse_matrix, IntMatrix::from_columns(std::vector<IntVector>{{1, 1, 0}, {0, 2, 0}, {1, 0, 1}}, 3));
    EXPECT_EQ(inv.gamma, (ExponentVector{2, 1, 0}));
    EXPECT_EQ(inv.delta, 2);
    const MonomialSet inverse = inv.inverse_set(loop3.variables());
    EXPECT_EQ(render_monomials(inverse), render_monomials(parse_monomials("x1*x2, x2^2, x1*x3")));
    expect_matches_brute_force(loop3, 3);
}

TEST(Invert, TreeAttachments) {
    const MonomialSet pend = parse_monomials("x1*x2, x2*x3, x1*x3, x3*x4");
    const InversionData a = invert(pend);
    EXPECT_EQ(a.gamma, (ExponentVector{1, 1, 1, 0}));
    EXPECT_EQ(a.inverse_matrix,
              IntMatrix::from_columns(std::vector<IntVector>{{1, 0, 1, 0}, {1, 1, 0, 0}, {0, 1, 1, 0}, {1, 0, 0, 1}}, 4));
    expect_matches_brute_force(pend, 3);

    const MonomialSet path = parse_monomials("x1*x2, x2*x3, x1*x3, x3*x4, x4*x5");
    const InversionData b = invert(path);
    EXPECT_EQ(b.gamma, (ExponentVector{1, 1, 2, 1, 0}));
    EXPECT_EQ(b.delta, 3);
    EXPECT_EQ(b.inverse_matrix,
              IntMatrix::from_columns(std::vector<IntVector>{{1, 0, 1, 1, 0},
                                                             {1, 1, 0, 1, 0},
                                                             {0, 1, 1, 1, 0},
                                                             {1, 0, 0, 2, 0},
                                                             {0, 1, 1, 0, 1}},
                                      5));
    expect_matches_brute_force(path, 2);
}

TEST(Invert, RejectsNonCremona) {
    EXPECT_THROW(invert(square4), ContractError);
    EXPECT_THROW(invert(parse_monomials("x1^2, x2^2")), ContractError);
}

TEST(Invert, HigherDegreeAgainstBruteForce) {
    // Degree 3: |det| = 3 with the canonical restrictions.
    const MonomialSet cubic = parse_monomials("x3^3, x2*x3^2, x1*x2^2");
    ASSERT_TRUE(is_cremona(cubic).is_cremona) << determinant(log_matrix(cubic).entries);
    expect_matches_brute_force(cubic, 4);
}

TEST(Verify, Examples) {
    InversionData inv = invert(triangle);
    EXPECT_TRUE(verify_inversion(triangle, inv));
    EXPECT_TRUE(verify_inversion(pentagon, invert(pentagon)));
    inv.gamma = {0, 0, 0};
    EXPECT_FALSE(verify_inversion(triangle, inv));
    EXPECT_FALSE(verify_by_substitution(triangle, inv));
}

TEST(Factor, Rendering) {
    EXPECT_EQ(inversion_factor(invert(triangle), triangle.variables()), "x1*x2*x3");
    EXPECT_EQ(inversion_factor(invert(loop3), loop3.variables()), "x1^2*x2");
    const MonomialSet perm = parse_monomials("x2, x3, x1");
    EXPECT_EQ(inversion_factor(invert(perm), perm.variables()), "1");
}

TEST(Properties, DegreeOnePermutationsInvertByTranspose) {
    std::mt19937_64 rng(2);
    for (std::size_t n = 2; n <= 7; ++n) {
        std::vector<std::size_t> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        std::vector<ExponentVector> cols;
        for (std::size_t j = 0; j < n; ++j) {
            ExponentVector v(n);
            v[p[j]] = 1;
            cols.push_back(v);
        }
        const MonomialSet set = MonomialSet::with_default_names(cols);
        const InversionData inv = invert(set);
        EXPECT_EQ(inv.inverse_matrix, log_matrix(set).entries.transpose());
        EXPECT_EQ(inv.delta, 1);
        EXPECT_EQ(total_degree(inv.gamma), 0);
    }
}

TEST(Properties, CorpusGroupLawAndDegreeRelation) {
    for (const auto& inst : corpus::shared()) {
        const InversionData inv = invert(inst.set);
        EXPECT_EQ(total_degree(inv.gamma) + 1, 2 * inv.delta);
        EXPECT_EQ(minor_gcd(log_matrix(inst.set)), 2);
        const MonomialSet inverse = inv.inverse_set(inst.set.variables());
        const InversionData back = invert(inverse);
        EXPECT_TRUE(equivalent_up_to_permutation(back.inverse_matrix, log_matrix(inst.set).entries));
        EXPECT_EQ(back.inverse_matrix, log_matrix(inst.set).entries);
        EXPECT_TRUE(verify_inversion(inst.set, inv));
    }
}

TEST(Properties, SmallCorpusAgainstBruteForce) {
    for (const auto& inst : corpus::shared())
        if (inst.n <= 4)
            expect_matches_brute_force(inst.set, 2);
}
