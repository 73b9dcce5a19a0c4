#include <gtest/gtest.h>

#include "mvol/linalg.hpp"
#include "mvol/rational.hpp"

using namespace mvol;

TEST(Rational, ParsesCanonicalForms) {
    EXPECT_EQ(parse_rational("3/2"), Rational(3, 2));
    EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(parse_rational("-0"), Rational(0));
    EXPECT_EQ(to_string(parse_rational("10/5")), "2");
    EXPECT_EQ(to_string(parse_rational("-4/6")), "-2/3");
}

TEST(Rational, CanonicalFormInvariant) {
    const Rational r = parse_rational("-84/36");
    EXPECT_GT(r.get_den(), 0);
    Integer g;
    mpz_gcd(g.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    EXPECT_EQ(g, 1);
}

TEST(Rational, RejectsMalformed) {
    for (const char* bad : {"", "1/0", "1.5", "+3", "a", "1/", "/2", "1/-2", "--1", " 1"})
        EXPECT_THROW(parse_rational(bad), ParseError) << bad;
}

TEST(Rational, HandlesBigValues) {
    const Rational big = parse_rational("123456789012345678901234567890/3");
    EXPECT_EQ(to_string(big), "41152263004115226300411522630");
}

TEST(Linalg, RankAndDeterminant) {
    Matrix a = {{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
    EXPECT_EQ(rank(a), 1u);
    EXPECT_EQ(determinant(a), 0);
    Matrix b = {{Rational(2), Rational(0)}, {Rational(1), Rational(3)}};
    EXPECT_EQ(determinant(b), 6);
    DenseMatrix<Integer> c = {{Integer(0), Integer(1), Integer(2)}, {Integer(3), Integer(4), Integer(5)},
                              {Integer(6), Integer(7), Integer(9)}};
    EXPECT_EQ(determinant_bareiss(c), -3);
}

TEST(Linalg, NullSpaceAnnihilates) {
    Matrix a = {{Rational(1), Rational(2), Rational(3), Rational(4)},
                {Rational(0), Rational(1, 2), Rational(-1), Rational(2)}};
    Matrix k = null_space(a, 4);
    ASSERT_EQ(k.size(), 4u);
    ASSERT_EQ(k[0].size(), 2u);
    Matrix prod = multiply(a, k);
    for (const auto& row : prod)
        for (const auto& x : row) EXPECT_EQ(x, 0);
    EXPECT_EQ(rank(k), 2u);
}

TEST(Linalg, SolveSquare) {
    Matrix a = {{Rational(2), Rational(1)}, {Rational(1), Rational(3)}};
    auto x = solve_square(a, {Rational(3), Rational(5)});
    ASSERT_TRUE(x);
    EXPECT_EQ((*x)[0], Rational(4, 5));
    EXPECT_EQ((*x)[1], Rational(7, 5));
    Matrix s = {{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
    EXPECT_FALSE(solve_square(s, {Rational(1), Rational(1)}));
}
