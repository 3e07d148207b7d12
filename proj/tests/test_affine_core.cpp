#include "doctest.h"

#include <random>

#include "collage/affine.hpp"
#include "collage/errors.hpp"
#include "collage/linalg.hpp"

using namespace collage;

namespace {

IMat random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    IMat m(rows, IVec(cols));
    for (auto& row : m)
        for (auto& x : row) x = d(rng);
    return m;
}

bool is_diagonal(const IMat& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            if (i != j && m[i][j] != 0) return false;
    return true;
}

} // namespace

TEST_CASE("rational parsing and canonical form") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(to_string(Rational(-4, 8)) == "-1/2");
    CHECK(to_string(Rational(7)) == "7");
    CHECK(den(parse_rational("-2/4")) == 2);
    CHECK_THROWS_AS(parse_rational("1/0"), SyntaxError);
    CHECK_THROWS_AS(parse_rational("x"), SyntaxError);
}

TEST_CASE("evaluate: identity-like, -inf propagation, irrational linearity") {
    AffineFunction id{IVec{1}, Rational(0)};
    CHECK(evaluate(id, {ExtendedScalar(Rational(1, 2))}) == ExtendedScalar(Rational(1, 2)));
    CHECK(evaluate(id, {ExtendedScalar::neg_infinity()}).is_neg_infinity());

    IrrationalTable table;
    std::size_t alpha = table.declare("alpha", Rational(7, 5), Rational(3, 2));
    AffineFunction f{IVec{2, -3}, Rational(1)};
    ExtendedScalar val =
        evaluate(f, {ExtendedScalar(Rational(1, 2)), ExtendedScalar::generator(alpha)});
    CHECK(val.finite_part() == Rational(2));
    CHECK(val.coeff(alpha) == Rational(-3));
    CHECK(val.sign(table) < 0); // 2 - 3*alpha with alpha in (7/5, 3/2)
}

TEST_CASE("evaluate: mixed-sign infinite contributions are an error") {
    AffineFunction f{IVec{1, -1}, Rational(0)};
    EVec p{ExtendedScalar::neg_infinity(), ExtendedScalar::neg_infinity()};
    CHECK_THROWS_AS(evaluate(f, p), IndeterminateValue);
    // A lone negative slope against -inf would be +inf: also an error.
    AffineFunction g{IVec{-1}, Rational(0)};
    CHECK_THROWS_AS(evaluate(g, {ExtendedScalar::neg_infinity()}), IndeterminateValue);
}

TEST_CASE("evaluate is additive where defined") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int trial = 0; trial < 50; ++trial) {
        AffineFunction f{IVec{d(rng), d(rng), d(rng)}, Rational(d(rng), 7)};
        AffineFunction g{IVec{d(rng), d(rng), d(rng)}, Rational(d(rng), 5)};
        EVec p{ExtendedScalar(Rational(d(rng), 3)), ExtendedScalar(Rational(d(rng), 4)),
               ExtendedScalar(Rational(d(rng)))};
        CHECK(evaluate(f + g, p) == evaluate(f, p) + evaluate(g, p));
    }
}

TEST_CASE("smith normal form: fixed cases") {
    SUBCASE("identity") {
        SmithResult s = smith_normal_form(identity_matrix(2));
        CHECK(s.d == identity_matrix(2));
    }
    SUBCASE("diag(2,3) -> diag(1,6)") {
        IMat m{{Int(2), Int(0)}, {Int(0), Int(3)}};
        SmithResult s = smith_normal_form(m);
        CHECK(s.d == IMat{{Int(1), Int(0)}, {Int(0), Int(6)}});
        CHECK(matmul(matmul(s.u, m), s.v) == s.d);
        CHECK(abs(determinant(s.u)) == 1);
        CHECK(abs(determinant(s.v)) == 1);
    }
    SUBCASE("zero matrix") {
        IMat m{{Int(0)}};
        CHECK(smith_normal_form(m).d == m);
    }
}

TEST_CASE("smith normal form roundtrip on random matrices") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    for (int trial = 0; trial < 60; ++trial) {
        IMat m = random_matrix(rng, dim(rng), dim(rng), 50);
        SmithResult s = smith_normal_form(m);
        CHECK(matmul(matmul(s.u, m), s.v) == s.d);
        CHECK(is_diagonal(s.d));
        CHECK(abs(determinant(s.u)) == 1);
        CHECK(abs(determinant(s.v)) == 1);
        std::size_t k = std::min(s.d.size(), s.d.empty() ? 0 : s.d[0].size());
        for (std::size_t i = 0; i + 1 < k; ++i) {
            if (s.d[i][i] == 0) {
                CHECK(s.d[i + 1][i + 1] == 0);
            } else {
                CHECK(s.d[i + 1][i + 1] % s.d[i][i] == 0);
            }
        }
    }
}

TEST_CASE("solve_rational: fixed cases") {
    SUBCASE("identity system") {
        QMat a{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
        auto sol = solve_rational(a, {Rational(1), Rational(2)});
        REQUIRE(sol.has_value());
        CHECK(sol->point == QVec{Rational(1), Rational(2)});
        CHECK(sol->kernel.empty());
    }
    SUBCASE("line through origin") {
        QMat a{{Rational(1), Rational(1)}};
        auto sol = solve_rational(a, {Rational(0)});
        REQUIRE(sol.has_value());
        REQUIRE(sol->kernel.size() == 1);
        CHECK(sol->kernel[0][0] == -sol->kernel[0][1]);
        CHECK(dot(a[0], sol->point) == 0);
    }
    SUBCASE("inconsistent") {
        QMat a{{Rational(1)}, {Rational(1)}};
        CHECK(!solve_rational(a, {Rational(0), Rational(1)}).has_value());
    }
}

TEST_CASE("integer kernel is saturated") {
    IMat m{{Int(2), Int(0), Int(0)}, {Int(0), Int(2), Int(0)}};
    IMat k = integer_kernel(m, 3);
    REQUIRE(k.size() == 1);
    CHECK(k[0] == IVec{Int(0), Int(0), Int(1)});
}

TEST_CASE("pullback is contravariantly functorial") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int trial = 0; trial < 40; ++trial) {
        AffineMap f{random_matrix(rng, 2, 3, 4), {Rational(d(rng)), Rational(d(rng), 3)}};
        AffineMap g{random_matrix(rng, 2, 2, 4), {Rational(d(rng)), Rational(d(rng))}};
        AffineFunction h{IVec{d(rng), d(rng)}, Rational(d(rng), 2)};
        AffineMap gf = g.compose(f);
        CHECK(f.pullback(g.pullback(h)) == gf.pullback(h));
    }
}

TEST_CASE("unimodular inverse round trips") {
    AffineMap shear{IMat{{Int(1), Int(1)}, {Int(0), Int(1)}}, {Rational(1, 2), Rational(-3)}};
    AffineMap inv = shear.inverse();
    CHECK(shear.compose(inv) == AffineMap::identity(2));
    CHECK(inv.compose(shear) == AffineMap::identity(2));
    AffineMap notuni{IMat{{Int(2), Int(0)}, {Int(0), Int(1)}}, QVec(2, Rational(0))};
    CHECK_THROWS_AS(notuni.inverse(), RankDeficient);
}

TEST_CASE("quotient projection kills exactly the sublattice") {
    IMat basis{{Int(1), Int(1), Int(0)}};
    IMat proj = quotient_projection(basis, 3);
    REQUIRE(proj.size() == 2);
    for (const auto& row : proj) CHECK(dot(row, basis[0]) == 0);
    // Surjectivity onto Z^2: Smith form of the projection has unit pivots.
    SmithResult s = smith_normal_form(proj);
    CHECK(s.d[0][0] == 1);
    CHECK(s.d[1][1] == 1);
}

TEST_CASE("ambiguous irrational sign is a loud failure") {
    IrrationalTable table;
    std::size_t a = table.declare("alpha", Rational(-1), Rational(1));
    ExtendedScalar v = ExtendedScalar::generator(a);
    CHECK_THROWS_AS(v.sign(table), AmbiguousSign);
    CHECK((v + (-v)).sign(table) == 0); // exact zero detection needs no window
}
