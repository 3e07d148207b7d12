#include "doctest.h"

#include <random>

#include "collage/errors.hpp"
#include "collage/monoid.hpp"
#include "oracles.hpp"

using namespace collage;

namespace {

AffineFunction fn(std::initializer_list<int> slope, Rational c) {
    IVec s;
    for (int x : slope) s.push_back(x);
    return {std::move(s), std::move(c)};
}

/// Independent answer for sup_Delta F <= 0 through Fourier-Motzkin: the
/// system "Delta and F > 0" must be infeasible.
bool nonpositive_on(const Polyhedron& p, const AffineFunction& f) {
    std::vector<oracles::LinIneq> sys = oracles::to_system(p.inequalities());
    sys.push_back({to_rational(scale(f.slope, Int(-1))), -f.constant, true});
    return !oracles::fm_feasible(std::move(sys), p.ambient_dim());
}

} // namespace

TEST_CASE("hilbert basis: fixed cones") {
    SUBCASE("first quadrant") {
        Cone c = Cone::from_generators({{Int(1), Int(0)}, {Int(0), Int(1)}}, {}, 2);
        CHECK(hilbert_basis(c) == IMat{{Int(0), Int(1)}, {Int(1), Int(0)}});
    }
    SUBCASE("cone over (1,0),(1,2) needs the interior point (1,1)") {
        Cone c = Cone::from_generators({{Int(1), Int(0)}, {Int(1), Int(2)}}, {}, 2);
        CHECK(hilbert_basis(c) ==
              IMat{{Int(1), Int(0)}, {Int(1), Int(1)}, {Int(1), Int(2)}});
    }
    SUBCASE("trivial cone") {
        Cone c = Cone::from_generators({}, {}, 2);
        CHECK(hilbert_basis(c).empty());
    }
}

TEST_CASE("hilbert basis elements generate the cone monoid") {
    // 3d cone with a non-unimodular simplicial part.
    Cone c = Cone::from_generators(
        {{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(1), Int(1), Int(2)}}, {}, 3);
    IMat hb = hilbert_basis(c);
    auto zero = [](const IVec& w) {
        return std::all_of(w.begin(), w.end(), [](const Int& t) { return t == 0; });
    };
    for (Int x = -3; x <= 3; ++x)
        for (Int y = -3; y <= 3; ++y)
            for (Int z = -3; z <= 3; ++z) {
                IVec v{x, y, z};
                if (!c.contains(v)) continue;
                // Strip off basis elements greedily; success iff we reach 0.
                IVec rest = v;
                bool progress = true;
                while (!zero(rest) && progress) {
                    progress = false;
                    for (const auto& h : hb) {
                        IVec next = sub(rest, h);
                        if (c.contains(next)) {
                            rest = next;
                            progress = true;
                            break;
                        }
                    }
                }
                CHECK(zero(rest));
            }
}

TEST_CASE("bounded affine monoid: fixed cases") {
    SUBCASE("unit interval") {
        BoundedAffineMonoid m = bounded_affine_monoid(interval(0, 1));
        CHECK(m.bounded_slopes.lineality() == IMat{{Int(1)}});
        CHECK(m.nonpositive_generators ==
              std::vector<AffineFunction>{fn({-1}, 0), fn({1}, -1)});
        CHECK(m.module_generators ==
              std::vector<AffineFunction>{fn({-1}, 0), fn({1}, -1)});
    }
    SUBCASE("half line: only nonpositive slopes are bounded above") {
        Polyhedron half = canonicalize({fn({-1}, 0)}, 1);
        BoundedAffineMonoid m = bounded_affine_monoid(half);
        CHECK(m.bounded_slopes.rays() == IMat{{Int(-1)}});
        CHECK(m.module_generators == std::vector<AffineFunction>{fn({-1}, 0)});
        CHECK(m.nonpositive_generators == std::vector<AffineFunction>{fn({-1}, 0)});
    }
    SUBCASE("single point") {
        BoundedAffineMonoid m = bounded_affine_monoid(single_point({Rational(0)}));
        CHECK(m.bounded_slopes.lineality() == IMat{{Int(1)}});
        CHECK(m.nonpositive_generators ==
              std::vector<AffineFunction>{fn({-1}, 0), fn({1}, 0)});
    }
    SUBCASE("lineality is rejected") {
        Polyhedron halfplane = canonicalize({fn({0, -1}, 0)}, 2);
        CHECK_THROWS_AS(bounded_affine_monoid(halfplane), NotStronglyConvex);
    }
}

TEST_CASE("generation window oracle on the unit interval") {
    // Over the window |m| <= 5, c in (1/4)Z intersect [-5, 5]:
    // F in Aff+ iff F is generated from the output over H^o.
    Polyhedron seg = interval(0, 1);
    BoundedAffineMonoid mon = bounded_affine_monoid(seg);
    for (int m = -5; m <= 5; ++m) {
        for (int c4 = -20; c4 <= 20; ++c4) {
            AffineFunction f{IVec{Int(m)}, Rational(c4, 4)};
            bool in_monoid = nonpositive_on(seg, f);
            bool generated =
                oracles::generated_over_nonpositive(f, mon.nonpositive_generators, 12);
            CHECK(in_monoid == generated);
        }
    }
}

TEST_CASE("saturation: k*F nonpositive implies F generated") {
    Polyhedron tri = canonicalize({fn({-1, 0}, 0), fn({0, -1}, 0), fn({1, 1}, -1)}, 2);
    BoundedAffineMonoid mon = bounded_affine_monoid(tri);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int t = 0; t < 120; ++t) {
        AffineFunction f{IVec{Int(d(rng)), Int(d(rng))}, Rational(d(rng), 2)};
        for (int k = 2; k <= 3; ++k) {
            if (nonpositive_on(tri, f.scaled(k))) {
                CHECK(nonpositive_on(tri, f));
                CHECK(oracles::generated_over_nonpositive(
                    f, mon.nonpositive_generators, 14));
            }
        }
    }
}

TEST_CASE("convergence polyhedron: fixed cases") {
    CHECK(convergence_polyhedron({fn({-1}, 0), fn({1}, -1)}, 1) == interval(0, 1));
    CHECK(convergence_polyhedron({fn({-1}, 0)}, 1) == canonicalize({fn({-1}, 0)}, 1));
    CHECK_THROWS_AS(convergence_polyhedron({fn({0}, 1)}, 1), EmptyPolyhedron);
}

TEST_CASE("duality roundtrip on shapes with non-simplicial normal fans") {
    std::vector<Polyhedron> shapes;
    shapes.push_back(canonicalize({fn({-1, 0}, 0), fn({0, -1}, 0), fn({1, 1}, -1)}, 2));
    shapes.push_back(canonicalize({fn({-1, 0, 0}, 0), fn({0, -1, 0}, 0),
                                   fn({0, 0, -1}, 0), fn({1, 1, 1}, -1)},
                                  3));
    shapes.push_back(canonicalize({fn({-1, 0}, 0), fn({0, -1}, 0), fn({1, 2}, -4),
                                   fn({2, 1}, -4)},
                                  2));
    // Truncated cone: unbounded with a slanted facet.
    shapes.push_back(canonicalize({fn({-1, 0}, 0), fn({0, -1}, 0), fn({-1, -1}, 1)}, 2));
    for (const auto& p : shapes) {
        BoundedAffineMonoid mon = bounded_affine_monoid(p);
        CHECK(convergence_polyhedron(mon.nonpositive_generators, p.ambient_dim()) == p);
    }
}

TEST_CASE("duality roundtrip over random boxes") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> num(-40, 40);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> dims(1, 3);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = dims(rng);
        QVec lo(n), hi(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rational a(num(rng), den(rng)), b(num(rng), den(rng));
            lo[i] = std::min(a, b);
            hi[i] = std::max(a, b) + 1;
        }
        Polyhedron p = box(lo, hi);
        BoundedAffineMonoid mon = bounded_affine_monoid(p);
        CHECK(convergence_polyhedron(mon.nonpositive_generators, n) == p);
        for (const auto& g : mon.nonpositive_generators) CHECK(*p.sup(g) == 0);
        for (const auto& g : mon.module_generators) CHECK(*p.sup(g) == 0);
    }
}

TEST_CASE("module generator differentials generate the bounded slope cone") {
    Polyhedron half = canonicalize({fn({-1, 0}, 0), fn({0, -1}, 0), fn({-1, -1}, 1)}, 2);
    BoundedAffineMonoid mon = bounded_affine_monoid(half);
    for (const auto& g : mon.module_generators)
        CHECK(mon.bounded_slopes.contains(g.slope));
    for (const auto& r : mon.bounded_slopes.rays()) {
        bool hit = false;
        for (const auto& g : mon.module_generators)
            if (primitive(g.slope) == r) hit = true;
        CHECK(hit);
    }
}
