#include "doctest.h"

#include <random>

#include "collage/collage.hpp"
#include "collage/errors.hpp"
#include "oracles.hpp"

using namespace collage;

namespace {

AffineFunction fn(std::initializer_list<int> slope, Rational c) {
    IVec s;
    for (int x : slope) s.push_back(x);
    return {std::move(s), std::move(c)};
}

/// Two charts [0,1/2] and [1/2,1] glued at the midpoint and wrapped around.
Collage circle() {
    return group_quotient_collage(1, {{Rational(1)}});
}

Region strip(Rational lo, Rational hi) {
    return region_of(interval(lo, hi));
}

/// Two copies of [-1,1] glued along [-1,0) and (0,1] by the identity: the
/// line with doubled origin.
Collage doubled_line() {
    Collage c;
    c.charts.push_back(interval(-1, 1));
    c.charts.push_back(interval(-1, 1));
    Gluing left;
    left.from = 0;
    left.to = 1;
    left.dom = make_region({{fn({-1}, -1), false}, {fn({1}, 0), true}}, 1); // [-1, 0)
    left.map = AffineMap::identity(1);
    left.cod = left.dom;
    c.gluings.push_back(left);
    Gluing right;
    right.from = 0;
    right.to = 1;
    right.dom = make_region({{fn({-1}, 0), true}, {fn({1}, -1), false}}, 1); // (0, 1]
    right.map = AffineMap::identity(1);
    right.cod = right.dom;
    c.gluings.push_back(right);
    return c;
}

} // namespace

TEST_CASE("validate: single chart is fine, broken gluing reported") {
    Collage single;
    single.charts.push_back(interval(0, 1));
    CHECK(validate(single).ok);

    // Wrap x -> x + 1 declared with the wrong target region.
    Collage broken;
    broken.charts.push_back(interval(0, 1));
    broken.charts.push_back(interval(1, 2));
    Gluing g;
    g.from = 0;
    g.to = 1;
    g.dom = region_of(single_point({Rational(1)}));
    g.map = AffineMap::translation_by({Rational(1)});
    g.cod = region_of(single_point({Rational(1)})); // map(dom) is {2}
    broken.gluings.push_back(g);
    ValidationReport rep = validate(broken);
    CHECK(!rep.ok);
    CHECK(rep.message.find("gluing #0") != std::string::npos);
}

TEST_CASE("validate: non-unimodular transition is rejected") {
    Collage c;
    c.charts.push_back(interval(0, 1));
    c.charts.push_back(interval(0, 2));
    Gluing g;
    g.from = 0;
    g.to = 1;
    g.dom = region_of(interval(0, 1));
    g.map = AffineMap{IMat{{Int(2)}}, {Rational(0)}};
    g.cod = region_of(interval(0, 2));
    c.gluings.push_back(g);
    CHECK(!validate(c).ok);
}

TEST_CASE("validate: circle collage passes, including the cocycle checks") {
    Collage c = circle();
    REQUIRE(c.charts.size() == 2);
    REQUIRE(c.gluings.size() == 2);
    CHECK(validate(c).ok);
}

TEST_CASE("validate: cocycle violation is caught on a triple overlap") {
    // Three copies of [0,1] glued cyclically at a shared vertex with
    // translations that fail to compose.
    Collage c;
    for (int i = 0; i < 3; ++i) c.charts.push_back(interval(0, 1));
    auto vertex_gluing = [&](std::size_t a, std::size_t b, Rational from, Rational to) {
        Gluing g;
        g.from = a;
        g.to = b;
        g.dom = region_of(single_point({from}));
        g.map = AffineMap::translation_by({to - from});
        g.cod = region_of(single_point({to}));
        return g;
    };
    c.gluings.push_back(vertex_gluing(0, 1, 0, 0));
    c.gluings.push_back(vertex_gluing(1, 2, 0, 0));
    c.gluings.push_back(vertex_gluing(0, 2, 0, 1)); // inconsistent with the route 0->1->2
    ValidationReport rep = validate(c);
    CHECK(!rep.ok);
    CHECK(rep.message.find("cocycle") != std::string::npos);
}

TEST_CASE("covering check: interval fixed cases") {
    Polyhedron base = interval(0, 2);
    CHECK(covering_check(base, {interval(0, 1), interval(1, 2)}).covered);

    auto gap = covering_check(base, {interval(0, 1), interval(Rational(3, 2), 2)});
    CHECK(!gap.covered);
    REQUIRE(gap.witness.has_value());
    // The witness is a rational point of the gap (1, 3/2).
    CHECK((*gap.witness)[0] > 1);
    CHECK((*gap.witness)[0] < Rational(3, 2));

    CHECK_THROWS_AS(covering_check(base, {interval(0, 3)}), NotSubPolyhedron);
}

TEST_CASE("covering check: unit square split into four half-grid squares") {
    Polyhedron base = box({Rational(0), Rational(0)}, {Rational(1), Rational(1)});
    std::vector<Polyhedron> quads;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            quads.push_back(box({Rational(i, 2), Rational(j, 2)},
                                {Rational(i + 1, 2), Rational(j + 1, 2)}));
    CHECK(covering_check(base, quads).covered);
    Decomposition d = common_refinement(base, quads);
    CHECK(d.cells.size() == 4);
}

TEST_CASE("covering check false verdicts carry exact witnesses") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> num(0, 8);
    for (int t = 0; t < 30; ++t) {
        Polyhedron base = box({Rational(0), Rational(0)}, {Rational(2), Rational(2)});
        std::vector<Polyhedron> pieces;
        for (int k = 0; k < 3; ++k) {
            Rational x0(num(rng), 4), y0(num(rng), 4);
            Rational w(num(rng) + 1, 4), h(num(rng) + 1, 4);
            Rational x1 = std::min(Rational(x0 + w), Rational(2));
            Rational y1 = std::min(Rational(y0 + h), Rational(2));
            pieces.push_back(box({x0, y0}, {x1, y1}));
        }
        auto res = covering_check(base, pieces);
        if (!res.covered) {
            REQUIRE(res.witness.has_value());
            for (const auto& p : pieces) CHECK(!p.contains(*res.witness));
            CHECK(base.contains(*res.witness));
        } else {
            // Spot-check with a rational grid of denominator 4.
            for (int i = 0; i <= 8; ++i)
                for (int j = 0; j <= 8; ++j) {
                    QVec pt{Rational(i, 4), Rational(j, 4)};
                    bool hit = false;
                    for (const auto& p : pieces) hit = hit || p.contains(pt);
                    CHECK(hit);
                }
        }
    }
}

TEST_CASE("common refinement: fixed cases") {
    Polyhedron base = interval(0, 2);
    Decomposition d = common_refinement(base, {interval(0, 1)});
    CHECK(d.cells.size() == 2);
    CHECK(common_refinement(interval(0, 1), {interval(0, 1)}).cells.size() == 1);

    Polyhedron sq = box({Rational(0), Rational(0)}, {Rational(1), Rational(1)});
    Polyhedron lower = canonicalize(
        {fn({-1, 0}, 0), fn({0, -1}, 0), fn({1, 0}, -1), fn({0, 1}, -1), fn({-1, 1}, 0)}, 2);
    Decomposition diag = common_refinement(sq, {lower});
    CHECK(diag.cells.size() == 2);
}

TEST_CASE("refines is a partial order on decompositions of the square") {
    Polyhedron sq = box({Rational(0), Rational(0)}, {Rational(1), Rational(1)});
    auto quarters = common_refinement(
        sq, {box({Rational(0), Rational(0)}, {Rational(1, 2), Rational(1, 2)})});
    Decomposition trivial{sq, {sq}};
    CHECK(refines(quarters, trivial));
    CHECK(!refines(trivial, quarters));
    CHECK(refines(quarters, quarters));
    CHECK(refines(trivial, trivial));

    Decomposition other{interval(0, 1), {interval(0, 1)}};
    CHECK_THROWS_AS(refines(trivial, other), BaseMismatch);
}

TEST_CASE("develop: circle embeddings and monodromy") {
    Collage c = circle();
    auto dev = develop(c, 0);
    REQUIRE(dev.size() == 2);
    // Both charts embed with translation 0 through the midpoint gluing.
    for (const auto& d : dev) {
        CHECK(d.embedding.matrix == identity_matrix(1));
        CHECK(d.embedding.translation == QVec{Rational(0)});
    }
    // The wrap loop is translation by the circumference.
    auto loops = fundamental_monodromy(c, 0);
    REQUIRE(loops.size() == 1);
    CHECK(loops[0].matrix == identity_matrix(1));
    CHECK((loops[0].translation == QVec{Rational(1)} ||
           loops[0].translation == QVec{Rational(-1)}));

    CHECK(monodromy(c, 0, {}) == AffineMap::identity(1));
}

TEST_CASE("monodromy of a back-and-forth shear loop is the identity") {
    Collage c;
    c.charts.push_back(box({Rational(0), Rational(0)}, {Rational(1), Rational(1)}));
    c.charts.push_back(box({Rational(0), Rational(0)}, {Rational(1), Rational(1)}));
    Gluing g;
    g.from = 0;
    g.to = 1;
    // Shared edge x = 0, glued by the shear (x, y) -> (x, x + y).
    g.dom = region_of(canonicalize({fn({1, 0}, 0), fn({-1, 0}, 0), fn({0, -1}, 0),
                                    fn({0, 1}, -1)},
                                   2));
    g.map = AffineMap{IMat{{Int(1), Int(0)}, {Int(1), Int(1)}}, {Rational(0), Rational(0)}};
    g.cod = map_region(g.dom, g.map);
    c.gluings.push_back(g);
    REQUIRE(validate(c).ok);
    AffineMap loop = monodromy(c, 0, {{0, false}, {0, true}});
    CHECK(loop == AffineMap::identity(2));
    CHECK_THROWS_AS(monodromy(c, 0, {{0, false}, {0, false}}), PathMismatch);
}

TEST_CASE("develop rejects disconnected collages") {
    Collage c;
    c.charts.push_back(interval(0, 1));
    c.charts.push_back(interval(2, 3));
    CHECK_THROWS_AS(develop(c, 0), DisconnectedChart);
}

TEST_CASE("overconvergent openness: interval cases") {
    Collage c;
    c.charts.push_back(interval(0, 2));

    OpenFamily closed_piece{{strip(0, 1)}};
    CHECK(!overconvergent_open_check(c, closed_piece));

    // [0, 1) as the supremum of an increasing family, given by a strict cut.
    OpenFamily half_open{{make_region({{fn({-1}, 0), false}, {fn({1}, -1), true}}, 1)}};
    CHECK(overconvergent_open_check(c, half_open));

    OpenFamily everything{{strip(0, 2)}};
    CHECK(overconvergent_open_check(c, everything));
}

TEST_CASE("overconvergent openness: deleted diagonal of the square") {
    Collage c;
    c.charts.push_back(box({Rational(0), Rational(0)}, {Rational(1), Rational(1)}));
    // Two open half-squares x < y and x > y: open.
    Region above = make_region({{fn({-1, 0}, 0), false}, {fn({0, -1}, 0), false},
                                {fn({1, 0}, -1), false}, {fn({0, 1}, -1), false},
                                {fn({1, -1}, 0), true}},
                               2);
    Region below = make_region({{fn({-1, 0}, 0), false}, {fn({0, -1}, 0), false},
                                {fn({1, 0}, -1), false}, {fn({0, 1}, -1), false},
                                {fn({-1, 1}, 0), true}},
                               2);
    CHECK(overconvergent_open_check(c, {{above, below}}));
    // The closed half is not open along the diagonal.
    Region above_c = region_of(canonicalize({fn({-1, 0}, 0), fn({0, -1}, 0), fn({1, 0}, -1),
                                             fn({0, 1}, -1), fn({1, -1}, 0)},
                                            2));
    CHECK(!overconvergent_open_check(c, {{above_c}}));
}

TEST_CASE("overconvergent openness respects gluings") {
    Collage c = circle();
    // U = the whole circle: stable and open.
    OpenFamily whole{{region_of(c.charts[0])}, {region_of(c.charts[1])}};
    CHECK(overconvergent_open_check(c, whole));
    // A piece around the midpoint present in only one chart: unstable.
    OpenFamily unstable{{region_of(*intersect(c.charts[0], interval(Rational(1, 4), 1)))},
                        {}};
    CHECK_THROWS_AS(overconvergent_open_check(c, unstable), NotGluingStable);
}

TEST_CASE("overconvergent openness at infinity") {
    Collage c;
    c.charts.push_back(canonicalize({fn({-1}, 0)}, 1)); // [0, inf)
    // (1, inf] is open: a strict cut whose closure escapes.
    OpenFamily tail{{make_region({{fn({-1}, 1), true}}, 1)}};
    CHECK(overconvergent_open_check(c, tail));
    // [1, inf] is not open at the finite edge.
    OpenFamily closed_tail{{make_region({{fn({-1}, 1), false}}, 1)}};
    CHECK(!overconvergent_open_check(c, closed_tail));
    // All finite points [0, inf) form an open subobject.
    OpenFamily finite_part{{region_of(c.charts[0])}};
    CHECK(overconvergent_open_check(c, finite_part));
}

TEST_CASE("neighborhood check: interval and square cases") {
    CHECK(neighborhood_check(interval(0, 3), interval(1, 2),
                             interval(Rational(1, 2), Rational(5, 2))));
    CHECK(!neighborhood_check(interval(0, 3), interval(1, 2), interval(1, 2)));

    Polyhedron sq = box({Rational(0), Rational(0)}, {Rational(1), Rational(1)});
    Polyhedron bottom = canonicalize({fn({-1, 0}, 0), fn({1, 0}, -1), fn({0, 1}, 0),
                                      fn({0, -1}, 0)},
                                     2);
    Polyhedron low = canonicalize({fn({-1, 0}, 0), fn({1, 0}, -1), fn({0, -1}, 0),
                                   fn({0, 1}, Rational(-1, 4))},
                                  2);
    CHECK(neighborhood_check(sq, bottom, low));
    CHECK(!neighborhood_check(sq, bottom, bottom));
    CHECK_THROWS_AS(
        neighborhood_check(sq, bottom, single_point({Rational(0), Rational(0)})),
        NotSubPolyhedron);
}

TEST_CASE("epsilon-ball sampling never contradicts a true openness verdict") {
    // For marked cells of a verified-open family, rational points within
    // 1/16 of a relative interior sample stay inside the union.
    Collage c;
    c.charts.push_back(interval(0, 2));
    Region u = make_region({{fn({-1}, 0), false}, {fn({1}, -1), true}}, 1); // [0,1)
    REQUIRE(overconvergent_open_check(c, {{u}}));
    QVec sample{Rational(1, 2)};
    for (int k = -4; k <= 4; ++k) {
        QVec probe{sample[0] + Rational(k, 64)};
        if (!c.charts[0].contains(probe)) continue;
        CHECK(u.contains(probe));
    }
}

TEST_CASE("separated: circle yes, doubled line no, single chart yes") {
    CHECK(separated_check(circle()));
    Collage d = doubled_line();
    REQUIRE(validate(d).ok);
    CHECK(!separated_check(d));
    Collage single;
    single.charts.push_back(interval(0, 1));
    CHECK(separated_check(single));
}

TEST_CASE("affine manifold: circle passes with the expected atlas") {
    Collage c = circle();
    ManifoldReport rep = affine_manifold_check(c);
    CHECK(rep.ok);
    REQUIRE(rep.atlas.size() == 2);
    // Monodromy lattice is Z.
    auto loops = fundamental_monodromy(c, 0);
    QMat translations;
    for (const auto& m : loops) translations.push_back(m.translation);
    CHECK(rational_lattice_equal(translations, {{Rational(1)}}));
}

TEST_CASE("affine manifold: failure modes") {
    Collage single;
    single.charts.push_back(interval(0, 1));
    ManifoldReport rep = affine_manifold_check(single);
    CHECK(!rep.ok); // boundary points have no open developed star

    Collage half;
    half.charts.push_back(canonicalize({fn({-1}, 0)}, 1));
    ManifoldReport rep2 = affine_manifold_check(half);
    CHECK(!rep2.ok);
    CHECK(rep2.reason.find("unbounded") != std::string::npos);

    // The doubled segment still has boundary at its outer endpoints.
    ManifoldReport rep3 = affine_manifold_check(doubled_line());
    CHECK(!rep3.ok);
    CHECK(rep3.reason.find("not open") != std::string::npos);
}

TEST_CASE("affine manifold: doubled circle is a non-Hausdorff manifold") {
    // Two copies of the circle glued along the complement of the point 1/4:
    // every point has an open developed star, yet the realization is not
    // Hausdorff.
    Collage one = circle();
    Collage c;
    c.charts = one.charts; // A = [0,1/2], B = [1/2,1]
    c.charts.push_back(one.charts[0]); // A'
    c.charts.push_back(one.charts[1]); // B'
    for (const Gluing& g : one.gluings) {
        c.gluings.push_back(g); // circle 1
        Gluing shifted = g;     // circle 2
        shifted.from += 2;
        shifted.to += 2;
        c.gluings.push_back(shifted);
    }
    auto identify = [&](std::size_t from, std::size_t to, Region dom) {
        Gluing g;
        g.from = from;
        g.to = to;
        g.dom = std::move(dom);
        g.map = AffineMap::identity(1);
        g.cod = g.dom;
        c.gluings.push_back(g);
    };
    // A ~ A' away from 1/4, in two strict pieces; B ~ B' everywhere.
    identify(0, 2, make_region({{fn({-1}, 0), false}, {fn({1}, Rational(-1, 4)), true}}, 1));
    identify(0, 2,
             make_region({{fn({-1}, Rational(1, 4)), true}, {fn({1}, Rational(-1, 2)), false}},
                         1));
    identify(1, 3, region_of(interval(Rational(1, 2), 1)));
    // Composite identifications across the copies, so the pairwise data is
    // atlas-complete.
    auto cross = [&](std::size_t from, std::size_t to, Rational at, Rational shift) {
        Gluing g;
        g.from = from;
        g.to = to;
        g.dom = region_of(single_point({at}));
        g.map = AffineMap::translation_by({shift});
        g.cod = region_of(single_point({at + shift}));
        c.gluings.push_back(g);
    };
    cross(0, 3, Rational(1, 2), Rational(0)); // A -> B' at the midpoint
    cross(0, 3, Rational(0), Rational(1));    // A -> B' around the wrap
    cross(1, 2, Rational(1, 2), Rational(0)); // B -> A' at the midpoint
    cross(1, 2, Rational(1), Rational(-1));   // B -> A' around the wrap
    REQUIRE(validate(c).ok);
    CHECK(affine_manifold_check(c).ok);
    CHECK(!separated_check(c));
}

TEST_CASE("group quotient collage: circles and tori") {
    SUBCASE("unit circle") {
        Collage c = group_quotient_collage(1, {{Rational(1)}});
        CHECK(validate(c).ok);
        CHECK(affine_manifold_check(c).ok);
        CHECK(separated_check(c));
    }
    SUBCASE("circumference 1/3") {
        Collage c = group_quotient_collage(1, {{Rational(1, 3)}});
        CHECK(validate(c).ok);
        CHECK(affine_manifold_check(c).ok);
        QMat translations;
        for (const auto& m : fundamental_monodromy(c, 0))
            translations.push_back(m.translation);
        CHECK(rational_lattice_equal(translations, {{Rational(1, 3)}}));
    }
    SUBCASE("standard 2-torus") {
        Collage c = group_quotient_collage(2, {{Rational(1), Rational(0)},
                                               {Rational(0), Rational(1)}});
        CHECK(validate(c).ok);
        CHECK(affine_manifold_check(c).ok);
        CHECK(separated_check(c));
        QMat translations;
        for (const auto& m : fundamental_monodromy(c, 0)) {
            CHECK(m.matrix == identity_matrix(2));
            translations.push_back(m.translation);
        }
        CHECK(rational_lattice_equal(
            translations, {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}));
    }
    SUBCASE("rank condition") {
        CHECK_THROWS_AS(group_quotient_collage(2, {{Rational(1), Rational(0)}}),
                        RankDeficient);
        CHECK_THROWS_AS(group_quotient_collage(
                            2, {{Rational(1), Rational(0)}, {Rational(2), Rational(0)}}),
                        RankDeficient);
    }
}

TEST_CASE("develop paths replay to their embeddings") {
    Collage c = group_quotient_collage(1, {{Rational(1)}});
    for (const auto& d : develop(c, 0)) {
        AffineMap replay = AffineMap::identity(1);
        std::size_t at = 0;
        for (const auto& s : d.path) {
            const Gluing& g = c.gluings[s.gluing];
            replay = replay.compose(s.reversed ? g.map : g.map.inverse());
            at = s.reversed ? g.from : g.to;
        }
        CHECK(at == d.chart);
        CHECK(replay == d.embedding);
    }
}
