#include "collage/collage.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "collage/errors.hpp"

namespace collage {

namespace {

std::string gname(std::size_t i) { return "gluing #" + std::to_string(i); }

/// Do two affine maps agree on a polyhedron? Checked at the vertices and on
/// the direction space.
bool maps_agree_on(const Polyhedron& p, const AffineMap& f, const AffineMap& g) {
    for (const auto& v : p.vertices())
        if (f(v) != g(v)) return false;
    auto dir_eq = [&](const IVec& d) { return matvec(f.matrix, d) == matvec(g.matrix, d); };
    for (const auto& r : p.rays())
        if (!dir_eq(r)) return false;
    for (const auto& l : p.lineality())
        if (!dir_eq(l)) return false;
    return true;
}

} // namespace

ValidationReport validate(const Collage& c) {
    auto fail = [](std::string m) { return ValidationReport{false, std::move(m)}; };
    for (std::size_t i = 0; i < c.gluings.size(); ++i) {
        const Gluing& g = c.gluings[i];
        if (g.from >= c.charts.size() || g.to >= c.charts.size())
            return fail(gname(i) + " references a missing chart");
        const Polyhedron& src = c.charts[g.from];
        const Polyhedron& dst = c.charts[g.to];
        if (!src.is_strongly_convex() || !dst.is_strongly_convex())
            return fail("charts must be strongly convex (quotient lineality first)");
        if (!src.contains(g.dom.closure))
            return fail(gname(i) + ": dom is not a sub-polyhedron of its chart");
        if (!dst.contains(g.cod.closure))
            return fail(gname(i) + ": cod is not a sub-polyhedron of its chart");
        if (g.map.source_dim() != src.ambient_dim() ||
            g.map.target_dim() != dst.ambient_dim())
            return fail(gname(i) + ": transition map dimensions do not match the charts");
        if (!g.map.is_unimodular())
            return fail(gname(i) + ": transition map is not a lattice isomorphism");
        if (!(map_region(g.dom, g.map) == g.cod))
            return fail(gname(i) + ": map(dom) differs from cod");
        // Derived inverse must restrict to the inverse isomorphism.
        if (!(map_region(g.cod, g.map.inverse()) == g.dom))
            return fail(gname(i) + ": derived inverse does not map cod onto dom");
    }

    // Cocycle on nonempty triple overlaps: two gluings out of the same chart
    // compose against a third wherever all are defined.
    for (std::size_t i = 0; i < c.gluings.size(); ++i) {
        for (std::size_t j = 0; j < c.gluings.size(); ++j) {
            if (i == j) continue;
            const Gluing& gij = c.gluings[i]; // a -> b
            const Gluing& gjk = c.gluings[j]; // b -> c
            if (gij.to != gjk.from) continue;
            for (std::size_t k = 0; k < c.gluings.size(); ++k) {
                if (k == i || k == j) continue;
                const Gluing& gik = c.gluings[k]; // a -> c
                if (gik.from != gij.from || gik.to != gjk.to) continue;
                // Region where both routes are defined.
                auto step1 = intersect(gij.dom.closure, gik.dom.closure);
                if (!step1) continue;
                auto mid = intersect(image(*step1, gij.map), gjk.dom.closure);
                if (!mid) continue;
                Polyhedron overlap = image(*mid, gij.map.inverse());
                AffineMap route = gjk.map.compose(gij.map);
                if (!maps_agree_on(overlap, route, gik.map))
                    return ValidationReport{
                        false, "cocycle violated on triple (" + gname(i) + ", " + gname(j) +
                                   ", " + gname(k) + ")"};
            }
        }
    }
    return {};
}

std::vector<DevelopedChart> develop(const Collage& c, std::size_t base_chart) {
    if (base_chart >= c.charts.size())
        throw SemanticError("base chart index out of range");
    std::vector<std::optional<DevelopedChart>> out(c.charts.size());
    out[base_chart] = DevelopedChart{base_chart, AffineMap::identity(
                                                     c.charts[base_chart].ambient_dim()),
                                     {}};
    std::vector<std::size_t> queue{base_chart};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::size_t a = queue[head];
        const AffineMap& ea = out[a]->embedding;
        for (std::size_t gi = 0; gi < c.gluings.size(); ++gi) {
            const Gluing& g = c.gluings[gi];
            if (g.from == a && !out[g.to]) {
                DevelopedChart dc;
                dc.chart = g.to;
                dc.embedding = ea.compose(g.map.inverse());
                dc.path = out[a]->path;
                dc.path.push_back({gi, false});
                out[g.to] = std::move(dc);
                queue.push_back(g.to);
            }
            if (g.to == a && !out[g.from]) {
                DevelopedChart dc;
                dc.chart = g.from;
                dc.embedding = ea.compose(g.map);
                dc.path = out[a]->path;
                dc.path.push_back({gi, true});
                out[g.from] = std::move(dc);
                queue.push_back(g.from);
            }
        }
    }
    std::vector<DevelopedChart> result;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!out[i])
            throw DisconnectedChart("chart " + std::to_string(i) +
                                    " is unreachable from the base chart");
        result.push_back(std::move(*out[i]));
    }
    return result;
}

AffineMap monodromy(const Collage& c, std::size_t base_chart,
                    const std::vector<PathStep>& loop) {
    std::size_t at = base_chart;
    AffineMap e = AffineMap::identity(c.charts.at(base_chart).ambient_dim());
    for (const PathStep& s : loop) {
        if (s.gluing >= c.gluings.size())
            throw SemanticError("loop references a missing gluing");
        const Gluing& g = c.gluings[s.gluing];
        std::size_t from = s.reversed ? g.to : g.from;
        std::size_t to = s.reversed ? g.from : g.to;
        if (from != at)
            throw PathMismatch("step through " + gname(s.gluing) +
                               " does not start at the current chart");
        e = e.compose(s.reversed ? g.map : g.map.inverse());
        at = to;
    }
    if (at != base_chart)
        throw PathMismatch("path is not a loop at the base chart");
    return e;
}

std::vector<AffineMap> fundamental_monodromy(const Collage& c, std::size_t base_chart) {
    std::vector<DevelopedChart> dev = develop(c, base_chart);
    std::vector<const DevelopedChart*> by_chart(c.charts.size());
    std::set<std::size_t> tree_edges;
    for (const auto& d : dev) {
        by_chart[d.chart] = &d;
        for (const auto& s : d.path) tree_edges.insert(s.gluing);
    }
    std::vector<AffineMap> out;
    for (std::size_t gi = 0; gi < c.gluings.size(); ++gi) {
        if (tree_edges.count(gi)) continue;
        const Gluing& g = c.gluings[gi];
        // Loop: base ->(tree) from ->(gi) to ->(reverse tree) base.
        std::vector<PathStep> loop = by_chart[g.from]->path;
        loop.push_back({gi, false});
        std::vector<PathStep> back = by_chart[g.to]->path;
        std::reverse(back.begin(), back.end());
        for (auto& s : back) s.reversed = !s.reversed;
        loop.insert(loop.end(), back.begin(), back.end());
        out.push_back(monodromy(c, base_chart, loop));
    }
    return out;
}

bool overconvergent_open_check(const Collage& c, const OpenFamily& u) {
    if (u.size() != c.charts.size())
        throw DimensionMismatch("open family needs one entry per chart");
    for (std::size_t i = 0; i < c.charts.size(); ++i)
        for (const auto& r : u[i])
            if (!c.charts[i].contains(r.closure))
                throw NotSubPolyhedron("open-family piece is not inside its chart");
    // Stability under the gluings: the two restrictions agree on overlaps.
    for (std::size_t gi = 0; gi < c.gluings.size(); ++gi) {
        const Gluing& g = c.gluings[gi];
        std::vector<Region> pulled;
        AffineMap inv = g.map.inverse();
        for (const auto& r : u[g.to]) pulled.push_back(map_region(r, inv));
        if (!regions_equal_on(g.dom.closure, u[g.from], pulled))
            throw NotGluingStable("open family differs across " + gname(gi));
    }
    for (std::size_t i = 0; i < c.charts.size(); ++i)
        if (!region_neighborhood(c.charts[i], u[i], u[i])) return false;
    return true;
}

bool neighborhood_check(const Polyhedron& x, const Polyhedron& u, const Polyhedron& v) {
    if (!x.contains(v) || !v.contains(u))
        throw NotSubPolyhedron("need U inside V inside X");
    return region_neighborhood(x, {region_of(u)}, {region_of(v)});
}

bool separated_check(const Collage& c) {
    // Group identifications between a fixed pair of charts by the transition
    // map; each group's identified locus must be one polyhedron.
    struct Group {
        std::size_t a, b;
        AffineMap map; // chart a -> chart b
        std::vector<Region> doms;
    };
    std::vector<Group> groups;
    auto add = [&](std::size_t a, std::size_t b, const AffineMap& m, const Region& dom) {
        if (a == b && m == AffineMap::identity(c.charts[a].ambient_dim()))
            return; // the diagonal is trivially affine
        for (auto& gr : groups) {
            if (gr.a == a && gr.b == b && gr.map == m) {
                gr.doms.push_back(dom);
                return;
            }
        }
        groups.push_back({a, b, m, {dom}});
    };
    for (const Gluing& g : c.gluings) {
        if (g.from <= g.to)
            add(g.from, g.to, g.map, g.dom);
        else
            add(g.to, g.from, g.map.inverse(), g.cod);
    }
    for (const auto& gr : groups) {
        // Convex hull of the union of the identified domains.
        QMat vertices;
        IMat rays, lineality;
        for (const auto& r : gr.doms) {
            for (const auto& v : r.closure.vertices()) vertices.push_back(v);
            for (const auto& ray : r.closure.rays()) rays.push_back(ray);
            for (const auto& l : r.closure.lineality()) lineality.push_back(l);
        }
        Polyhedron hull = from_generators(vertices, rays, lineality,
                                          c.charts[gr.a].ambient_dim());
        if (!regions_equal_on(hull, gr.doms, {region_of(hull)})) return false;
    }
    return true;
}

namespace {

struct Sheet {
    std::size_t chart;
    AffineMap embedding; // chart ambient -> star ambient
};

/// Directions staying inside p when moving off x: the cone of the active
/// inequalities. x must lie in p.
Polyhedron tangent_cone(const Polyhedron& p, const QVec& x) {
    std::size_t n = p.ambient_dim();
    std::vector<AffineFunction> sys;
    for (const auto& f : p.facets())
        if (f(x) == 0) sys.push_back({f.slope, Rational(0)});
    for (const auto& e : p.equations()) {
        sys.push_back({e.slope, Rational(0)});
        sys.push_back({scale(e.slope, Int(-1)), Rational(0)});
    }
    return canonicalize(std::move(sys), n);
}

/// Tangent region of a semilinear region at x in its closure: tangent cone
/// of the closure minus the tangent cones of the excluded faces through x,
/// clipped to the frame box.
Region tangent_region(const Region& r, const QVec& x, const Polyhedron& frame) {
    Region out;
    out.closure = *intersect(tangent_cone(r.closure, x), frame);
    for (const auto& e : r.excluded) {
        if (!e.contains(x)) continue;
        auto t = intersect(tangent_cone(e, x), frame);
        if (t) out.excluded.push_back(std::move(*t));
    }
    std::sort(out.excluded.begin(), out.excluded.end(), poly_less);
    return out;
}

QVec unit_box_corner(std::size_t n, int sign) {
    return QVec(n, Rational(sign));
}

} // namespace

ManifoldReport affine_manifold_check(const Collage& c) {
    ManifoldReport rep;
    for (std::size_t i = 0; i < c.charts.size(); ++i) {
        if (!c.charts[i].is_bounded()) {
            rep.ok = false;
            rep.reason = "chart " + std::to_string(i) +
                         " is unbounded, so the collage has a boundary at infinity";
            return rep;
        }
    }

    constexpr std::size_t kMaxSheets = 64;
    for (std::size_t ci = 0; ci < c.charts.size(); ++ci) {
        std::size_t n = c.charts[ci].ambient_dim();
        Polyhedron frame = box(unit_box_corner(n, -1), unit_box_corner(n, 1));
        // Refine the chart by every gluing region touching it.
        std::vector<AffineFunction> hyperplanes;
        for (const Gluing& g : c.gluings) {
            if (g.from == ci)
                for (auto& h : region_hyperplanes(g.dom)) hyperplanes.push_back(h);
            if (g.to == ci)
                for (auto& h : region_hyperplanes(g.cod)) hyperplanes.push_back(h);
        }
        CellComplex cc = refine_by_hyperplanes(c.charts[ci], hyperplanes);

        for (const Polyhedron& cell : cc.cells) {
            // Develop the star of the cell by crossing every gluing whose
            // region contains the cell's relative interior.
            std::vector<Sheet> sheets{{ci, AffineMap::identity(n)}};
            for (std::size_t head = 0; head < sheets.size(); ++head) {
                if (sheets.size() > kMaxSheets) {
                    rep.ok = false;
                    rep.reason = "local holonomy at a cell of chart " +
                                 std::to_string(ci) + " did not close";
                    return rep;
                }
                Sheet cur = sheets[head];
                auto try_cross = [&](const Region& through, std::size_t target,
                                     const AffineMap& transition) {
                    Region dev = map_region(through, cur.embedding);
                    bool fully = dev.contains_relint(cell);
                    if (!fully) {
                        auto part = intersect(cell, dev.closure);
                        if (part && part->dim() == cell.dim() && !(*part == cell)) {
                            rep.ok = false;
                            rep.reason =
                                "gluing region straddles a star cell of chart " +
                                std::to_string(ci) + "; refine the gluing regions";
                        }
                        return;
                    }
                    Sheet next{target, cur.embedding.compose(transition)};
                    for (const auto& s : sheets)
                        if (s.chart == next.chart && s.embedding == next.embedding) return;
                    sheets.push_back(std::move(next));
                };
                for (const Gluing& g : c.gluings) {
                    if (g.from == cur.chart) try_cross(g.dom, g.to, g.map.inverse());
                    if (!rep.ok) return rep;
                    if (g.to == cur.chart) try_cross(g.cod, g.from, g.map);
                    if (!rep.ok) return rep;
                }
            }

            QVec x = cell.relative_interior_point();
            // Openness: the tangent cones of the sheets through x must cover
            // every direction.
            std::vector<Polyhedron> cones;
            std::vector<std::size_t> holding; // sheets whose image contains x
            for (std::size_t si = 0; si < sheets.size(); ++si) {
                Polyhedron dev = image(c.charts[sheets[si].chart], sheets[si].embedding);
                if (!dev.contains(x)) continue;
                holding.push_back(si);
                cones.push_back(*intersect(tangent_cone(dev, x), frame));
            }
            if (cones.empty() || !covering_check(frame, cones).covered) {
                rep.ok = false;
                rep.reason = "developed star is not open at a cell of chart " +
                             std::to_string(ci);
                return rep;
            }

            // Injectivity: wherever two sheets overlap near x, the overlap
            // must be exactly the glued locus.
            for (std::size_t i1 = 0; i1 < holding.size(); ++i1) {
                for (std::size_t i2 = i1 + 1; i2 < holding.size(); ++i2) {
                    const Sheet& a = sheets[holding[i1]];
                    const Sheet& b = sheets[holding[i2]];
                    auto meet = intersect(cones[i1], cones[i2]);
                    if (!meet) continue;
                    std::vector<Region> identified;
                    for (const Gluing& g : c.gluings) {
                        if (g.from == a.chart && g.to == b.chart &&
                            maps_agree_on(g.dom.closure, b.embedding.compose(g.map),
                                          a.embedding)) {
                            Region m = map_region(g.dom, a.embedding);
                            if (m.closure.contains(x))
                                identified.push_back(tangent_region(m, x, frame));
                        }
                        if (g.from == b.chart && g.to == a.chart &&
                            maps_agree_on(g.dom.closure, a.embedding.compose(g.map),
                                          b.embedding)) {
                            Region m = map_region(g.dom, b.embedding);
                            if (m.closure.contains(x))
                                identified.push_back(tangent_region(m, x, frame));
                        }
                    }
                    if (!regions_equal_on(*meet, identified, {region_of(*meet)})) {
                        rep.ok = false;
                        rep.reason = "development is not injective on the star of a "
                                     "cell of chart " +
                                     std::to_string(ci);
                        return rep;
                    }
                }
            }
        }
    }

    // Atlas: develop each connected component from its smallest chart.
    std::vector<bool> placed(c.charts.size(), false);
    for (std::size_t i = 0; i < c.charts.size(); ++i) {
        if (placed[i]) continue;
        try {
            for (auto& d : develop(c, i)) {
                placed[d.chart] = true;
                rep.atlas.push_back(std::move(d));
            }
        } catch (const DisconnectedChart&) {
            // Component-wise development: mark what is reachable.
            std::vector<std::optional<AffineMap>> emb(c.charts.size());
            emb[i] = AffineMap::identity(c.charts[i].ambient_dim());
            std::vector<std::size_t> queue{i};
            placed[i] = true;
            rep.atlas.push_back({i, *emb[i], {}});
            for (std::size_t head = 0; head < queue.size(); ++head) {
                std::size_t at = queue[head];
                for (std::size_t gi = 0; gi < c.gluings.size(); ++gi) {
                    const Gluing& g = c.gluings[gi];
                    auto visit = [&](std::size_t nxt, const AffineMap& m, bool rev) {
                        if (placed[nxt]) return;
                        placed[nxt] = true;
                        emb[nxt] = emb[at]->compose(m);
                        DevelopedChart dc{nxt, *emb[nxt], {}};
                        dc.path.push_back({gi, rev});
                        rep.atlas.push_back(std::move(dc));
                        queue.push_back(nxt);
                    };
                    if (g.from == at) visit(g.to, g.map.inverse(), false);
                    if (g.to == at) visit(g.from, g.map, true);
                }
            }
        }
    }
    return rep;
}

Collage group_quotient_collage(std::size_t n, const QMat& y_generators) {
    if (y_generators.size() != n)
        throw RankDeficient("need exactly n lattice generators");
    QMat columns(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (y_generators[i].size() != n)
            throw RankDeficient("generator dimension mismatch");
        for (std::size_t j = 0; j < n; ++j) columns[j][i] = y_generators[i][j];
    }
    auto inv = inverse(columns);
    if (!inv)
        throw RankDeficient("generators do not span the space");
    // Row i of the inverse is the coordinate functional t_i.
    // Scaled coordinate functionals: t_scale[i] * t_i has an integer slope.
    std::vector<AffineFunction> t(n, AffineFunction{});
    QVec t_scale(n);
    for (std::size_t i = 0; i < n; ++i) {
        Int d = 1;
        for (const auto& q : (*inv)[i]) d = lcm(d, den(q));
        IVec slope(n);
        for (std::size_t j = 0; j < n; ++j)
            slope[j] = num((*inv)[i][j]) * (d / den((*inv)[i][j]));
        t[i] = AffineFunction{std::move(slope), Rational(0)};
        t_scale[i] = Rational(d);
    }

    Collage c;
    std::size_t boxes = std::size_t(1) << n;
    auto chart_of = [&](std::size_t s) {
        std::vector<AffineFunction> sys;
        for (std::size_t i = 0; i < n; ++i) {
            Rational lo = Rational(Int((s >> i) & 1), 2), hi = lo + Rational(1, 2);
            // lo * d <= (t_i scaled) <= hi * d
            sys.push_back({scale(t[i].slope, Int(-1)), lo * t_scale[i]});
            sys.push_back({t[i].slope, -hi * t_scale[i]});
        }
        return canonicalize(std::move(sys), n);
    };
    for (std::size_t s = 0; s < boxes; ++s) c.charts.push_back(chart_of(s));

    // Neighbour offsets in {-1,0,1}^n, wrapped through the lattice.
    std::vector<IVec> offsets;
    IVec cur(n, 0);
    std::function<void(std::size_t)> gen = [&](std::size_t i) {
        if (i == n) {
            if (!std::all_of(cur.begin(), cur.end(), [](const Int& x) { return x == 0; }))
                offsets.push_back(cur);
            return;
        }
        for (int v = -1; v <= 1; ++v) {
            cur[i] = v;
            gen(i + 1);
        }
        cur[i] = 0;
    };
    gen(0);

    for (std::size_t s = 0; s < boxes; ++s) {
        for (const IVec& delta : offsets) {
            std::size_t target = 0;
            QVec shift(n, Rational(0));
            IVec key_from(n), key_delta(n), key_to(n), key_back(n);
            for (std::size_t i = 0; i < n; ++i) {
                Int si = Int((s >> i) & 1) + delta[i];
                Int wrap = 0;
                if (si == 2) {
                    wrap = 1;
                    si = 0;
                } else if (si == -1) {
                    wrap = -1;
                    si = 1;
                }
                if (si == 1) target |= (std::size_t(1) << i);
                if (wrap != 0)
                    shift = sub(shift, scale(y_generators[i], Rational(wrap)));
                key_from[i] = Int((s >> i) & 1);
                key_delta[i] = delta[i];
                key_to[i] = si;
                key_back[i] = -delta[i];
            }
            // Keep each unordered identification once.
            IVec key1 = key_from;
            key1.insert(key1.end(), key_delta.begin(), key_delta.end());
            IVec key2 = key_to;
            key2.insert(key2.end(), key_back.begin(), key_back.end());
            if (!(key1 < key2)) continue;

            // Domain: the face of box(s) where each offset coordinate sits at
            // its boundary value.
            std::vector<AffineFunction> sys;
            for (std::size_t i = 0; i < n; ++i) {
                Int sbit = Int((s >> i) & 1);
                Rational lo(sbit, 2), hi = Rational(sbit, 2) + Rational(1, 2);
                if (delta[i] > 0) lo = hi;
                if (delta[i] < 0) hi = lo;
                sys.push_back({scale(t[i].slope, Int(-1)), lo * t_scale[i]});
                sys.push_back({t[i].slope, -hi * t_scale[i]});
            }
            Gluing g;
            g.from = s;
            g.to = target;
            g.dom = region_of(canonicalize(std::move(sys), n));
            g.map = AffineMap::translation_by(shift);
            g.cod = map_region(g.dom, g.map);
            c.gluings.push_back(std::move(g));
        }
    }
    // Interior facet gluings first, wrap-arounds after: development along the
    // spanning tree then stays inside the fundamental domain.
    std::stable_sort(c.gluings.begin(), c.gluings.end(),
                     [](const Gluing& a, const Gluing& b) {
                         auto zero = [](const QVec& t) {
                             return std::all_of(t.begin(), t.end(),
                                                [](const Rational& x) { return x == 0; });
                         };
                         return zero(a.map.translation) > zero(b.map.translation);
                     });
    return c;
}

bool rational_lattice_equal(const QMat& a, const QMat& b) {
    Int d = 1;
    for (const auto& row : a)
        for (const auto& q : row) d = lcm(d, den(q));
    for (const auto& row : b)
        for (const auto& q : row) d = lcm(d, den(q));
    auto to_int = [&](const QMat& m) {
        IMat out;
        for (const auto& row : m) {
            IVec r(row.size());
            for (std::size_t i = 0; i < row.size(); ++i)
                r[i] = num(row[i]) * (d / den(row[i]));
            out.push_back(std::move(r));
        }
        return hermite_normal_form(out).first;
    };
    IMat ha = to_int(a), hb = to_int(b);
    auto strip = [](IMat& m) {
        while (!m.empty() &&
               std::all_of(m.back().begin(), m.back().end(),
                           [](const Int& x) { return x == 0; }))
            m.pop_back();
    };
    strip(ha);
    strip(hb);
    return ha == hb;
}

} // namespace collage
