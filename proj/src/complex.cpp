#include "collage/complex.hpp"

#include <algorithm>
#include <map>

#include "collage/errors.hpp"

namespace collage {

namespace {

/// Canonical key for a hyperplane F = 0: primitive slope, sign fixed by the
/// first nonzero entry.
std::optional<AffineFunction> hyperplane_key(const AffineFunction& f) {
    Int g = vector_gcd(f.slope);
    if (g == 0) return std::nullopt;
    IVec s(f.slope.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = f.slope[i] / g;
    Rational c = f.constant / Rational(g);
    for (const auto& x : s) {
        if (x == 0) continue;
        if (x < 0) {
            for (auto& y : s) y = -y;
            c = -c;
        }
        break;
    }
    return AffineFunction{std::move(s), std::move(c)};
}

struct PolyLess {
    bool operator()(const Polyhedron& a, const Polyhedron& b) const {
        return poly_less(a, b);
    }
};

bool relint_meets(const Cone& rec_piece, const Cone& sigma) {
    // Does rec_piece meet the relative interior of sigma? Intersect the two
    // cones, take a relative interior direction of the intersection, and test
    // strict interiority in sigma.
    IMat halfspaces = rec_piece.facet_normals();
    for (const auto& e : rec_piece.span_equations()) {
        halfspaces.push_back(e);
        halfspaces.push_back(scale(e, Int(-1)));
    }
    for (const auto& h : sigma.facet_normals()) halfspaces.push_back(h);
    for (const auto& e : sigma.span_equations()) {
        halfspaces.push_back(e);
        halfspaces.push_back(scale(e, Int(-1)));
    }
    Cone meet = Cone::from_halfspaces(halfspaces, sigma.ambient_dim());
    if (meet.is_trivial()) return false;
    IVec probe(sigma.ambient_dim(), 0);
    for (const auto& r : meet.rays()) probe = add(probe, r);
    for (const auto& l : meet.lineality()) probe = add(probe, l); // cones here are pointed
    for (const auto& e : sigma.span_equations())
        if (dot(e, probe) != 0) return false;
    for (const auto& h : sigma.facet_normals())
        if (dot(h, probe) >= 0) return false;
    return true;
}

std::vector<AffineFunction> closure_hyperplanes(const Polyhedron& p) {
    std::vector<AffineFunction> out;
    for (const auto& f : p.facets()) out.push_back(f);
    for (const auto& e : p.equations()) out.push_back(e);
    return out;
}

} // namespace

std::vector<AffineFunction> region_hyperplanes(const Region& r) {
    std::vector<AffineFunction> out = closure_hyperplanes(r.closure);
    for (const auto& e : r.excluded)
        for (const auto& eq : e.equations()) out.push_back(eq);
    return out;
}

CellComplex refine_by_hyperplanes(const Polyhedron& base,
                                  std::vector<AffineFunction> hyperplanes) {
    // Dedupe hyperplanes up to sign and scale.
    std::vector<AffineFunction> cuts;
    {
        std::map<std::string, bool> seen;
        for (const auto& h : hyperplanes) {
            auto key = hyperplane_key(h);
            if (!key) continue;
            std::string k = key->to_string();
            if (!seen.count(k)) {
                seen[k] = true;
                cuts.push_back(*key);
            }
        }
    }

    std::vector<Polyhedron> maximal{base};
    for (const auto& h : cuts) {
        std::vector<Polyhedron> next;
        for (auto& cell : maximal) {
            std::vector<AffineFunction> below = cell.inequalities();
            below.push_back(h);
            std::vector<AffineFunction> above = cell.inequalities();
            above.push_back(-h);
            std::optional<Polyhedron> lo, hi;
            try {
                lo = canonicalize(below, base.ambient_dim());
            } catch (const EmptyPolyhedron&) {
            }
            try {
                hi = canonicalize(above, base.ambient_dim());
            } catch (const EmptyPolyhedron&) {
            }
            bool proper_split = lo && hi && lo->dim() == cell.dim() &&
                                hi->dim() == cell.dim() && !(*lo == cell);
            if (proper_split) {
                next.push_back(std::move(*lo));
                next.push_back(std::move(*hi));
            } else {
                next.push_back(std::move(cell));
            }
        }
        maximal = std::move(next);
    }

    CellComplex cc;
    cc.base = base;
    std::map<Polyhedron, std::size_t, PolyLess> index;
    for (const auto& cell : maximal) {
        for (const auto& face : cell.faces()) {
            Polyhedron fp = cell.face_polyhedron(face);
            if (!index.count(fp)) {
                index.emplace(fp, 0);
            }
        }
    }
    for (auto& [poly, idx] : index) {
        idx = cc.cells.size();
        cc.cells.push_back(poly);
    }
    for (const auto& cell : maximal) cc.maximal.push_back(index.at(cell));
    std::sort(cc.maximal.begin(), cc.maximal.end());
    cc.maximal.erase(std::unique(cc.maximal.begin(), cc.maximal.end()), cc.maximal.end());
    return cc;
}

std::optional<std::size_t> CellComplex::locate(const QVec& p) const {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!cells[i].contains(p)) continue;
        if (!best || cells[i].dim() < cells[*best].dim()) best = i;
    }
    return best;
}

Decomposition common_refinement(const Polyhedron& base,
                                const std::vector<Polyhedron>& pieces) {
    std::vector<AffineFunction> hyperplanes;
    for (const auto& p : pieces) {
        if (!base.contains(p))
            throw NotSubPolyhedron("piece is not contained in the base polyhedron");
        for (auto& h : closure_hyperplanes(p)) hyperplanes.push_back(std::move(h));
    }
    CellComplex cc = refine_by_hyperplanes(base, std::move(hyperplanes));
    Decomposition d;
    d.base = base;
    for (auto i : cc.maximal) d.cells.push_back(cc.cells[i]);
    return d;
}

bool refines(const Decomposition& a, const Decomposition& b) {
    if (!(a.base == b.base)) throw BaseMismatch("decompositions have different bases");
    for (const auto& cell : a.cells) {
        bool inside = false;
        for (const auto& big : b.cells)
            if (big.contains(cell)) {
                inside = true;
                break;
            }
        if (!inside) return false;
    }
    return true;
}

CoverResult covering_check(const Polyhedron& base, const std::vector<Polyhedron>& pieces) {
    std::vector<AffineFunction> hyperplanes;
    for (const auto& p : pieces) {
        if (!base.contains(p))
            throw NotSubPolyhedron("piece is not contained in the base polyhedron");
        for (auto& h : closure_hyperplanes(p)) hyperplanes.push_back(std::move(h));
    }
    CellComplex cc = refine_by_hyperplanes(base, std::move(hyperplanes));
    CoverResult res;
    for (auto i : cc.maximal) {
        bool inside = false;
        for (const auto& p : pieces)
            if (p.contains(cc.cells[i])) {
                inside = true;
                break;
            }
        if (!inside) {
            res.covered = false;
            res.witness = cc.cells[i].relative_interior_point();
            return res;
        }
    }
    res.covered = true;
    return res;
}

namespace {

std::vector<Region> project_regions(const std::vector<Region>& regions,
                                    const InfiniteFace& stratum) {
    std::vector<Region> out;
    for (const auto& r : regions) {
        Cone rec = r.closure.recession_cone();
        if (!relint_meets(rec, stratum.asymptotic_cone)) continue;
        for (const auto& e : r.excluded) {
            if (relint_meets(e.recession_cone(), stratum.asymptotic_cone))
                throw SemanticError(
                    "strict boundary escaping to infinity is not supported in "
                    "openness checks");
        }
        out.push_back(region_of(image(r.closure, stratum.projection)));
    }
    return out;
}

} // namespace

bool region_neighborhood(const Polyhedron& base, const std::vector<Region>& a,
                         const std::vector<Region>& b) {
    std::vector<AffineFunction> hyperplanes;
    for (const auto& r : a)
        for (auto& h : region_hyperplanes(r)) hyperplanes.push_back(std::move(h));
    for (const auto& r : b)
        for (auto& h : region_hyperplanes(r)) hyperplanes.push_back(std::move(h));

    // Strata at infinity: project the data, recurse, and remember which
    // finite cells limit onto which quotient cells.
    struct StratumData {
        const InfiniteFace* stratum;
        std::vector<Region> a_bar, b_bar;
        CellComplex quotient_cc;
        std::vector<bool> marked_a;
    };
    std::vector<InfiniteFace> strata;
    if (!base.is_bounded()) strata = infinite_faces(base);
    std::vector<StratumData> sdata;
    for (const auto& s : strata) {
        StratumData d;
        d.stratum = &s;
        d.a_bar = project_regions(a, s);
        d.b_bar = project_regions(b, s);
        if (d.a_bar.empty()) continue; // nothing of A reaches this stratum
        if (!region_neighborhood(s.quotient, d.a_bar, d.b_bar)) return false;
        std::vector<AffineFunction> qh;
        for (const auto& r : d.a_bar)
            for (auto& h : region_hyperplanes(r)) qh.push_back(std::move(h));
        for (const auto& r : d.b_bar)
            for (auto& h : region_hyperplanes(r)) qh.push_back(std::move(h));
        // Preimages of the quotient hyperplanes refine the finite complex so
        // every finite cell projects into the relative interior of a unique
        // quotient cell.
        for (const auto& h : qh) {
            AffineMap proj = s.projection;
            AffineFunction pulled = proj.pullback(h);
            hyperplanes.push_back(pulled);
        }
        d.quotient_cc = refine_by_hyperplanes(s.quotient, std::move(qh));
        d.marked_a.assign(d.quotient_cc.cells.size(), false);
        for (std::size_t i = 0; i < d.quotient_cc.cells.size(); ++i)
            d.marked_a[i] = relint_in_union(d.quotient_cc.cells[i], d.a_bar);
        sdata.push_back(std::move(d));
    }

    CellComplex cc = refine_by_hyperplanes(base, std::move(hyperplanes));
    std::vector<bool> in_a(cc.cells.size()), in_b(cc.cells.size());
    for (std::size_t i = 0; i < cc.cells.size(); ++i) {
        in_a[i] = relint_in_union(cc.cells[i], a);
        in_b[i] = relint_in_union(cc.cells[i], b);
    }

    // Star closure at finite cells: every cell whose closure meets A must be
    // entirely inside B.
    for (std::size_t f = 0; f < cc.cells.size(); ++f) {
        if (!in_a[f]) continue;
        for (std::size_t c = 0; c < cc.cells.size(); ++c) {
            if (in_b[c]) continue;
            if (cc.cells[c].contains(cc.cells[f])) return false;
        }
    }

    // Linking: a finite cell limiting onto a stratum cell adjacent to A must
    // be inside B.
    for (const auto& d : sdata) {
        for (auto ci : cc.maximal) {
            const Polyhedron& cell = cc.cells[ci];
            if (in_b[ci]) continue;
            if (!relint_meets(cell.recession_cone(), d.stratum->asymptotic_cone)) continue;
            QVec probe = cell.relative_interior_point();
            QVec qprobe = d.stratum->projection(probe);
            auto located = d.quotient_cc.locate(qprobe);
            if (!located) continue;
            const Polyhedron& qcell = d.quotient_cc.cells[*located];
            for (std::size_t f = 0; f < d.quotient_cc.cells.size(); ++f) {
                if (!d.marked_a[f]) continue;
                if (qcell.contains(d.quotient_cc.cells[f])) return false;
            }
        }
    }
    return true;
}

bool regions_equal_on(const Polyhedron& base, const std::vector<Region>& a,
                      const std::vector<Region>& b) {
    std::vector<AffineFunction> hyperplanes;
    for (const auto& r : a)
        for (auto& h : region_hyperplanes(r)) hyperplanes.push_back(std::move(h));
    for (const auto& r : b)
        for (auto& h : region_hyperplanes(r)) hyperplanes.push_back(std::move(h));
    CellComplex cc = refine_by_hyperplanes(base, std::move(hyperplanes));
    for (const auto& cell : cc.cells)
        if (relint_in_union(cell, a) != relint_in_union(cell, b)) return false;
    return true;
}

} // namespace collage
