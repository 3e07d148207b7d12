#include "collage/region.hpp"

#include <algorithm>

#include "collage/errors.hpp"

namespace collage {

namespace {

int compare_fns(const std::vector<AffineFunction>& a, const std::vector<AffineFunction>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto c = a[i] <=> b[i];
        if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
}

} // namespace

bool poly_less(const Polyhedron& a, const Polyhedron& b) {
    if (a.ambient_dim() != b.ambient_dim()) return a.ambient_dim() < b.ambient_dim();
    int c = compare_fns(a.equations(), b.equations());
    if (c != 0) return c < 0;
    return compare_fns(a.facets(), b.facets()) < 0;
}

bool Region::contains(const QVec& p) const {
    if (!closure.contains(p)) return false;
    for (const auto& e : excluded)
        if (e.contains(p)) return false;
    return true;
}

bool Region::contains_relint(const Polyhedron& cell) const {
    if (!closure.contains(cell)) return false;
    for (const auto& e : excluded)
        if (e.contains(cell)) return false;
    return true;
}

Region make_region(const std::vector<FlaggedInequality>& ineqs, std::size_t n) {
    std::vector<AffineFunction> closed;
    for (const auto& q : ineqs) closed.push_back(q.fn);
    Region r;
    r.closure = canonicalize(closed, n);
    for (const auto& q : ineqs) {
        if (!q.strict) continue;
        std::optional<Rational> s = r.closure.sup(q.fn);
        if (s && *s < 0) continue; // never active on the closure
        // The excluded set is the contact face of the strict inequality.
        std::vector<AffineFunction> sys = r.closure.inequalities();
        sys.push_back(q.fn);
        sys.push_back(-q.fn);
        Polyhedron face = canonicalize(std::move(sys), n);
        if (face == r.closure)
            throw EmptyPolyhedron("strict inequality excludes the whole region");
        r.excluded.push_back(std::move(face));
    }
    // Keep only maximal excluded faces, canonically ordered.
    std::vector<Polyhedron> maximal;
    for (std::size_t i = 0; i < r.excluded.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < r.excluded.size() && !dominated; ++j)
            if (i != j && r.excluded[j].contains(r.excluded[i]) &&
                !(r.excluded[i] == r.excluded[j] && i < j))
                dominated = true;
        if (!dominated) maximal.push_back(r.excluded[i]);
    }
    std::sort(maximal.begin(), maximal.end(), poly_less);
    maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());
    r.excluded = std::move(maximal);
    return r;
}

Region region_of(Polyhedron p) {
    Region r;
    r.closure = std::move(p);
    return r;
}

Region map_region(const Region& r, const AffineMap& f) {
    Region out;
    out.closure = image(r.closure, f);
    for (const auto& e : r.excluded) out.excluded.push_back(image(e, f));
    std::sort(out.excluded.begin(), out.excluded.end(), poly_less);
    return out;
}

std::vector<FlaggedInequality> region_inequalities(const Region& r) {
    std::vector<FlaggedInequality> out;
    for (const auto& f : r.closure.facets()) out.push_back({f, false});
    for (const auto& e : r.closure.equations()) {
        out.push_back({e, false});
        out.push_back({-e, false});
    }
    for (const auto& e : r.excluded) {
        // A functional vanishing exactly on the excluded face: the sum of the
        // facet functionals active along it (or 0 = any equation situation).
        AffineFunction f{IVec(r.closure.ambient_dim(), 0), Rational(0)};
        QVec probe = e.relative_interior_point();
        bool nontrivial = false;
        for (const auto& facet : r.closure.facets()) {
            if (facet(probe) == 0) {
                f = f + facet;
                nontrivial = true;
            }
        }
        if (nontrivial) out.push_back({f, true});
    }
    return out;
}

bool relint_in_union(const Polyhedron& cell, const std::vector<Region>& regions) {
    for (const auto& r : regions)
        if (r.contains_relint(cell)) return true;
    return false;
}

} // namespace collage
