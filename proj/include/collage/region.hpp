#pragma once

#include "collage/polyhedron.hpp"

namespace collage {

/// Total order on canonical forms (equations, then facets), for use as a map
/// key; consistent with operator==.
bool poly_less(const Polyhedron& a, const Polyhedron& b);

/// An inequality with an open/closed flag, as read from documents.
struct FlaggedInequality {
    AffineFunction fn;
    bool strict = false;
};

/// A semilinear convex region: a closed polyhedron minus a union of closed
/// faces. Strict inequalities with sup 0 exclude their contact face; strict
/// inequalities negative everywhere on the closure are dropped. The excluded
/// list keeps only maximal faces.
struct Region {
    Polyhedron closure;
    std::vector<Polyhedron> excluded;

    bool contains(const QVec& p) const;
    /// Exact test for relint(cell) inside the region, valid when the cell
    /// does not cross any boundary hyperplane of the region.
    bool contains_relint(const Polyhedron& cell) const;

    bool operator==(const Region& o) const {
        return closure == o.closure && excluded == o.excluded;
    }
};

Region make_region(const std::vector<FlaggedInequality>& ineqs, std::size_t n);
Region region_of(Polyhedron p);

/// Pushforward along an invertible affine map.
Region map_region(const Region& r, const AffineMap& f);

/// Reconstructs one flagged-inequality presentation: closure facets and
/// equations, plus one strict inequality per excluded face.
std::vector<FlaggedInequality> region_inequalities(const Region& r);

/// True iff relint(cell) lies in the union of the regions; requires the cell
/// to come from a complex refined by every region's boundary hyperplanes.
bool relint_in_union(const Polyhedron& cell, const std::vector<Region>& regions);

} // namespace collage
