#pragma once

#include "collage/region.hpp"

namespace collage {

/// The polyhedral complex obtained by refining a base polyhedron along a
/// set of hyperplanes: all faces of all maximal cells, closed under taking
/// faces, with pairwise intersections faces of both.
struct CellComplex {
    Polyhedron base;
    std::vector<Polyhedron> cells; // canonically ordered, maximal cells included
    std::vector<std::size_t> maximal;

    /// Index of the minimal cell whose relative interior contains p.
    std::optional<std::size_t> locate(const QVec& p) const;
};

/// Hyperplanes are given by affine functions (the hyperplane is F = 0).
CellComplex refine_by_hyperplanes(const Polyhedron& base,
                                  std::vector<AffineFunction> hyperplanes);

/// All boundary hyperplanes of a region (closure facets, affine-hull
/// equations, excluded-face hull equations).
std::vector<AffineFunction> region_hyperplanes(const Region& r);

/// A formal model at the combinatorial level: a decomposition of the base
/// into maximal cells meeting along common faces.
struct Decomposition {
    Polyhedron base;
    std::vector<Polyhedron> cells;
};

/// The decomposition induced by the boundary hyperplanes of the pieces.
/// Every piece must be contained in the base.
Decomposition common_refinement(const Polyhedron& base,
                                const std::vector<Polyhedron>& pieces);

/// True iff every cell of a is contained in a cell of b. Throws BaseMismatch
/// when the bases differ.
bool refines(const Decomposition& a, const Decomposition& b);

struct CoverResult {
    bool covered = false;
    std::optional<QVec> witness; // rational point missed by every piece
};

/// Exact Q-point covering test via the common refinement; a false verdict
/// names a rational witness in the gap.
CoverResult covering_check(const Polyhedron& base, const std::vector<Polyhedron>& pieces);

/// True iff the union of B contains a neighbourhood, inside base(R_infty),
/// of the union of A. Star-closure in the common refinement, with the
/// strata at infinity handled through the quotient polyhedra.
bool region_neighborhood(const Polyhedron& base, const std::vector<Region>& a,
                         const std::vector<Region>& b);

/// True iff the unions of A and B have the same points in base(Q).
bool regions_equal_on(const Polyhedron& base, const std::vector<Region>& a,
                      const std::vector<Region>& b);

} // namespace collage
