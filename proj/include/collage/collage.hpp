#pragma once

#include <string>

#include "collage/complex.hpp"
#include "collage/monoid.hpp"

namespace collage {

/// A gluing identifies a sub-region of one chart with a sub-region of
/// another through an ambient lattice-affine isomorphism. The inverse is
/// derived, never stored.
struct Gluing {
    std::size_t from = 0, to = 0;
    Region dom, cod; // dom in charts[from], cod in charts[to]
    AffineMap map;   // unimodular; maps dom onto cod
};

/// A finite collage in embedded strongly convex polyhedra.
struct Collage {
    std::vector<Polyhedron> charts;
    std::vector<Gluing> gluings;
};

struct ValidationReport {
    bool ok = true;
    std::string message; // first violation, with the gluings involved
};

/// Checks chart containments, unimodularity, dom -> cod exactness, derived
/// inverses, and the cocycle condition on all nonempty triple overlaps.
ValidationReport validate(const Collage& c);

struct PathStep {
    std::size_t gluing = 0;
    bool reversed = false; // traverse cod -> dom
};

struct DevelopedChart {
    std::size_t chart = 0;
    AffineMap embedding; // chart ambient -> base chart ambient
    std::vector<PathStep> path;
};

/// Breadth-first development from a base chart; every chart must be
/// reachable (DisconnectedChart otherwise).
std::vector<DevelopedChart> develop(const Collage& c, std::size_t base_chart);

/// Composite transition along a loop of gluing traversals based at
/// base_chart. PathMismatch when consecutive steps do not chain.
AffineMap monodromy(const Collage& c, std::size_t base_chart,
                    const std::vector<PathStep>& loop);

/// Monodromy of the fundamental loops induced by a spanning tree: one map
/// per non-tree gluing edge.
std::vector<AffineMap> fundamental_monodromy(const Collage& c, std::size_t base_chart);

/// An overconvergent open subobject: one list of regions per chart.
using OpenFamily = std::vector<std::vector<Region>>;

/// Cor. openness criterion: the realization of U is open iff the marked
/// cells are star-closed in every chart's common refinement (strata at
/// infinity included) and U is stable under the gluings.
bool overconvergent_open_check(const Collage& c, const OpenFamily& u);

/// Is V a neighbourhood of U inside X? All three are nested polyhedra.
bool neighborhood_check(const Polyhedron& x, const Polyhedron& u, const Polyhedron& v);

/// Hausdorff / affine-diagonal criterion: every pairwise chart intersection
/// computed through the gluing data is a single polyhedron.
bool separated_check(const Collage& c);

struct ManifoldReport {
    bool ok = true;
    std::string reason;
    std::vector<DevelopedChart> atlas; // filled on success, one entry per chart
};

/// Affine-manifold recognition: boundaryless (all charts bounded) plus the
/// developed star of every cell covering a neighbourhood injectively.
ManifoldReport affine_manifold_check(const Collage& c);

/// The compact affine torus (N tensor H)/Y as a collage: the fundamental
/// parallelepiped of Y split into 2^n boxes with translation gluings.
/// Y must be n linearly independent rational vectors (RankDeficient).
Collage group_quotient_collage(std::size_t n, const QMat& y_generators);

/// Lattice equality of rational lattices given by generator rows.
bool rational_lattice_equal(const QMat& a, const QMat& b);

} // namespace collage
