#pragma once

#include <optional>
#include <string>
#include <vector>

#include "collage/affine.hpp"

namespace collage {

class Polyhedron;

/// A face of a polyhedron, identified by the facets active along it and the
/// incident generators. Containment of faces is reverse inclusion of active
/// sets: f is a face of g iff gens(f) is a subset of gens(g).
struct Face {
    std::vector<std::size_t> active_facets;
    std::vector<std::size_t> vertex_ids;
    std::vector<std::size_t> ray_ids;
    std::size_t dim = 0;
};

/// A rational polyhedral cone with apex 0, kept as both generators and
/// halfspaces. Saturated: the ray list is extreme and primitive, the
/// lineality basis spans the integral points of the lineality space.
class Cone {
public:
    Cone() = default;
    static Cone from_generators(const IMat& rays, const IMat& lineality, std::size_t n);
    static Cone from_halfspaces(const IMat& normals, std::size_t n);

    std::size_t ambient_dim() const { return n_; }
    const IMat& rays() const { return rays_; }
    const IMat& lineality() const { return lineality_; }
    const IMat& facet_normals() const { return facet_normals_; }
    /// Normals vanishing identically on the cone (the span's annihilator).
    const IMat& span_equations() const { return span_equations_; }

    std::size_t dim() const;
    bool is_trivial() const { return rays_.empty() && lineality_.empty(); }
    bool is_pointed() const { return lineality_.empty(); }
    bool contains(const IVec& v) const;
    bool contains(const QVec& v) const;

    Cone polar() const;

    /// All faces, listed canonically (by dimension, then ray ids); each face
    /// is itself a Cone. The apex {0} is included for pointed cones.
    std::vector<Cone> faces() const;

    bool operator==(const Cone& o) const {
        return n_ == o.n_ && rays_ == o.rays_ && lineality_ == o.lineality_;
    }

private:
    std::size_t n_ = 0;
    IMat rays_, lineality_, facet_normals_, span_equations_;
};

/// An H-rational polyhedron in canonical form: irredundant facet
/// inequalities reduced against the affine-hull equations, plus the dual
/// generator description. Nonempty by construction; canonicalize throws
/// EmptyPolyhedron instead of producing an empty value.
class Polyhedron {
public:
    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return dim_; }

    const std::vector<AffineFunction>& facets() const { return facets_; }
    const std::vector<AffineFunction>& equations() const { return equations_; }
    /// Facets plus both signs of every equation.
    std::vector<AffineFunction> inequalities() const;

    const QMat& vertices() const { return vertices_; }
    const IMat& rays() const { return rays_; }
    const IMat& lineality() const { return lineality_; }

    bool is_strongly_convex() const { return lineality_.empty(); }
    bool is_bounded() const { return rays_.empty() && lineality_.empty(); }

    const std::vector<Face>& faces() const { return faces_; }
    const Face& top_face() const; // the polyhedron itself
    /// True iff f is a face of g (as indices into faces()).
    bool face_leq(std::size_t f, std::size_t g) const;
    Polyhedron face_polyhedron(const Face& f) const;

    bool contains(const QVec& p) const;
    bool contains(const Polyhedron& sub) const;
    /// Index into faces() of the minimal face containing p; nullopt if
    /// p is not in the polyhedron.
    std::optional<std::size_t> face_containing(const QVec& p) const;

    QVec relative_interior_point() const;

    Cone recession_cone() const;
    /// Supremum of F over the polyhedron; nullopt when unbounded above.
    std::optional<Rational> sup(const AffineFunction& f) const;

    bool operator==(const Polyhedron& o) const {
        return n_ == o.n_ && facets_ == o.facets_ && equations_ == o.equations_;
    }

    std::string to_string() const;

    friend Polyhedron canonicalize(std::vector<AffineFunction> ineqs, std::size_t n);
    friend Polyhedron from_generators(const QMat& vertices, const IMat& rays,
                                      const IMat& lineality, std::size_t n);

private:
    std::size_t n_ = 0, dim_ = 0;
    std::vector<AffineFunction> facets_, equations_;
    QMat vertices_;
    IMat rays_, lineality_;
    IMat eq_slope_lattice_; // saturated HNF basis of the equation slopes
    std::vector<Face> faces_;

    void build_faces();
};

/// Canonical form from an inequality description (each F means F <= 0).
/// Throws EmptyPolyhedron when infeasible.
Polyhedron canonicalize(std::vector<AffineFunction> ineqs, std::size_t n);

/// Canonical form from generators (at least one vertex required).
Polyhedron from_generators(const QMat& vertices, const IMat& rays,
                           const IMat& lineality, std::size_t n);

Polyhedron interval(const Rational& lo, const Rational& hi);
Polyhedron box(const QVec& lo, const QVec& hi);
Polyhedron single_point(const QVec& p);

std::optional<Polyhedron> intersect(const Polyhedron& a, const Polyhedron& b);
Polyhedron image(const Polyhedron& p, const AffineMap& f);
std::optional<Polyhedron> preimage(const Polyhedron& p, const AffineMap& f);
Polyhedron product(const Polyhedron& a, const Polyhedron& b);

/// Saturated lattice basis of the lineality space, and the quotient map to
/// a strongly convex polyhedron. Identity on already strongly convex input.
std::pair<Polyhedron, AffineMap> quotient_by_lineality(const Polyhedron& p);

/// The argmax face of any affine function with differential v.
/// Throws SlopeUnbounded when v is not bounded above on the polyhedron.
std::pair<std::size_t, Polyhedron> face_at(const Polyhedron& p, const IVec& v);

/// Conormal cone of each face: the closure of the set of slopes whose argmax
/// face contains it. Pairs (face index, cone), in face order.
std::vector<std::pair<std::size_t, Cone>> normal_fan(const Polyhedron& p);

/// A stratum at infinity: a nonzero face sigma of the recession cone with
/// the quotient polyhedron in which escaping sequences take their limits.
struct InfiniteFace {
    Cone asymptotic_cone;
    AffineMap projection;
    Polyhedron quotient;
};

/// One stratum per nonzero face of the recession cone, canonically ordered.
/// Requires a strongly convex polyhedron.
std::vector<InfiniteFace> infinite_faces(const Polyhedron& p);

/// The polyhedron cut out by finitely many bounded-above functions:
/// { p : F(p) <= 0 for all F }. Throws EmptyPolyhedron when empty.
Polyhedron convergence_polyhedron(const std::vector<AffineFunction>& generators,
                                  std::size_t n);

/// A point of Delta(R_infty): finite coordinates (possibly with declared
/// irrational parts), entries marked -inf for coordinates that escape, or an
/// explicit integral escape direction. With an explicit direction the point
/// is lim_{t->inf} (coords + t * direction).
struct ExtendedPoint {
    EVec coords;
    std::optional<IVec> direction;
};

struct MembershipResult {
    enum class Kind { Outside, InteriorOfFace, OnInfiniteFace };
    Kind kind = Kind::Outside;
    std::size_t face_index = 0;          // finite case: index into faces()
    std::size_t infinite_face_index = 0; // infinite case: index into infinite_faces()
};

MembershipResult membership(const Polyhedron& p, const ExtendedPoint& pt,
                            const IrrationalTable& table);

} // namespace collage
