#pragma once

#include "collage/polyhedron.hpp"

namespace collage {

/// Hilbert basis of a pointed rational cone: the unique minimal generating
/// set of its monoid of lattice points. Bounded search over the fundamental
/// box followed by an irreducibility sieve.
IMat hilbert_basis(const Cone& c);

/// Integer solution of proj . x = target, when one exists.
std::optional<IVec> integer_preimage(const IMat& proj, const IVec& target,
                                     std::size_t source_dim);

/// The monoid dictionary of a strongly convex polyhedron: generators of the
/// bounded-above functions Aff_Delta over H and of the nonpositive functions
/// Aff+_Delta over H^o (negative constants are implicit in the H^o action).
struct BoundedAffineMonoid {
    Cone bounded_slopes; // Lambda_{Delta/H}, the polar of the recession cone
    std::vector<AffineFunction> module_generators;      // lift a Hilbert basis, sup = 0
    std::vector<AffineFunction> nonpositive_generators; // generate Aff+ over H^o
};

BoundedAffineMonoid bounded_affine_monoid(const Polyhedron& p);

/// Monoid generators of a cone that may have a group part: a Hilbert basis
/// of the pointed quotient lifted back, plus both signs of a lineality
/// lattice basis.
IMat cone_monoid_generators(const Cone& c);

} // namespace collage
