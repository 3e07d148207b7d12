#pragma once

#include "collage/monoid.hpp"
#include "collage/polyhedron.hpp"

namespace collage {

/// An oriented flag at a rational point: an ordered list of linearly
/// independent primitive integer jet directions. Two lists present the same
/// flag when they agree up to positive scaling modulo the span of the
/// earlier directions; enumerate_flags canonicalizes accordingly.
struct OrientedFlag {
    IMat directions;

    std::size_t length() const { return directions.size(); }
    bool operator==(const OrientedFlag& o) const = default;
};

struct TypeTriple {
    std::size_t d_i = 0, d_ii = 0, d_iii = 0;
    bool operator==(const TypeTriple& o) const = default;
};

/// The value of the flag valuation on one function: an element of
/// H x Z^d ordered lexicographically.
struct FlagValue {
    Rational height; // F at the base point
    IVec pairings;   // dF against each flag direction

    int lex_sign() const;
};

FlagValue flag_value(const AffineFunction& f, const QVec& y, const OrientedFlag& flag);

/// A flag is contained in the polyhedron iff the lex jet it spans stays
/// inside: every defining inequality has lex value <= 0.
bool flag_valid(const Polyhedron& delta, const QVec& y, const OrientedFlag& flag);

/// Canonical representative: each direction is reduced modulo the saturated
/// lattice of the earlier ones and scaled primitive.
OrientedFlag canonicalize_flag(const OrientedFlag& flag);

/// Prefix (containment) order on flags at a common point; the empty flag is
/// the minimum.
bool specializes(const OrientedFlag& a, const OrientedFlag& b);

struct LocalIntegers {
    /// Hilbert-style generators of the functions vanishing at y with slope in
    /// the conormal cone of its face; together with the negative constants
    /// these generate all of Aff+_{Delta,y} over H^o.
    std::vector<AffineFunction> vanishing_generators;
};

LocalIntegers local_integers(const Polyhedron& delta, const QVec& y);

struct FlagValuation {
    std::vector<FlagValue> certificate; // values on the local-integer generators
    IMat image_lattice;                 // pairing image of the bounded slopes, HNF
    bool surjective = false;            // image is all of Z^d
};

FlagValuation flag_valuation(const Polyhedron& delta, const QVec& y,
                             const OrientedFlag& flag);

/// All valid flags at y of length <= d_max whose raw directions have entries
/// in [-window, window], canonicalized and deduplicated; includes the empty
/// flag.
std::vector<OrientedFlag> enumerate_flags(const Polyhedron& delta, const QVec& y,
                                          std::size_t d_max, int window);

/// Type classification of a point of Delta(R_infty) together with a flag at
/// its rational part.
TypeTriple classify(const Polyhedron& delta, const ExtendedPoint& p,
                    const OrientedFlag& flag, const IrrationalTable& table);

struct FlagSeparation {
    Polyhedron separator;  // sub-polyhedron of delta
    bool contains_first = false; // which flag the separator contains
};

/// A sub-polyhedron containing the jet of exactly one of two distinct flags.
FlagSeparation separate_flags(const Polyhedron& delta, const QVec& y,
                              const OrientedFlag& a, const OrientedFlag& b);

} // namespace collage
