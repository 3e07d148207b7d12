#pragma once

#include <complex>

#include "collage/collage.hpp"
#include "collage/monoid.hpp"

namespace collage {

/// An element of the complex monoid algebra of a polyhedron: finitely many
/// terms c * z^F with F bounded above on the polyhedron. Coefficients are
/// the only inexact data in the library.
struct MonoidAlgebraElement {
    std::vector<std::pair<std::complex<double>, AffineFunction>> terms;
};

/// t-adic order of z^F: the largest k with F + k <= 0 on the polyhedron,
/// i.e. floor(-sup F). Throws SlopeUnbounded when F is not bounded above.
Int ord_t(const Polyhedron& delta, const AffineFunction& f);

/// The l^1_q norm: sum over terms of |q|^ord * |c|.
double l1q_norm(const Polyhedron& delta, const MonoidAlgebraElement& a, double q);

/// Product in the monoid algebra: exponents add, like terms collect.
MonoidAlgebraElement multiply(const MonoidAlgebraElement& a,
                              const MonoidAlgebraElement& b);

struct SubmultReport {
    double norm_ab = 0, norm_a = 0, norm_b = 0;
    double ratio = 0; // norm_ab / (norm_a * norm_b), 0 when denominators vanish
    bool submultiplicative = false;
};

SubmultReport submultiplicativity_probe(const Polyhedron& delta,
                                        const MonoidAlgebraElement& a,
                                        const MonoidAlgebraElement& b, double q,
                                        double tolerance = 1e-12);

/// One fibre point of mu : X(C) -> Delta(R): the monomial coordinate values
/// z^F = exp(eps * (-F(b)) + i <phase, dF>) with eps = ln q < 0.
struct FibrationSample {
    QVec base_point;
    std::vector<double> phase;
    std::vector<AffineFunction> generators; // module generators, sup = 0
    std::vector<std::complex<double>> coordinate_values;
};

FibrationSample fibration_sample(const Polyhedron& delta, double q, const QVec& base,
                                 const std::vector<double>& phase);

/// Required phase dimension: the rank of the bounded slope lattice.
std::size_t phase_rank(const Polyhedron& delta);

/// Recovers the base point of a sample from the coordinate magnitudes.
std::vector<double> mu(const Polyhedron& delta, const FibrationSample& sample, double q);

/// A Mumford pair (N, Y): lattice rank plus period generators, optionally a
/// monomial cocycle (one affine function per generator).
struct MumfordPair {
    std::size_t rank = 0;
    QMat y_generators;
    std::vector<AffineFunction> cocycle; // empty or one entry per generator
};

struct MumfordModel {
    Collage torus;
    bool proper = false, separated = false, overconvergent = false;
    bool geometrically_connected = false;
    QMat monodromy_translations;
};

/// Builds the compact affine torus and certifies the group-manifold
/// properties. Throws RankDeficient on degenerate generators.
MumfordModel mumford_build(const MumfordPair& p);

struct PicDecomposition {
    QVec translation_part;    // constants, one per generator (Hom(Y, H))
    IMat slope_part;          // differentials, one per generator (Hom(Y, Lambda))
    bool metrisable = false;  // translation part vanishes
};

PicDecomposition pic_decompose(const MumfordPair& p);

} // namespace collage
