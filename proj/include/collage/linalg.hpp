#pragma once

#include <optional>
#include <utility>

#include "collage/rational.hpp"

namespace collage {

// Dense exact linear algebra on small matrices. Matrices are row-major
// vectors of rows; all routines are pure.

Int dot(const IVec& a, const IVec& b);
Rational dot(const IVec& a, const QVec& b);
Rational dot(const QVec& a, const QVec& b);

IVec add(const IVec& a, const IVec& b);
QVec add(const QVec& a, const QVec& b);
IVec sub(const IVec& a, const IVec& b);
QVec sub(const QVec& a, const QVec& b);
IVec scale(const IVec& a, const Int& c);
QVec scale(const QVec& a, const Rational& c);
QVec to_rational(const IVec& a);

IMat identity_matrix(std::size_t n);
IMat transpose(const IMat& m);
IMat matmul(const IMat& a, const IMat& b);
IVec matvec(const IMat& a, const IVec& x);
QVec matvec(const IMat& a, const QVec& x);
QVec matvec(const QMat& a, const QVec& x);

/// Divides out the gcd so the vector is primitive; zero stays zero.
IVec primitive(const IVec& v);

/// Clears denominators and reduces to a primitive integer vector.
IVec primitive(const QVec& v);

std::size_t rank(QMat m);

/// Determinant of a square integer matrix (fraction-free Gauss).
Int determinant(const IMat& m);

/// Exact inverse of a square rational matrix; nullopt when singular.
std::optional<QMat> inverse(const QMat& m);

/// Row-style Hermite normal form: returns (H, U) with U unimodular,
/// U*M = H, H in row echelon form with positive pivots and entries above
/// each pivot reduced into [0, pivot).
std::pair<IMat, IMat> hermite_normal_form(const IMat& m);

struct SmithResult {
    IMat u, d, v; // u*m*v = d, u and v unimodular, d diagonal, d_i | d_{i+1}
};

SmithResult smith_normal_form(const IMat& m);

/// Basis of the saturated integer kernel {x : M x = 0} (columns as rows of
/// the result). Empty matrix means trivial kernel.
IMat integer_kernel(const IMat& m, std::size_t ncols);

struct AffineSolution {
    QVec point;  // one particular solution
    QMat kernel; // basis of the homogeneous solution space
};

/// Exact solution set of A x = b; nullopt when inconsistent.
std::optional<AffineSolution> solve_rational(const QMat& a, const QVec& b);

/// For a saturated sublattice L of Z^n (basis rows), a projection matrix
/// P (rows are integer covectors) such that P has full row rank n-k,
/// ker P = span L, and P maps Z^n onto Z^{n-k}.
IMat quotient_projection(const IMat& lattice_basis, std::size_t n);

/// Reduces v modulo the lattice spanned by the rows of `basis` (which must
/// be in HNF): subtracts integer multiples of basis rows so that the entry
/// at each pivot column lies in [0, pivot).
IVec reduce_mod_lattice(IVec v, const IMat& hnf_basis);

/// Integer solution x of x * M = target (row convention) where M rows span
/// a lattice; nullopt when target is not in the row lattice.
std::optional<IVec> solve_in_lattice(const IMat& rows, const IVec& target);

} // namespace collage
