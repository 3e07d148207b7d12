#pragma once

#include <compare>
#include <string>

#include "collage/extended.hpp"
#include "collage/linalg.hpp"

namespace collage {

/// An affine function F(x) = slope . x + constant with integral slope and
/// rational constant; the element of Aff(N, H).
struct AffineFunction {
    IVec slope;
    Rational constant;

    AffineFunction() = default;
    AffineFunction(IVec s, Rational c) : slope(std::move(s)), constant(std::move(c)) {}

    std::size_t dim() const { return slope.size(); }
    const IVec& differential() const { return slope; }

    Rational operator()(const QVec& p) const { return dot(slope, p) + constant; }

    AffineFunction operator+(const AffineFunction& o) const;
    AffineFunction operator-(const AffineFunction& o) const;
    AffineFunction operator-() const;
    AffineFunction scaled(const Int& k) const;

    bool operator==(const AffineFunction& o) const = default;
    /// Lexicographic on (slope, constant); the canonical tie-break order.
    std::strong_ordering operator<=>(const AffineFunction& o) const;

    bool is_constant() const { return vector_gcd(slope) == 0; }

    std::string to_string() const;
};

/// Evaluation over extended scalars. -infinity in a coordinate propagates
/// through positive slope entries; a negative slope entry against -infinity
/// would be +infinity, so mixing the two (or a bare +infinity) is a hard
/// IndeterminateValue error.
ExtendedScalar evaluate(const AffineFunction& f, const EVec& p);

/// An affine map x -> M x + b between H-affine spaces, with integral linear
/// part so that pullbacks of affine functions stay integral-sloped.
struct AffineMap {
    IMat matrix;    // rows = target dim, cols = source dim
    QVec translation;

    AffineMap() = default;
    AffineMap(IMat m, QVec t)
        : matrix(std::move(m)), translation(std::move(t)),
          source_dim_(matrix.empty() ? 0 : matrix[0].size()) {}
    /// For maps with zero-dimensional target the matrix is empty and the
    /// source dimension must be given explicitly.
    AffineMap(IMat m, QVec t, std::size_t source_dim)
        : matrix(std::move(m)), translation(std::move(t)), source_dim_(source_dim) {}

    static AffineMap identity(std::size_t n);
    static AffineMap translation_by(const QVec& t);

    std::size_t source_dim() const { return source_dim_; }
    std::size_t target_dim() const { return matrix.size(); }

    QVec operator()(const QVec& p) const;

    /// this o other (apply `other` first).
    AffineMap compose(const AffineMap& other) const;

    /// F o this, an affine function on the source.
    AffineFunction pullback(const AffineFunction& f) const;

    bool is_unimodular() const;
    /// Inverse of a unimodular square map; throws RankDeficient otherwise.
    AffineMap inverse() const;

    bool operator==(const AffineMap& o) const {
        return matrix == o.matrix && translation == o.translation &&
               source_dim_ == o.source_dim_;
    }

private:
    std::size_t source_dim_ = 0;
};

} // namespace collage
