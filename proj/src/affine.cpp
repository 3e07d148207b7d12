#include "collage/affine.hpp"

#include "collage/errors.hpp"

namespace collage {

AffineFunction AffineFunction::operator+(const AffineFunction& o) const {
    return {add(slope, o.slope), constant + o.constant};
}

AffineFunction AffineFunction::operator-(const AffineFunction& o) const {
    return {sub(slope, o.slope), constant - o.constant};
}

AffineFunction AffineFunction::operator-() const {
    return {scale(slope, Int(-1)), -constant};
}

AffineFunction AffineFunction::scaled(const Int& k) const {
    return {scale(slope, k), constant * Rational(k)};
}

std::strong_ordering AffineFunction::operator<=>(const AffineFunction& o) const {
    if (slope.size() != o.slope.size())
        return slope.size() <=> o.slope.size();
    for (std::size_t i = 0; i < slope.size(); ++i) {
        if (slope[i] < o.slope[i]) return std::strong_ordering::less;
        if (slope[i] > o.slope[i]) return std::strong_ordering::greater;
    }
    if (constant < o.constant) return std::strong_ordering::less;
    if (constant > o.constant) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string AffineFunction::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < slope.size(); ++i) {
        if (i) s += ",";
        s += collage::to_string(slope[i]);
    }
    s += ")|" + collage::to_string(constant);
    return s;
}

ExtendedScalar evaluate(const AffineFunction& f, const EVec& p) {
    if (f.slope.size() != p.size())
        throw DimensionMismatch("evaluate: slope has " + std::to_string(f.slope.size()) +
                                " entries, point has " + std::to_string(p.size()));
    bool has_minus = false, has_plus = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!p[i].is_neg_infinity() || f.slope[i] == 0) continue;
        (f.slope[i] > 0 ? has_minus : has_plus) = true;
    }
    if (has_plus)
        throw IndeterminateValue(has_minus
                                     ? "mixed-sign infinite contributions"
                                     : "positively infinite value is not representable");
    if (has_minus) return ExtendedScalar::neg_infinity();
    ExtendedScalar acc{f.constant};
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (f.slope[i] == 0) continue;
        acc = acc + p[i] * Rational(f.slope[i]);
    }
    return acc;
}

AffineMap AffineMap::identity(std::size_t n) {
    return {identity_matrix(n), QVec(n, Rational(0))};
}

AffineMap AffineMap::translation_by(const QVec& t) {
    return {identity_matrix(t.size()), t};
}

QVec AffineMap::operator()(const QVec& p) const {
    return add(matvec(matrix, p), translation);
}

AffineMap AffineMap::compose(const AffineMap& other) const {
    return {matmul(matrix, other.matrix), add(matvec(matrix, other.translation), translation),
            other.source_dim()};
}

AffineFunction AffineMap::pullback(const AffineFunction& f) const {
    IVec s(source_dim(), 0);
    for (std::size_t j = 0; j < source_dim(); ++j)
        for (std::size_t i = 0; i < target_dim(); ++i) s[j] += f.slope[i] * matrix[i][j];
    return {s, dot(f.slope, translation) + f.constant};
}

bool AffineMap::is_unimodular() const {
    if (matrix.size() != source_dim()) return false;
    Int d = determinant(matrix);
    return d == 1 || d == -1;
}

AffineMap AffineMap::inverse() const {
    if (!is_unimodular())
        throw RankDeficient("affine map is not a lattice isomorphism");
    std::size_t n = matrix.size();
    QMat qm(n, QVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) qm[i][j] = Rational(matrix[i][j]);
    QMat qinv = *collage::inverse(qm); // unimodular, hence invertible with integer entries
    IMat m(n, IVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = num(qinv[i][j]);
    AffineMap inv{m, QVec(n, Rational(0))};
    inv.translation = scale(matvec(inv.matrix, translation), Rational(-1));
    return inv;
}

} // namespace collage
