#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "collage/errors.hpp"

namespace collage {

// All exact arithmetic in the library runs on arbitrary-precision integers
// and rationals. cpp_rational keeps fractions in lowest terms with a
// positive denominator, which is exactly the Scalar invariant.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IVec = std::vector<Int>;
using QVec = std::vector<Rational>;
using IMat = std::vector<IVec>;
using QMat = std::vector<QVec>;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign(const Int& x) { return x.sign(); }
inline int sign(const Rational& q) { return num(q).sign(); }

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int floor(const Rational& q) { return floor_div(num(q), den(q)); }
inline Int ceil(const Rational& q) { return -floor(-q); }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

/// gcd of all entries, zero for the zero vector.
inline Int vector_gcd(const IVec& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    return g;
}

inline std::string to_string(const Int& x) { return x.str(); }

/// Canonical "p/q" form; integers are printed without the denominator.
inline std::string to_string(const Rational& q) {
    if (den(q) == 1) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

/// Parses "p" or "p/q" exactly. Throws SyntaxError on malformed input.
inline Rational parse_rational(const std::string& s) {
    auto bad = [&] { throw SyntaxError("malformed rational '" + s + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int p(s.substr(0, slash)), q(s.substr(slash + 1));
        if (q == 0) bad();
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rational();
}

} // namespace collage
