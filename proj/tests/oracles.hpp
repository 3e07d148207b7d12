#pragma once

// Independent test oracles. Everything here is deliberately naive and shares
// no code path with the library's double-description pipeline: feasibility
// goes through Fourier-Motzkin elimination, faces through raw active-set
// enumeration, monoid membership through bounded search.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "collage/affine.hpp"
#include "collage/linalg.hpp"

namespace oracles {

using namespace collage;

struct LinIneq {
    QVec slope;
    Rational constant; // slope . x + constant <= 0  (or < 0 when strict)
    bool strict = false;
};

/// Fourier-Motzkin feasibility over the rationals, with strict support.
inline bool fm_feasible(std::vector<LinIneq> sys, std::size_t n) {
    for (std::size_t col = n; col-- > 0;) {
        std::vector<LinIneq> lower, upper, rest;
        for (auto& q : sys) {
            if (q.slope[col] > 0)
                upper.push_back(q);
            else if (q.slope[col] < 0)
                lower.push_back(q);
            else
                rest.push_back(q);
        }
        for (const auto& lo : lower)
            for (const auto& up : upper) {
                Rational a = -lo.slope[col], b = up.slope[col]; // both positive
                LinIneq comb;
                comb.slope.assign(lo.slope.size(), Rational(0));
                for (std::size_t j = 0; j < lo.slope.size(); ++j)
                    comb.slope[j] = lo.slope[j] * b + up.slope[j] * a;
                comb.constant = lo.constant * b + up.constant * a;
                comb.strict = lo.strict || up.strict;
                rest.push_back(std::move(comb));
            }
        sys = std::move(rest);
    }
    for (const auto& q : sys) {
        if (q.strict ? (q.constant >= 0) : (q.constant > 0)) return false;
    }
    return true;
}

inline std::vector<LinIneq> to_system(const std::vector<AffineFunction>& fns) {
    std::vector<LinIneq> sys;
    for (const auto& f : fns) {
        LinIneq q;
        q.slope = to_rational(f.slope);
        q.constant = f.constant;
        sys.push_back(std::move(q));
    }
    return sys;
}

/// Is F <= 0 redundant within the system? (The system without F, plus F > 0,
/// must be infeasible.)
inline bool redundant(const std::vector<AffineFunction>& sys, std::size_t drop,
                      std::size_t n) {
    std::vector<LinIneq> fm;
    for (std::size_t i = 0; i < sys.size(); ++i)
        if (i != drop) fm.push_back({to_rational(sys[i].slope), sys[i].constant, false});
    LinIneq flipped{to_rational(scale(sys[drop].slope, Int(-1))), -sys[drop].constant, true};
    fm.push_back(std::move(flipped));
    return !fm_feasible(std::move(fm), n);
}

/// Brute-force face census: every feasible active subset of the inequality
/// list, collapsed to distinct faces by their solution sets on a probe grid
/// is too flaky; instead identify a face with the set of inequalities that
/// become implied equalities. Returns the number of distinct nonempty faces.
inline std::size_t face_count(const std::vector<AffineFunction>& ineqs, std::size_t n) {
    std::size_t m = ineqs.size();
    std::set<std::vector<bool>> faces;
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
        std::vector<LinIneq> sys = to_system(ineqs);
        for (std::size_t i = 0; i < m; ++i) {
            if (!(mask >> i & 1)) continue;
            sys.push_back({to_rational(scale(ineqs[i].slope, Int(-1))), -ineqs[i].constant, false});
        }
        if (!fm_feasible(sys, n)) continue;
        // Canonical label: which inequalities are forced to equality.
        std::vector<bool> label(m);
        for (std::size_t i = 0; i < m; ++i) {
            auto relaxed = sys;
            relaxed.push_back({to_rational(ineqs[i].slope), ineqs[i].constant, true});
            label[i] = !fm_feasible(relaxed, n);
        }
        faces.insert(label);
    }
    return faces.size();
}

/// All rationals p/q in [lo, hi] with 1 <= q <= max_den.
inline std::vector<Rational> farey_points(const Rational& lo, const Rational& hi,
                                          int max_den) {
    std::set<Rational> pts;
    for (int q = 1; q <= max_den; ++q) {
        Int a = ceil(lo * q), b = floor(hi * q);
        for (Int p = a; p <= b; ++p) pts.insert(Rational(p, q));
    }
    return {pts.begin(), pts.end()};
}

/// Bounded-depth membership oracle: is F a sum of generators (nonnegative
/// integer combination) plus a nonpositive constant? Memoized on the
/// remaining function so repeated states across branches are shared.
namespace detail {
struct AffKey {
    IVec slope;
    Rational constant;
    bool operator<(const AffKey& o) const {
        if (slope != o.slope) return slope < o.slope;
        return constant < o.constant;
    }
};
} // namespace detail

inline bool generated_over_nonpositive_impl(
    const AffineFunction& f, const std::vector<AffineFunction>& gens, int depth,
    std::map<detail::AffKey, int>& failed_at) {
    if (f.constant <= 0 && vector_gcd(f.slope) == 0) return true;
    if (depth == 0) return false;
    detail::AffKey key{f.slope, f.constant};
    auto it = failed_at.find(key);
    if (it != failed_at.end() && it->second >= depth) return false;
    for (const auto& g : gens) {
        AffineFunction rest = f - g;
        if (generated_over_nonpositive_impl(rest, gens, depth - 1, failed_at)) return true;
    }
    failed_at[key] = depth;
    return false;
}

inline bool generated_over_nonpositive(const AffineFunction& f,
                                       const std::vector<AffineFunction>& gens,
                                       int depth) {
    std::map<detail::AffKey, int> failed_at;
    return generated_over_nonpositive_impl(f, gens, depth, failed_at);
}

} // namespace oracles
