#include "collage/points.hpp"

#include <algorithm>
#include <functional>

#include "collage/errors.hpp"

namespace collage {

namespace {

bool is_zero(const IVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

/// Saturated lattice spanned by the rows.
IMat saturated_span(const IMat& rows, std::size_t n) {
    if (rows.empty()) return {};
    IMat ortho = integer_kernel(rows, n);
    return integer_kernel(ortho, n);
}

QMat to_qmat(const IMat& m) {
    QMat out;
    for (const auto& r : m) out.push_back(to_rational(r));
    return out;
}

} // namespace

int FlagValue::lex_sign() const {
    if (height != 0) return height > 0 ? 1 : -1;
    for (const auto& p : pairings) {
        if (p != 0) return p > 0 ? 1 : -1;
    }
    return 0;
}

FlagValue flag_value(const AffineFunction& f, const QVec& y, const OrientedFlag& flag) {
    FlagValue v;
    v.height = f(y);
    for (const auto& u : flag.directions) v.pairings.push_back(dot(f.slope, u));
    return v;
}

bool flag_valid(const Polyhedron& delta, const QVec& y, const OrientedFlag& flag) {
    if (!delta.contains(y)) return false;
    QMat dirs = to_qmat(flag.directions);
    if (rank(dirs) != flag.directions.size()) return false;
    for (const auto& u : flag.directions) {
        if (u.size() != delta.ambient_dim() || is_zero(u)) return false;
        if (primitive(u) != u) return false;
    }
    for (const auto& f : delta.inequalities())
        if (flag_value(f, y, flag).lex_sign() > 0) return false;
    return true;
}

OrientedFlag canonicalize_flag(const OrientedFlag& flag) {
    OrientedFlag out;
    std::size_t n = flag.directions.empty() ? 0 : flag.directions[0].size();
    for (const auto& u : flag.directions) {
        IMat prefix_lattice = saturated_span(out.directions, n);
        IMat hnf = prefix_lattice.empty() ? IMat{} : hermite_normal_form(prefix_lattice).first;
        // Project away the prefix span, rescale primitive, and lift back
        // reduced: the canonical representative of the half-space.
        IMat proj = quotient_projection(prefix_lattice, n);
        IVec image = matvec(proj, u);
        IVec prim = primitive(image);
        auto lift = integer_preimage(proj, prim, n);
        IVec canon = reduce_mod_lattice(*lift, hnf);
        out.directions.push_back(std::move(canon));
    }
    return out;
}

bool specializes(const OrientedFlag& a, const OrientedFlag& b) {
    OrientedFlag ca = canonicalize_flag(a), cb = canonicalize_flag(b);
    if (ca.directions.size() > cb.directions.size()) return false;
    for (std::size_t i = 0; i < ca.directions.size(); ++i)
        if (ca.directions[i] != cb.directions[i]) return false;
    return true;
}

LocalIntegers local_integers(const Polyhedron& delta, const QVec& y) {
    auto face = delta.face_containing(y);
    if (!face) throw PointOutside("base point is not in the polyhedron");
    IMat active;
    for (auto fi : delta.faces()[*face].active_facets)
        active.push_back(delta.facets()[fi].slope);
    IMat eq;
    for (const auto& e : delta.equations()) eq.push_back(e.slope);
    Cone conormal = Cone::from_generators(active, eq, delta.ambient_dim());
    LocalIntegers out;
    for (const auto& v : cone_monoid_generators(conormal))
        out.vanishing_generators.push_back({v, -dot(v, y)});
    std::sort(out.vanishing_generators.begin(), out.vanishing_generators.end());
    return out;
}

FlagValuation flag_valuation(const Polyhedron& delta, const QVec& y,
                             const OrientedFlag& flag) {
    if (!flag_valid(delta, y, flag))
        throw InvalidFlag("flag is not contained in the polyhedron at this point");
    FlagValuation out;
    LocalIntegers li = local_integers(delta, y);
    std::vector<AffineFunction> gens = li.vanishing_generators;
    gens.push_back({IVec(delta.ambient_dim(), 0), Rational(-1)});
    for (const auto& g : gens) {
        FlagValue v = flag_value(g, y, flag);
        if (v.lex_sign() > 0)
            throw InvalidFlag("valuation positive on a local integer");
        out.certificate.push_back(std::move(v));
    }
    // Image of the bounded slopes under the pairings with the flag.
    Cone lambda = delta.recession_cone().polar();
    IMat gens_l = lambda.rays();
    for (const auto& l : lambda.lineality()) gens_l.push_back(l);
    IMat lattice = saturated_span(gens_l, delta.ambient_dim());
    IMat pairing_rows;
    for (const auto& b : lattice) {
        IVec row;
        for (const auto& u : flag.directions) row.push_back(dot(b, u));
        pairing_rows.push_back(std::move(row));
    }
    if (!pairing_rows.empty()) {
        IMat h = hermite_normal_form(pairing_rows).first;
        while (!h.empty() && is_zero(h.back())) h.pop_back();
        out.image_lattice = h;
    }
    SmithResult s = smith_normal_form(out.image_lattice);
    std::size_t units = 0;
    for (std::size_t i = 0; i < std::min(s.d.size(), flag.length()); ++i)
        if (i < (s.d.empty() ? 0 : s.d[0].size()) && (s.d[i][i] == 1 || s.d[i][i] == -1))
            ++units;
    out.surjective = units == flag.length();
    return out;
}

std::vector<OrientedFlag> enumerate_flags(const Polyhedron& delta, const QVec& y,
                                          std::size_t d_max, int window) {
    if (!delta.contains(y)) throw PointOutside("base point is not in the polyhedron");
    std::size_t n = delta.ambient_dim();
    IMat candidates;
    IVec cur(n, 0);
    std::function<void(std::size_t)> gen = [&](std::size_t i) {
        if (i == n) {
            if (!is_zero(cur) && primitive(cur) == cur) candidates.push_back(cur);
            return;
        }
        for (int v = -window; v <= window; ++v) {
            cur[i] = v;
            gen(i + 1);
        }
        cur[i] = 0;
    };
    gen(0);
    std::sort(candidates.begin(), candidates.end());

    std::vector<OrientedFlag> out;
    std::vector<OrientedFlag> frontier{OrientedFlag{}};
    out.push_back(OrientedFlag{});
    for (std::size_t d = 1; d <= d_max && !frontier.empty(); ++d) {
        std::vector<OrientedFlag> next;
        for (const auto& base : frontier) {
            for (const auto& u : candidates) {
                OrientedFlag f = base;
                f.directions.push_back(u);
                QMat rows = to_qmat(f.directions);
                if (rank(rows) != f.directions.size()) continue;
                if (!flag_valid(delta, y, f)) continue;
                OrientedFlag canon = canonicalize_flag(f);
                bool fresh = std::find(next.begin(), next.end(), canon) == next.end();
                if (fresh) next.push_back(canon);
            }
        }
        for (const auto& f : next) out.push_back(f);
        frontier = std::move(next);
    }
    return out;
}

TypeTriple classify(const Polyhedron& delta, const ExtendedPoint& p,
                    const OrientedFlag& flag, const IrrationalTable& table) {
    MembershipResult loc = membership(delta, p, table);
    if (loc.kind == MembershipResult::Kind::Outside)
        throw PointOutside("point is not in the polyhedron");

    TypeTriple t;
    EVec coords = p.coords;
    const Polyhedron* working = &delta;
    std::vector<InfiniteFace> strata;
    if (loc.kind == MembershipResult::Kind::OnInfiniteFace) {
        strata = infinite_faces(delta);
        const InfiniteFace& s = strata[loc.infinite_face_index];
        t.d_i = delta.dim() - s.quotient.dim();
        EVec finite = coords;
        for (auto& c : finite)
            if (c.is_neg_infinity()) c = ExtendedScalar(Rational(0));
        EVec projected;
        for (const auto& row : s.projection.matrix)
            projected.push_back(evaluate(AffineFunction{row, Rational(0)}, finite));
        coords = std::move(projected);
        working = &strata[loc.infinite_face_index].quotient;
    }

    // Rational rank: Q-rank of the irrational coefficient matrix.
    std::size_t gens = table.size();
    QMat coeffs;
    for (const auto& c : coords) {
        QVec row(gens, Rational(0));
        for (const auto& [k, v] : c.irrational_coeffs()) row[k] = v;
        coeffs.push_back(std::move(row));
    }
    t.d_iii = rank(coeffs);

    t.d_ii = flag.length();
    if (flag.length() > 0) {
        if (t.d_iii > 0)
            throw InvalidFlag("flags at irrational points are not supported; classify "
                              "the rational part instead");
        QVec y;
        for (const auto& c : coords) y.push_back(c.finite_part());
        if (!flag_valid(*working, y, flag))
            throw InvalidFlag("flag is not valid at the rational part of the point");
    }
    return t;
}

FlagSeparation separate_flags(const Polyhedron& delta, const QVec& y,
                              const OrientedFlag& a_raw, const OrientedFlag& b_raw) {
    OrientedFlag a = canonicalize_flag(a_raw), b = canonicalize_flag(b_raw);
    if (a == b)
        throw InvalidFlag("flags coincide; nothing separates them");
    if (!flag_valid(delta, y, a) || !flag_valid(delta, y, b))
        throw InvalidFlag("both flags must be valid at the point");
    std::size_t n = delta.ambient_dim();

    std::size_t k = 0;
    while (k < a.length() && k < b.length() && a.directions[k] == b.directions[k]) ++k;
    IMat prefix(a.directions.begin(), a.directions.begin() + static_cast<long>(k));
    // Functionals vanishing on the prefix directions.
    IMat kernel = integer_kernel(prefix, n);

    auto finish = [&](const IVec& w, bool first_in) {
        std::vector<AffineFunction> sys = delta.inequalities();
        sys.push_back({w, -dot(w, y)});
        FlagSeparation out{canonicalize(std::move(sys), n), first_in};
        return out;
    };

    if (k == a.length() || k == b.length()) {
        // One flag extends the other; cut against the first extra direction.
        bool a_shorter = k == a.length();
        const IVec& u = (a_shorter ? b : a).directions[k];
        for (const auto& kappa : kernel) {
            Int t = dot(kappa, u);
            if (t == 0) continue;
            IVec w = t > 0 ? kappa : scale(kappa, Int(-1));
            return finish(w, a_shorter); // separator contains the shorter flag
        }
        throw InvalidFlag("no separating functional exists (flags not independent)");
    }

    const IVec& u = a.directions[k];
    const IVec& v = b.directions[k];
    // Want w with w.prefix = 0, w.u < 0 < w.v .
    for (int c1 = -6; c1 <= 6; ++c1) {
        for (int c2 = -6; c2 <= 6; ++c2) {
            for (std::size_t i = 0; i < kernel.size(); ++i) {
                for (std::size_t j = i; j < kernel.size(); ++j) {
                    IVec w = add(scale(kernel[i], Int(c1)), scale(kernel[j], Int(c2)));
                    if (is_zero(w)) continue;
                    if (dot(w, u) < 0 && dot(w, v) > 0) return finish(w, true);
                    if (dot(w, u) > 0 && dot(w, v) < 0) return finish(w, false);
                }
            }
        }
    }
    throw InvalidFlag("no separating functional found in the search window");
}

} // namespace collage
