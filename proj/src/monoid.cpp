#include "collage/monoid.hpp"

#include <algorithm>
#include <set>

#include "collage/errors.hpp"

namespace collage {

namespace {

bool is_zero(const IVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

void enumerate_box(const IVec& bound, IVec& current, std::size_t i,
                   const Cone& cone, IMat& out) {
    if (i == bound.size()) {
        if (!is_zero(current) && cone.contains(current)) out.push_back(current);
        return;
    }
    for (Int x = -bound[i]; x <= bound[i]; ++x) {
        current[i] = x;
        enumerate_box(bound, current, i + 1, cone, out);
    }
}

} // namespace

IMat hilbert_basis(const Cone& c) {
    if (!c.is_pointed())
        throw NotStronglyConvex("Hilbert basis requires a pointed cone");
    if (c.rays().empty()) return {};
    std::size_t n = c.ambient_dim();

    // Every irreducible lattice point lies in the fundamental parallelepiped
    // of some simplicial subcone spanned by extreme rays, so its coordinates
    // are bounded by the sum of the rays' coordinate magnitudes.
    IVec bound(n, 0);
    for (const auto& r : c.rays())
        for (std::size_t i = 0; i < n; ++i) bound[i] += abs(r[i]);

    IMat candidates;
    IVec current(n, 0);
    enumerate_box(bound, current, 0, c, candidates);

    IMat basis;
    for (const auto& x : candidates) {
        bool reducible = false;
        for (const auto& y : candidates) {
            if (y == x) continue;
            IVec z = sub(x, y);
            if (!is_zero(z) && c.contains(z)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) basis.push_back(x);
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

std::optional<IVec> integer_preimage(const IMat& proj, const IVec& target,
                                     std::size_t source_dim) {
    if (proj.empty())
        return target.empty() ? std::optional<IVec>(IVec(source_dim, 0)) : std::nullopt;
    SmithResult s = smith_normal_form(proj);
    IVec rhs = matvec(s.u, target);
    std::size_t rows = proj.size(), cols = source_dim;
    IVec y(cols, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        Int d = (i < cols) ? s.d[i][i] : Int(0);
        if (d == 0) {
            if (rhs[i] != 0) return std::nullopt;
        } else {
            if (rhs[i] % d != 0) return std::nullopt;
            y[i] = rhs[i] / d;
        }
    }
    return matvec(s.v, y);
}

IMat cone_monoid_generators(const Cone& c) {
    std::size_t n = c.ambient_dim();
    IMat gens;
    for (const auto& l : c.lineality()) {
        gens.push_back(l);
        gens.push_back(scale(l, Int(-1)));
    }
    if (!c.rays().empty()) {
        if (c.is_pointed()) {
            for (auto& h : hilbert_basis(c)) gens.push_back(std::move(h));
        } else {
            IMat proj = quotient_projection(c.lineality(), n);
            IMat projected;
            for (const auto& r : c.rays()) {
                IVec pr = matvec(proj, r);
                if (!is_zero(pr)) projected.push_back(primitive(pr));
            }
            Cone quotient = Cone::from_generators(projected, {}, proj.size());
            IMat lin_hnf = hermite_normal_form(c.lineality()).first;
            for (const auto& h : hilbert_basis(quotient)) {
                auto lift = integer_preimage(proj, h, n);
                gens.push_back(reduce_mod_lattice(*lift, lin_hnf));
            }
        }
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return gens;
}

BoundedAffineMonoid bounded_affine_monoid(const Polyhedron& p) {
    if (!p.is_strongly_convex())
        throw NotStronglyConvex("quotient by the lineality space first");
    BoundedAffineMonoid out;
    out.bounded_slopes = p.recession_cone().polar();

    auto normalise = [&](const IVec& slope) {
        Rational s = *p.sup(AffineFunction{slope, Rational(0)});
        return AffineFunction{slope, -s};
    };

    for (const auto& m : cone_monoid_generators(out.bounded_slopes))
        out.module_generators.push_back(normalise(m));

    // Aff+ needs generators whose normalisations add exactly: the support
    // function is linear precisely on the cones of the normal fan, so take
    // monoid generators of every vertex cone.
    IMat eq_slopes;
    for (const auto& e : p.equations()) eq_slopes.push_back(e.slope);
    std::set<AffineFunction> gens;
    for (const Face& f : p.faces()) {
        if (f.dim != 0) continue;
        IMat active;
        for (auto fi : f.active_facets) active.push_back(p.facets()[fi].slope);
        Cone vertex_cone = Cone::from_generators(active, eq_slopes, p.ambient_dim());
        for (const auto& m : cone_monoid_generators(vertex_cone))
            gens.insert(normalise(m));
    }
    out.nonpositive_generators.assign(gens.begin(), gens.end());
    return out;
}

} // namespace collage
