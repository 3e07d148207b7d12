#include "collage/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "collage/double_description.hpp"
#include "collage/errors.hpp"

namespace collage {

namespace {

bool ivec_less(const IVec& a, const IVec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool qvec_less(const QVec& a, const QVec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Zeroes the pivot coordinates of v against an HNF lattice basis (over Q),
/// giving the canonical representative of v modulo the spanned subspace.
QVec reduce_point(QVec v, const IMat& hnf) {
    for (const IVec& row : hnf) {
        std::size_t p = 0;
        while (p < row.size() && row[p] == 0) ++p;
        if (p == row.size() || v[p] == 0) continue;
        Rational f = v[p] / Rational(row[p]);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * Rational(row[j]);
    }
    return v;
}

IVec reduce_direction(const IVec& r, const IMat& hnf) {
    return primitive(reduce_point(to_rational(r), hnf));
}

bool is_zero(const IVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

QMat affine_span_rows(const QMat& vertices, const IMat& rays, const IMat& lineality) {
    QMat rows;
    for (std::size_t i = 1; i < vertices.size(); ++i)
        rows.push_back(sub(vertices[i], vertices[0]));
    for (const auto& r : rays) rows.push_back(to_rational(r));
    for (const auto& l : lineality) rows.push_back(to_rational(l));
    return rows;
}

} // namespace

// ---------------------------------------------------------------------------
// Polyhedron construction

Polyhedron canonicalize(std::vector<AffineFunction> ineqs, std::size_t n) {
    std::vector<AffineFunction> norm;
    for (auto& f : ineqs) {
        if (f.slope.size() != n)
            throw DimensionMismatch("inequality slope length does not match ambient dimension");
        Int g = vector_gcd(f.slope);
        if (g == 0) {
            if (f.constant > 0)
                throw EmptyPolyhedron("constant inequality " + to_string(f.constant) + " <= 0 fails");
            continue;
        }
        IVec s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = f.slope[i] / g;
        norm.push_back({std::move(s), f.constant / Rational(g)});
    }
    std::sort(norm.begin(), norm.end());
    norm.erase(std::unique(norm.begin(), norm.end()), norm.end());

    // Homogenise: (x, t) with a.x + c t <= 0 and -t <= 0; generators with
    // t > 0 are vertices, t = 0 recession directions.
    QMat halfspaces;
    for (const auto& f : norm) {
        QVec row(n + 1);
        for (std::size_t i = 0; i < n; ++i) row[i] = Rational(f.slope[i]);
        row[n] = f.constant;
        halfspaces.push_back(std::move(row));
    }
    {
        QVec t_row(n + 1, Rational(0));
        t_row[n] = -1;
        halfspaces.push_back(std::move(t_row));
    }
    ConeGenerators cg = double_description(halfspaces, n + 1);

    Polyhedron p;
    p.n_ = n;
    IMat raw_rays;
    for (const auto& r : cg.rays) {
        if (r[n] > 0) {
            QVec v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = r[i] / r[n];
            p.vertices_.push_back(std::move(v));
        } else {
            IVec d = primitive(QVec(r.begin(), r.end() - 1));
            if (!is_zero(d)) raw_rays.push_back(std::move(d));
        }
    }
    if (p.vertices_.empty())
        throw EmptyPolyhedron("inequality system is infeasible");

    IMat slope_rows;
    for (const auto& f : norm) slope_rows.push_back(f.slope);
    p.lineality_ = integer_kernel(slope_rows, n);

    for (auto& v : p.vertices_) v = reduce_point(std::move(v), p.lineality_);
    std::sort(p.vertices_.begin(), p.vertices_.end(), qvec_less);
    p.vertices_.erase(std::unique(p.vertices_.begin(), p.vertices_.end()), p.vertices_.end());

    for (auto& r : raw_rays) {
        IVec d = reduce_direction(r, p.lineality_);
        if (!is_zero(d)) p.rays_.push_back(std::move(d));
    }
    std::sort(p.rays_.begin(), p.rays_.end(), ivec_less);
    p.rays_.erase(std::unique(p.rays_.begin(), p.rays_.end()), p.rays_.end());

    QMat span = affine_span_rows(p.vertices_, p.rays_, p.lineality_);
    p.dim_ = rank(span);

    // Saturated lattice of slopes vanishing on the whole polyhedron.
    IMat span_int;
    for (const auto& row : span) span_int.push_back(primitive(row));
    p.eq_slope_lattice_ = integer_kernel(span_int, n);

    for (const auto& row : p.eq_slope_lattice_) {
        Int g = vector_gcd(row);
        IVec s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = row[i] / g;
        Rational c = -dot(s, p.vertices_[0]);
        p.equations_.push_back({std::move(s), std::move(c)});
    }

    // Facets: irredundant inequalities, one canonical representative each.
    std::set<AffineFunction> facet_set;
    for (const auto& f : norm) {
        std::vector<std::size_t> av, ar;
        for (std::size_t i = 0; i < p.vertices_.size(); ++i)
            if (f(p.vertices_[i]) == 0) av.push_back(i);
        for (std::size_t i = 0; i < p.rays_.size(); ++i)
            if (dot(f.slope, p.rays_[i]) == 0) ar.push_back(i);
        if (av.empty()) continue; // not attained: redundant
        if (av.size() == p.vertices_.size() && ar.size() == p.rays_.size())
            continue; // implicit equality, already recorded
        QMat rows;
        for (std::size_t i = 1; i < av.size(); ++i)
            rows.push_back(sub(p.vertices_[av[i]], p.vertices_[av[0]]));
        for (auto i : ar) rows.push_back(to_rational(p.rays_[i]));
        for (const auto& l : p.lineality_) rows.push_back(to_rational(l));
        if (rank(rows) + 1 != p.dim_) continue; // lower-dimensional contact: redundant

        IVec s = reduce_mod_lattice(f.slope, p.eq_slope_lattice_);
        Rational c = -dot(s, p.vertices_[av[0]]);
        Int g = vector_gcd(s);
        if (g > 1) {
            for (auto& x : s) x /= g;
            c /= Rational(g);
        }
        facet_set.insert({std::move(s), std::move(c)});
    }
    p.facets_.assign(facet_set.begin(), facet_set.end());

    p.build_faces();
    return p;
}

Polyhedron from_generators(const QMat& vertices, const IMat& rays,
                           const IMat& lineality, std::size_t n) {
    if (vertices.empty())
        throw EmptyPolyhedron("generator description has no vertices");
    // Polar pass: functionals (a, c) with a.v + c <= 0, a.r <= 0, a.l = 0.
    QMat halfspaces;
    for (const auto& v : vertices) {
        QVec row = v;
        row.push_back(Rational(1));
        halfspaces.push_back(std::move(row));
    }
    for (const auto& r : rays) {
        QVec row = to_rational(r);
        row.push_back(Rational(0));
        halfspaces.push_back(std::move(row));
    }
    for (const auto& l : lineality) {
        QVec row = to_rational(l);
        row.push_back(Rational(0));
        halfspaces.push_back(row);
        for (auto& x : row) x = -x;
        halfspaces.push_back(std::move(row));
    }
    ConeGenerators polar = double_description(halfspaces, n + 1);
    std::vector<AffineFunction> ineqs;
    auto to_fn = [&](const QVec& row) {
        IVec w = primitive(row);
        IVec s(w.begin(), w.end() - 1);
        return AffineFunction{std::move(s), Rational(w[n])};
    };
    for (const auto& r : polar.rays) ineqs.push_back(to_fn(r));
    for (const auto& l : polar.lineality) {
        AffineFunction f = to_fn(l);
        ineqs.push_back(-f);
        ineqs.push_back(std::move(f));
    }
    // Inequalities with zero slope are the trivial (0, c<=0) ones; dropped by
    // canonicalize.
    return canonicalize(std::move(ineqs), n);
}

std::vector<AffineFunction> Polyhedron::inequalities() const {
    std::vector<AffineFunction> all = facets_;
    for (const auto& e : equations_) {
        all.push_back(e);
        all.push_back(-e);
    }
    return all;
}

void Polyhedron::build_faces() {
    std::size_t nv = vertices_.size(), nr = rays_.size(), nf = facets_.size();
    using Bits = std::vector<bool>;
    std::vector<Bits> incidence(nf, Bits(nv + nr, false));
    for (std::size_t f = 0; f < nf; ++f) {
        for (std::size_t i = 0; i < nv; ++i)
            if (facets_[f](vertices_[i]) == 0) incidence[f][i] = true;
        for (std::size_t i = 0; i < nr; ++i)
            if (dot(facets_[f].slope, rays_[i]) == 0) incidence[f][nv + i] = true;
    }

    auto closure = [&](const Bits& gens) {
        Bits result(nv + nr, true);
        bool any_facet = false;
        for (std::size_t f = 0; f < nf; ++f) {
            bool active = true;
            for (std::size_t g = 0; g < nv + nr && active; ++g)
                if (gens[g] && !incidence[f][g]) active = false;
            if (active) {
                any_facet = true;
                for (std::size_t g = 0; g < nv + nr; ++g)
                    if (!incidence[f][g]) result[g] = false;
            }
        }
        if (!any_facet) result = Bits(nv + nr, true);
        return result;
    };

    std::map<Bits, std::size_t> seen;
    std::vector<Bits> order;
    Bits top(nv + nr, true);
    seen[top] = 0;
    order.push_back(top);
    for (std::size_t head = 0; head < order.size(); ++head) {
        Bits cur = order[head];
        for (std::size_t f = 0; f < nf; ++f) {
            Bits child(nv + nr, false);
            bool has_vertex = false, same = true;
            for (std::size_t g = 0; g < nv + nr; ++g) {
                child[g] = cur[g] && incidence[f][g];
                if (child[g] != cur[g]) same = false;
                if (child[g] && g < nv) has_vertex = true;
            }
            if (same || !has_vertex) continue;
            child = closure(child);
            if (!seen.count(child)) {
                seen[child] = order.size();
                order.push_back(child);
            }
        }
    }

    for (const auto& gens : order) {
        Face face;
        for (std::size_t i = 0; i < nv; ++i)
            if (gens[i]) face.vertex_ids.push_back(i);
        for (std::size_t i = 0; i < nr; ++i)
            if (gens[nv + i]) face.ray_ids.push_back(i);
        for (std::size_t f = 0; f < nf; ++f) {
            bool active = true;
            for (std::size_t g = 0; g < nv + nr && active; ++g)
                if (gens[g] && !incidence[f][g]) active = false;
            if (active) face.active_facets.push_back(f);
        }
        QMat rows;
        for (std::size_t i = 1; i < face.vertex_ids.size(); ++i)
            rows.push_back(sub(vertices_[face.vertex_ids[i]], vertices_[face.vertex_ids[0]]));
        for (auto i : face.ray_ids) rows.push_back(to_rational(rays_[i]));
        for (const auto& l : lineality_) rows.push_back(to_rational(l));
        face.dim = rank(rows);
        faces_.push_back(std::move(face));
    }
    std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.vertex_ids != b.vertex_ids) return a.vertex_ids < b.vertex_ids;
        return a.ray_ids < b.ray_ids;
    });
}

const Face& Polyhedron::top_face() const { return faces_.back(); }

bool Polyhedron::face_leq(std::size_t f, std::size_t g) const {
    const Face& a = faces_[f];
    const Face& b = faces_[g];
    return std::includes(b.vertex_ids.begin(), b.vertex_ids.end(),
                         a.vertex_ids.begin(), a.vertex_ids.end()) &&
           std::includes(b.ray_ids.begin(), b.ray_ids.end(),
                         a.ray_ids.begin(), a.ray_ids.end());
}

Polyhedron Polyhedron::face_polyhedron(const Face& f) const {
    std::vector<AffineFunction> sys = inequalities();
    for (auto fi : f.active_facets) {
        sys.push_back(facets_[fi]);
        sys.push_back(-facets_[fi]);
    }
    return canonicalize(std::move(sys), n_);
}

bool Polyhedron::contains(const QVec& p) const {
    for (const auto& e : equations_)
        if (e(p) != 0) return false;
    for (const auto& f : facets_)
        if (f(p) > 0) return false;
    return true;
}

bool Polyhedron::contains(const Polyhedron& sub) const {
    for (const auto& v : sub.vertices_)
        if (!contains(v)) return false;
    auto dir_ok = [&](const IVec& d, bool both_signs) {
        for (const auto& e : equations_)
            if (dot(e.slope, d) != 0) return false;
        for (const auto& f : facets_) {
            Int s = dot(f.slope, d);
            if (s > 0 || (both_signs && s != 0)) return false;
        }
        return true;
    };
    for (const auto& r : sub.rays_)
        if (!dir_ok(r, false)) return false;
    for (const auto& l : sub.lineality_)
        if (!dir_ok(l, true)) return false;
    return true;
}

std::optional<std::size_t> Polyhedron::face_containing(const QVec& p) const {
    if (!contains(p)) return std::nullopt;
    std::vector<bool> gens(vertices_.size() + rays_.size(), true);
    for (std::size_t f = 0; f < facets_.size(); ++f) {
        if (facets_[f](p) != 0) continue;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (facets_[f](vertices_[i]) != 0) gens[i] = false;
        for (std::size_t i = 0; i < rays_.size(); ++i)
            if (dot(facets_[f].slope, rays_[i]) != 0) gens[vertices_.size() + i] = false;
    }
    std::vector<std::size_t> vs, rs;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (gens[i]) vs.push_back(i);
    for (std::size_t i = 0; i < rays_.size(); ++i)
        if (gens[vertices_.size() + i]) rs.push_back(i);
    for (std::size_t i = 0; i < faces_.size(); ++i)
        if (faces_[i].vertex_ids == vs && faces_[i].ray_ids == rs) return i;
    return std::nullopt; // unreachable for points of the polyhedron
}

QVec Polyhedron::relative_interior_point() const {
    QVec p(n_, Rational(0));
    for (const auto& v : vertices_) p = add(p, v);
    Rational inv = Rational(1) / Rational(Int(vertices_.size()));
    p = scale(p, inv);
    for (const auto& r : rays_) p = add(p, to_rational(r));
    return p;
}

Cone Polyhedron::recession_cone() const {
    return Cone::from_generators(rays_, lineality_, n_);
}

std::optional<Rational> Polyhedron::sup(const AffineFunction& f) const {
    for (const auto& r : rays_)
        if (dot(f.slope, r) > 0) return std::nullopt;
    for (const auto& l : lineality_)
        if (dot(f.slope, l) != 0) return std::nullopt;
    Rational best = f(vertices_[0]);
    for (std::size_t i = 1; i < vertices_.size(); ++i)
        best = std::max(best, f(vertices_[i]));
    return best;
}

std::string Polyhedron::to_string() const {
    std::string s = "{dim " + std::to_string(dim_) + " in R^" + std::to_string(n_);
    s += "; facets:";
    for (const auto& f : facets_) s += " " + f.to_string();
    if (!equations_.empty()) {
        s += "; equations:";
        for (const auto& e : equations_) s += " " + e.to_string();
    }
    s += "}";
    return s;
}

// ---------------------------------------------------------------------------
// Convenience builders

Polyhedron interval(const Rational& lo, const Rational& hi) {
    return canonicalize({{IVec{-1}, lo}, {IVec{1}, -hi}}, 1);
}

Polyhedron box(const QVec& lo, const QVec& hi) {
    std::size_t n = lo.size();
    std::vector<AffineFunction> sys;
    for (std::size_t i = 0; i < n; ++i) {
        IVec s(n, 0);
        s[i] = -1;
        sys.push_back({s, lo[i]});
        s[i] = 1;
        sys.push_back({s, -hi[i]});
    }
    return canonicalize(std::move(sys), n);
}

Polyhedron single_point(const QVec& p) {
    std::size_t n = p.size();
    std::vector<AffineFunction> sys;
    for (std::size_t i = 0; i < n; ++i) {
        IVec s(n, 0);
        s[i] = 1;
        sys.push_back({s, -p[i]});
        s[i] = -1;
        sys.push_back({s, p[i]});
    }
    return canonicalize(std::move(sys), n);
}

// ---------------------------------------------------------------------------
// Operations

std::optional<Polyhedron> intersect(const Polyhedron& a, const Polyhedron& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionMismatch("intersect: ambient dimensions differ");
    std::vector<AffineFunction> sys = a.inequalities();
    for (const auto& f : b.inequalities()) sys.push_back(f);
    try {
        return canonicalize(std::move(sys), a.ambient_dim());
    } catch (const EmptyPolyhedron&) {
        return std::nullopt;
    }
}

Polyhedron image(const Polyhedron& p, const AffineMap& f) {
    if (f.source_dim() != p.ambient_dim())
        throw DimensionMismatch("image: map source does not match polyhedron");
    QMat vertices;
    for (const auto& v : p.vertices()) vertices.push_back(f(v));
    IMat rays, lineality;
    for (const auto& r : p.rays()) {
        IVec d = matvec(f.matrix, r);
        if (!is_zero(d)) rays.push_back(primitive(d));
    }
    for (const auto& l : p.lineality()) {
        IVec d = matvec(f.matrix, l);
        if (!is_zero(d)) lineality.push_back(primitive(d));
    }
    return from_generators(vertices, rays, lineality, f.target_dim());
}

std::optional<Polyhedron> preimage(const Polyhedron& p, const AffineMap& f) {
    if (f.target_dim() != p.ambient_dim())
        throw DimensionMismatch("preimage: map target does not match polyhedron");
    std::vector<AffineFunction> sys;
    for (const auto& g : p.inequalities()) sys.push_back(f.pullback(g));
    try {
        return canonicalize(std::move(sys), f.source_dim());
    } catch (const EmptyPolyhedron&) {
        return std::nullopt;
    }
}

Polyhedron product(const Polyhedron& a, const Polyhedron& b) {
    std::size_t na = a.ambient_dim(), nb = b.ambient_dim();
    std::vector<AffineFunction> sys;
    for (const auto& f : a.inequalities()) {
        IVec s = f.slope;
        s.resize(na + nb, Int(0));
        sys.push_back({std::move(s), f.constant});
    }
    for (const auto& f : b.inequalities()) {
        IVec s(na, 0);
        s.insert(s.end(), f.slope.begin(), f.slope.end());
        sys.push_back({std::move(s), f.constant});
    }
    return canonicalize(std::move(sys), na + nb);
}

std::pair<Polyhedron, AffineMap> quotient_by_lineality(const Polyhedron& p) {
    if (p.is_strongly_convex())
        return {p, AffineMap::identity(p.ambient_dim())};
    IMat proj = quotient_projection(p.lineality(), p.ambient_dim());
    AffineMap f{proj, QVec(proj.size(), Rational(0)), p.ambient_dim()};
    return {image(p, f), f};
}

std::pair<std::size_t, Polyhedron> face_at(const Polyhedron& p, const IVec& v) {
    AffineFunction f{v, Rational(0)};
    std::optional<Rational> s = p.sup(f);
    if (!s)
        throw SlopeUnbounded("slope is not bounded above on the polyhedron");
    std::vector<AffineFunction> sys = p.inequalities();
    sys.push_back({v, -*s});
    sys.push_back({scale(v, Int(-1)), *s});
    Polyhedron face = canonicalize(std::move(sys), p.ambient_dim());
    std::size_t idx = *p.face_containing(face.relative_interior_point());
    return {idx, std::move(face)};
}

std::vector<std::pair<std::size_t, Cone>> normal_fan(const Polyhedron& p) {
    if (!p.is_strongly_convex())
        throw NotStronglyConvex("normal fan requires a strongly convex polyhedron");
    std::vector<std::pair<std::size_t, Cone>> fan;
    IMat eq_slopes;
    for (const auto& e : p.equations()) eq_slopes.push_back(e.slope);
    for (std::size_t i = 0; i < p.faces().size(); ++i) {
        IMat gens;
        for (auto fi : p.faces()[i].active_facets) gens.push_back(p.facets()[fi].slope);
        fan.emplace_back(i, Cone::from_generators(gens, eq_slopes, p.ambient_dim()));
    }
    return fan;
}

std::vector<InfiniteFace> infinite_faces(const Polyhedron& p) {
    if (!p.is_strongly_convex())
        throw NotStronglyConvex("infinite faces require a strongly convex polyhedron");
    std::vector<InfiniteFace> out;
    Cone rec = p.recession_cone();
    if (rec.is_trivial()) return out;
    for (const Cone& sigma : rec.faces()) {
        if (sigma.dim() == 0) continue;
        IMat ortho = integer_kernel(sigma.rays(), p.ambient_dim());
        IMat span_lattice = integer_kernel(ortho, p.ambient_dim());
        IMat proj = quotient_projection(span_lattice, p.ambient_dim());
        AffineMap map{proj, QVec(proj.size(), Rational(0)), p.ambient_dim()};
        Polyhedron quotient = image(p, map);
        out.push_back({sigma, std::move(map), std::move(quotient)});
    }
    return out;
}

Polyhedron convergence_polyhedron(const std::vector<AffineFunction>& generators,
                                  std::size_t n) {
    if (generators.empty())
        throw SemanticError("convergence polyhedron needs at least one generator");
    return canonicalize(generators, n);
}

// ---------------------------------------------------------------------------
// Membership in Delta(R_infty)

namespace {

/// Applies a linear integer map to extended-scalar coordinates.
EVec apply_rows(const IMat& rows, const EVec& p) {
    EVec out;
    out.reserve(rows.size());
    for (const auto& row : rows)
        out.push_back(evaluate(AffineFunction{row, Rational(0)}, p));
    return out;
}

/// Locates a finite extended point inside the polyhedron. Returns the index
/// of the minimal face containing it, or nullopt when outside.
std::optional<std::size_t> locate_finite(const Polyhedron& poly, const EVec& p,
                                         const IrrationalTable& table) {
    std::vector<bool> active(poly.facets().size(), false);
    for (const auto& e : poly.equations())
        if (evaluate(e, p).sign(table) != 0) return std::nullopt;
    for (std::size_t i = 0; i < poly.facets().size(); ++i) {
        int s = evaluate(poly.facets()[i], p).sign(table);
        if (s > 0) return std::nullopt;
        active[i] = (s == 0);
    }
    std::vector<std::size_t> vs, rs;
    for (std::size_t i = 0; i < poly.vertices().size(); ++i) {
        bool in = true;
        for (std::size_t f = 0; f < active.size() && in; ++f)
            if (active[f] && poly.facets()[f](poly.vertices()[i]) != 0) in = false;
        if (in) vs.push_back(i);
    }
    for (std::size_t i = 0; i < poly.rays().size(); ++i) {
        bool in = true;
        for (std::size_t f = 0; f < active.size() && in; ++f)
            if (active[f] && dot(poly.facets()[f].slope, poly.rays()[i]) != 0) in = false;
        if (in) rs.push_back(i);
    }
    for (std::size_t i = 0; i < poly.faces().size(); ++i)
        if (poly.faces()[i].vertex_ids == vs && poly.faces()[i].ray_ids == rs) return i;
    return std::nullopt;
}

std::set<std::size_t> ray_support(const Cone& c) {
    std::set<std::size_t> s;
    for (const auto& r : c.rays())
        for (std::size_t i = 0; i < r.size(); ++i)
            if (r[i] != 0) s.insert(i);
    return s;
}

} // namespace

MembershipResult membership(const Polyhedron& p, const ExtendedPoint& pt,
                            const IrrationalTable& table) {
    if (pt.coords.size() != p.ambient_dim())
        throw DimensionMismatch("point dimension does not match polyhedron");

    std::set<std::size_t> marked;
    for (std::size_t i = 0; i < pt.coords.size(); ++i)
        if (pt.coords[i].is_neg_infinity()) marked.insert(i);

    MembershipResult res;
    if (!pt.direction && marked.empty()) {
        auto face = locate_finite(p, pt.coords, table);
        if (!face) return res;
        res.kind = MembershipResult::Kind::InteriorOfFace;
        res.face_index = *face;
        return res;
    }

    std::vector<InfiniteFace> strata = infinite_faces(p);
    std::size_t chosen = strata.size();

    if (pt.direction) {
        if (!marked.empty())
            throw IndeterminateValue("explicit direction with -inf coordinates");
        const IVec& v = *pt.direction;
        if (is_zero(v))
            throw SemanticError("escape direction must be nonzero");
        if (!p.recession_cone().contains(v)) return res; // escapes the polyhedron
        // Minimal stratum whose cone contains the direction.
        for (std::size_t i = 0; i < strata.size(); ++i) {
            if (!strata[i].asymptotic_cone.contains(v)) continue;
            if (chosen == strata.size() ||
                strata[i].asymptotic_cone.dim() < strata[chosen].asymptotic_cone.dim())
                chosen = i;
        }
    } else {
        // Minimal stratum with exactly the marked coordinates escaping.
        for (std::size_t i = 0; i < strata.size(); ++i) {
            if (ray_support(strata[i].asymptotic_cone) != marked) continue;
            if (chosen == strata.size() ||
                strata[i].asymptotic_cone.dim() < strata[chosen].asymptotic_cone.dim())
                chosen = i;
        }
        if (chosen < strata.size()) {
            for (const auto& row : strata[chosen].projection.matrix)
                for (std::size_t i : marked)
                    if (row[i] != 0)
                        throw IndeterminateValue(
                            "infinite face is not axis-aligned; use an explicit direction");
        }
    }
    if (chosen == strata.size()) return res;

    EVec finite = pt.coords;
    for (std::size_t i : marked) finite[i] = ExtendedScalar(Rational(0));
    EVec projected = apply_rows(strata[chosen].projection.matrix, finite);
    auto face = locate_finite(strata[chosen].quotient, projected, table);
    if (!face) return res;
    res.kind = MembershipResult::Kind::OnInfiniteFace;
    res.infinite_face_index = chosen;
    res.face_index = *face;
    return res;
}

// ---------------------------------------------------------------------------
// Cone

Cone Cone::from_generators(const IMat& rays, const IMat& lineality, std::size_t n) {
    QMat vertices{QVec(n, Rational(0))};
    Polyhedron p = collage::from_generators(vertices, rays, lineality, n);
    Cone c;
    c.n_ = n;
    c.rays_ = p.rays();
    c.lineality_ = p.lineality();
    for (const auto& f : p.facets()) c.facet_normals_.push_back(f.slope);
    for (const auto& e : p.equations()) c.span_equations_.push_back(e.slope);
    return c;
}

Cone Cone::from_halfspaces(const IMat& normals, std::size_t n) {
    std::vector<AffineFunction> sys;
    for (const auto& a : normals) sys.push_back({a, Rational(0)});
    Polyhedron p = canonicalize(std::move(sys), n);
    return from_generators(p.rays(), p.lineality(), n);
}

std::size_t Cone::dim() const {
    QMat rows;
    for (const auto& r : rays_) rows.push_back(to_rational(r));
    for (const auto& l : lineality_) rows.push_back(to_rational(l));
    return rank(rows);
}

bool Cone::contains(const IVec& v) const {
    for (const auto& e : span_equations_)
        if (dot(e, v) != 0) return false;
    for (const auto& f : facet_normals_)
        if (dot(f, v) > 0) return false;
    return true;
}

bool Cone::contains(const QVec& v) const { return contains(primitive(v)); }

Cone Cone::polar() const {
    IMat normals = rays_;
    for (const auto& l : lineality_) {
        normals.push_back(l);
        normals.push_back(scale(l, Int(-1)));
    }
    return from_halfspaces(normals, n_);
}

std::vector<Cone> Cone::faces() const {
    QMat vertices{QVec(n_, Rational(0))};
    Polyhedron p = collage::from_generators(vertices, rays_, lineality_, n_);
    std::vector<Cone> out;
    for (const auto& f : p.faces()) {
        IMat face_rays;
        for (auto i : f.ray_ids) face_rays.push_back(p.rays()[i]);
        out.push_back(from_generators(face_rays, lineality_, n_));
    }
    return out;
}

} // namespace collage
