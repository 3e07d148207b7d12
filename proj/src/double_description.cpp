#include "collage/double_description.hpp"

#include <algorithm>

namespace collage {

namespace {

struct Ray {
    QVec v;
    std::vector<bool> zero; // zero[i]: halfspace i is active on this ray
};

// r1, r2 extreme rays of the cone cut out by the processed halfspaces;
// they are adjacent iff no third ray is active on their common active set.
bool adjacent(const std::vector<Ray>& rays, std::size_t i1, std::size_t i2,
              std::size_t nproc) {
    for (std::size_t k = 0; k < rays.size(); ++k) {
        if (k == i1 || k == i2) continue;
        bool dominates = true;
        for (std::size_t h = 0; h < nproc; ++h) {
            if (rays[i1].zero[h] && rays[i2].zero[h] && !rays[k].zero[h]) {
                dominates = false;
                break;
            }
        }
        if (dominates) return false;
    }
    return true;
}

QVec normalise(QVec v) {
    // Scale to a primitive integer direction for stable comparisons.
    IVec p = primitive(v);
    QVec r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = Rational(p[i]);
    return r;
}

} // namespace

ConeGenerators double_description(const QMat& halfspaces, std::size_t dim) {
    // Start from the whole space: lineality = standard basis, no rays.
    QMat lineality;
    for (std::size_t i = 0; i < dim; ++i) {
        QVec e(dim, Rational(0));
        e[i] = 1;
        lineality.push_back(e);
    }
    std::vector<Ray> rays;

    for (std::size_t h = 0; h < halfspaces.size(); ++h) {
        const QVec& a = halfspaces[h];

        // If the halfspace cuts the lineality space, split off one basis
        // vector as a new extreme ray and flatten the rest.
        std::size_t cut = lineality.size();
        for (std::size_t i = 0; i < lineality.size(); ++i)
            if (dot(a, lineality[i]) != 0) { cut = i; break; }

        if (cut < lineality.size()) {
            QVec l0 = lineality[cut];
            Rational al0 = dot(a, l0);
            QMat new_lin;
            for (std::size_t i = 0; i < lineality.size(); ++i) {
                if (i == cut) continue;
                Rational f = dot(a, lineality[i]) / al0;
                new_lin.push_back(sub(lineality[i], scale(l0, f)));
            }
            for (auto& r : rays) {
                Rational f = dot(a, r.v) / al0;
                r.v = normalise(sub(r.v, scale(l0, f)));
            }
            Ray split;
            split.v = normalise(al0 > 0 ? scale(l0, Rational(-1)) : l0);
            split.zero.assign(h, false); // inactive marks are never read before reset below
            rays.push_back(split);
            lineality = std::move(new_lin);
            // All previous activity patterns changed; recompute from scratch.
            for (auto& r : rays) {
                r.zero.assign(h + 1, false);
                for (std::size_t k = 0; k <= h; ++k) r.zero[k] = dot(halfspaces[k], r.v) == 0;
            }
            continue;
        }

        std::vector<std::size_t> neg, zer, pos;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            int s = sign(dot(a, rays[i].v));
            (s < 0 ? neg : s == 0 ? zer : pos).push_back(i);
        }
        if (pos.empty()) {
            for (auto& r : rays) r.zero.push_back(dot(a, r.v) == 0);
            continue;
        }

        std::vector<Ray> next;
        for (auto i : neg) {
            Ray r = rays[i];
            r.zero.push_back(false);
            next.push_back(std::move(r));
        }
        for (auto i : zer) {
            Ray r = rays[i];
            r.zero.push_back(true);
            next.push_back(std::move(r));
        }
        for (auto ip : pos) {
            for (auto in : neg) {
                if (!adjacent(rays, ip, in, h)) continue;
                Rational ap = dot(a, rays[ip].v), an = dot(a, rays[in].v);
                QVec comb = sub(scale(rays[in].v, ap), scale(rays[ip].v, an));
                Ray r;
                r.v = normalise(comb);
                r.zero.assign(h + 1, false);
                for (std::size_t k = 0; k <= h; ++k)
                    r.zero[k] = dot(halfspaces[k], r.v) == 0;
                next.push_back(std::move(r));
            }
        }
        rays = std::move(next);
    }

    ConeGenerators out;
    for (auto& r : rays) out.rays.push_back(std::move(r.v));
    for (auto& l : lineality) {
        IVec p = primitive(l);
        bool zero = std::all_of(p.begin(), p.end(), [](const Int& x) { return x == 0; });
        if (!zero) out.lineality.push_back(to_rational(p));
    }
    return out;
}

} // namespace collage
