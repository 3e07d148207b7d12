#include "collage/basechange.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "collage/errors.hpp"

namespace collage {

Int ord_t(const Polyhedron& delta, const AffineFunction& f) {
    std::optional<Rational> s = delta.sup(f);
    if (!s) throw SlopeUnbounded("function is not bounded above on the polyhedron");
    return floor(-*s);
}

double l1q_norm(const Polyhedron& delta, const MonoidAlgebraElement& a, double q) {
    double norm = 0;
    for (const auto& [c, f] : a.terms) {
        Int k = ord_t(delta, f);
        norm += std::pow(q, static_cast<double>(k)) * std::abs(c);
    }
    return norm;
}

MonoidAlgebraElement multiply(const MonoidAlgebraElement& a,
                              const MonoidAlgebraElement& b) {
    std::map<std::pair<IVec, Rational>, std::complex<double>> acc;
    for (const auto& [ca, fa] : a.terms)
        for (const auto& [cb, fb] : b.terms) {
            AffineFunction f = fa + fb;
            acc[{f.slope, f.constant}] += ca * cb;
        }
    MonoidAlgebraElement out;
    for (const auto& [key, c] : acc)
        out.terms.push_back({c, AffineFunction{key.first, key.second}});
    return out;
}

SubmultReport submultiplicativity_probe(const Polyhedron& delta,
                                        const MonoidAlgebraElement& a,
                                        const MonoidAlgebraElement& b, double q,
                                        double tolerance) {
    SubmultReport rep;
    rep.norm_a = l1q_norm(delta, a, q);
    rep.norm_b = l1q_norm(delta, b, q);
    rep.norm_ab = l1q_norm(delta, multiply(a, b), q);
    double denom = rep.norm_a * rep.norm_b;
    rep.ratio = denom > 0 ? rep.norm_ab / denom : 0;
    rep.submultiplicative = rep.norm_ab <= denom + tolerance;
    return rep;
}

namespace {

/// Basis of the saturated lattice generated by the bounded slopes, as rows.
IMat bounded_slope_basis(const Polyhedron& delta) {
    Cone lambda = delta.recession_cone().polar();
    IMat gens = lambda.rays();
    for (const auto& l : lambda.lineality()) gens.push_back(l);
    if (gens.empty()) return {};
    IMat ortho = integer_kernel(gens, delta.ambient_dim());
    return integer_kernel(ortho, delta.ambient_dim());
}

} // namespace

std::size_t phase_rank(const Polyhedron& delta) {
    return bounded_slope_basis(delta).size();
}

FibrationSample fibration_sample(const Polyhedron& delta, double q, const QVec& base,
                                 const std::vector<double>& phase) {
    if (!(q > 0 && q < 1))
        throw SemanticError("q must lie in the open interval (0,1)");
    if (!delta.contains(base))
        throw OutsidePolyhedron("base point is not in the polyhedron");
    IMat basis = bounded_slope_basis(delta);
    if (phase.size() != basis.size())
        throw DimensionMismatch("phase dimension must equal the bounded slope rank");

    FibrationSample s;
    s.base_point = base;
    s.phase = phase;
    s.generators = bounded_affine_monoid(delta).module_generators;
    double eps = std::log(q);
    for (const auto& f : s.generators) {
        // Phase pairing through the coordinates of dF in the slope basis.
        auto coords = solve_in_lattice(basis, f.slope);
        double theta = 0;
        for (std::size_t i = 0; i < coords->size(); ++i)
            theta += phase[i] * static_cast<double>((*coords)[i]);
        double value = -static_cast<double>(f(base));
        s.coordinate_values.push_back(std::exp(eps * value) *
                                      std::complex<double>(std::cos(theta), std::sin(theta)));
    }
    return s;
}

std::vector<double> mu(const Polyhedron& delta, const FibrationSample& sample, double q) {
    // F(b) = -log|z^F| / eps for every generator; solve a full-rank square
    // subsystem exactly and substitute the measured magnitudes.
    std::size_t n = delta.ambient_dim();
    double eps = std::log(q);
    QMat rows;
    std::vector<double> rhs;
    for (std::size_t i = 0; i < sample.generators.size() && rows.size() < n; ++i) {
        QMat trial = rows;
        trial.push_back(to_rational(sample.generators[i].slope));
        if (rank(trial) != trial.size()) continue;
        rows = std::move(trial);
        double value = -std::log(std::abs(sample.coordinate_values[i])) / eps;
        rhs.push_back(value - static_cast<double>(sample.generators[i].constant));
    }
    if (rows.size() != n)
        throw RankDeficient("coordinate slopes do not determine the base point");
    QMat inv = *inverse(rows);
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out[i] += static_cast<double>(inv[i][j]) * rhs[j];
    return out;
}

MumfordModel mumford_build(const MumfordPair& p) {
    if (!p.cocycle.empty() && p.cocycle.size() != p.y_generators.size())
        throw RankDeficient("cocycle needs one value per period generator");
    MumfordModel m;
    m.torus = group_quotient_collage(p.rank, p.y_generators);

    m.proper = true;
    for (const auto& chart : m.torus.charts)
        if (!chart.is_bounded()) m.proper = false;
    m.separated = separated_check(m.torus);
    ManifoldReport rep = affine_manifold_check(m.torus);
    m.overconvergent = rep.ok;
    // Geometric connectedness is the torsion-freeness of the character data:
    // the periods span, so the quotient lattice has no finite part.
    m.geometrically_connected = true;
    for (const AffineMap& loop : fundamental_monodromy(m.torus, 0)) {
        if (loop.matrix != identity_matrix(p.rank)) m.geometrically_connected = false;
        bool zero = std::all_of(loop.translation.begin(), loop.translation.end(),
                                [](const Rational& x) { return x == 0; });
        if (!zero) m.monodromy_translations.push_back(loop.translation);
    }
    return m;
}

PicDecomposition pic_decompose(const MumfordPair& p) {
    if (p.cocycle.size() != p.y_generators.size())
        throw RankDeficient("cocycle needs one value per period generator");
    PicDecomposition out;
    out.metrisable = true;
    for (const auto& f : p.cocycle) {
        out.translation_part.push_back(f.constant);
        out.slope_part.push_back(f.slope);
        if (f.constant != 0) out.metrisable = false;
    }
    return out;
}

} // namespace collage
