#include "collage/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace collage {

Int dot(const IVec& a, const IVec& b) {
    assert(a.size() == b.size());
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational dot(const IVec& a, const QVec& b) {
    assert(a.size() == b.size());
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
    return s;
}

Rational dot(const QVec& a, const QVec& b) {
    assert(a.size() == b.size());
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IVec add(const IVec& a, const IVec& b) {
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

QVec add(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IVec sub(const IVec& a, const IVec& b) {
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

QVec sub(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IVec scale(const IVec& a, const Int& c) {
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

QVec scale(const QVec& a, const Rational& c) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

QVec to_rational(const IVec& a) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rational(a[i]);
    return r;
}

IMat identity_matrix(std::size_t n) {
    IMat m(n, IVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IMat transpose(const IMat& m) {
    if (m.empty()) return {};
    IMat t(m[0].size(), IVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

IMat matmul(const IMat& a, const IMat& b) {
    if (a.empty() || b.empty()) return {};
    IMat r(a.size(), IVec(b[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < b[0].size(); ++j)
                r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

IVec matvec(const IMat& a, const IVec& x) {
    IVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = dot(a[i], x);
    return r;
}

QVec matvec(const IMat& a, const QVec& x) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = dot(a[i], x);
    return r;
}

QVec matvec(const QMat& a, const QVec& x) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = dot(a[i], x);
    return r;
}

IVec primitive(const IVec& v) {
    Int g = vector_gcd(v);
    if (g == 0 || g == 1) return v;
    IVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

IVec primitive(const QVec& v) {
    Int l = 1;
    for (const Rational& q : v) l = lcm(l, den(q));
    IVec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = num(v[i]) * (l / den(v[i]));
    return primitive(w);
}

std::size_t rank(QMat m) {
    std::size_t r = 0;
    if (m.empty()) return 0;
    std::size_t cols = m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

Int determinant(const IMat& m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination.
    IMat a = m;
    Int prev = 1;
    int sgn = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sgn > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

std::optional<QMat> inverse(const QMat& m) {
    std::size_t n = m.size();
    QMat a = m, inv(n, QVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[c], a[piv]);
        std::swap(inv[c], inv[piv]);
        Rational d = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

std::pair<IMat, IMat> hermite_normal_form(const IMat& m) {
    IMat h = m;
    std::size_t rows = h.size();
    IMat u = identity_matrix(rows);
    std::size_t cols = rows ? h[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // Euclidean elimination within column c, rows r..end.
        for (;;) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i) {
                if (h[i][c] == 0) continue;
                if (best == rows || abs(h[i][c]) < abs(h[best][c])) best = i;
            }
            if (best == rows) break;
            std::swap(h[r], h[best]);
            std::swap(u[r], u[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (h[i][c] == 0) continue;
                Int q = floor_div(h[i][c], h[r][c]);
                if (q != 0) {
                    for (std::size_t j = 0; j < cols; ++j) h[i][j] -= q * h[r][j];
                    for (std::size_t j = 0; j < rows; ++j) u[i][j] -= q * u[r][j];
                }
                if (h[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (h[r][c] == 0) continue;
        if (h[r][c] < 0) {
            for (auto& x : h[r]) x = -x;
            for (auto& x : u[r]) x = -x;
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(h[i][c], h[r][c]);
            if (q != 0) {
                for (std::size_t j = 0; j < cols; ++j) h[i][j] -= q * h[r][j];
                for (std::size_t j = 0; j < rows; ++j) u[i][j] -= q * u[r][j];
            }
        }
        ++r;
    }
    return {h, u};
}

SmithResult smith_normal_form(const IMat& m) {
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    SmithResult res{identity_matrix(rows), m, identity_matrix(cols)};
    IMat& d = res.d;

    auto nonzero_below = [&](std::size_t t) {
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (d[i][j] != 0) return std::make_pair(i, j);
        return std::make_pair(rows, cols);
    };

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        auto [pi, pj] = nonzero_below(t);
        if (pi == rows) break;
        std::swap(d[t], d[pi]);
        std::swap(res.u[t], res.u[pi]);
        for (std::size_t i = 0; i < rows; ++i) std::swap(d[i][t], d[i][pj]);
        for (std::size_t i = 0; i < cols; ++i) std::swap(res.v[i][t], res.v[i][pj]);

        bool clean = false;
        while (!clean) {
            clean = true;
            // Clear column t.
            for (std::size_t i = t + 1; i < rows; ++i) {
                while (d[i][t] != 0) {
                    Int q = floor_div(d[i][t], d[t][t]);
                    for (std::size_t j = 0; j < cols; ++j) d[i][j] -= q * d[t][j];
                    for (std::size_t j = 0; j < rows; ++j) res.u[i][j] -= q * res.u[t][j];
                    if (d[i][t] != 0) {
                        std::swap(d[i], d[t]);
                        std::swap(res.u[i], res.u[t]);
                    }
                }
            }
            // Clear row t.
            for (std::size_t j = t + 1; j < cols; ++j) {
                while (d[t][j] != 0) {
                    Int q = floor_div(d[t][j], d[t][t]);
                    for (std::size_t i = 0; i < rows; ++i) d[i][j] -= q * d[i][t];
                    for (std::size_t i = 0; i < cols; ++i) res.v[i][j] -= q * res.v[i][t];
                    if (d[t][j] != 0) {
                        for (std::size_t i = 0; i < rows; ++i) std::swap(d[i][j], d[i][t]);
                        for (std::size_t i = 0; i < cols; ++i) std::swap(res.v[i][j], res.v[i][t]);
                        clean = false;
                    }
                }
            }
            if (!clean) continue;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (d[i][t] != 0) { clean = false; break; }
        }
    }

    // Positive pivots, then enforce divisibility d_i | d_{i+1}.
    std::size_t k = std::min(rows, cols);
    for (std::size_t t = 0; t < k; ++t) {
        if (d[t][t] < 0) {
            for (std::size_t j = 0; j < cols; ++j) d[t][j] = -d[t][j];
            for (std::size_t j = 0; j < rows; ++j) res.u[t][j] = -res.u[t][j];
        }
    }
    for (bool again = true; again;) {
        again = false;
        for (std::size_t t = 0; t + 1 < k; ++t) {
            if (d[t][t] == 0 || d[t + 1][t + 1] % d[t][t] == 0) continue;
            again = true;
            // Add column t+1 to column t, then re-diagonalise the 2x2 block
            // with euclidean steps.
            for (std::size_t i = 0; i < rows; ++i) d[i][t] += d[i][t + 1];
            for (std::size_t i = 0; i < cols; ++i) res.v[i][t] += res.v[i][t + 1];
            for (;;) {
                if (d[t + 1][t] != 0) {
                    Int q = floor_div(d[t + 1][t], d[t][t]);
                    if (q != 0) {
                        for (std::size_t j = 0; j < cols; ++j) d[t + 1][j] -= q * d[t][j];
                        for (std::size_t j = 0; j < rows; ++j) res.u[t + 1][j] -= q * res.u[t][j];
                    }
                    if (d[t + 1][t] != 0) {
                        std::swap(d[t], d[t + 1]);
                        std::swap(res.u[t], res.u[t + 1]);
                        continue;
                    }
                }
                if (d[t][t + 1] != 0) {
                    Int q = floor_div(d[t][t + 1], d[t][t]);
                    if (q != 0) {
                        for (std::size_t i = 0; i < rows; ++i) d[i][t + 1] -= q * d[i][t];
                        for (std::size_t i = 0; i < cols; ++i) res.v[i][t + 1] -= q * res.v[i][t];
                    }
                    if (d[t][t + 1] != 0) {
                        for (std::size_t i = 0; i < rows; ++i) std::swap(d[i][t], d[i][t + 1]);
                        for (std::size_t i = 0; i < cols; ++i) std::swap(res.v[i][t], res.v[i][t + 1]);
                        continue;
                    }
                }
                break;
            }
            if (d[t][t] < 0) {
                for (std::size_t j = 0; j < cols; ++j) d[t][j] = -d[t][j];
                for (std::size_t j = 0; j < rows; ++j) res.u[t][j] = -res.u[t][j];
            }
            if (d[t + 1][t + 1] < 0) {
                for (std::size_t j = 0; j < cols; ++j) d[t + 1][j] = -d[t + 1][j];
                for (std::size_t j = 0; j < rows; ++j) res.u[t + 1][j] = -res.u[t + 1][j];
            }
        }
    }
    return res;
}

IMat integer_kernel(const IMat& m, std::size_t ncols) {
    if (m.empty()) return identity_matrix(ncols);
    // Kernel vectors x with M x = 0: compute HNF of the transpose-augmented
    // trick: run HNF on [M^T | I]; rows whose M^T part vanished give kernel.
    IMat work(ncols, IVec(m.size() + ncols, 0));
    for (std::size_t i = 0; i < ncols; ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) work[i][j] = m[j][i];
        work[i][m.size() + i] = 1;
    }
    auto [h, u] = hermite_normal_form(work);
    (void)u;
    IMat ker;
    for (const auto& row : h) {
        bool zero = true;
        for (std::size_t j = 0; j < m.size(); ++j)
            if (row[j] != 0) { zero = false; break; }
        if (!zero) continue;
        IVec v(row.begin() + static_cast<long>(m.size()), row.end());
        bool trivial = std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
        if (!trivial) ker.push_back(v);
    }
    // HNF of the kernel lattice for a canonical (and saturated) basis.
    if (!ker.empty()) ker = hermite_normal_form(ker).first;
    while (!ker.empty()) {
        const IVec& last = ker.back();
        if (std::all_of(last.begin(), last.end(), [](const Int& x) { return x == 0; }))
            ker.pop_back();
        else
            break;
    }
    return ker;
}

std::optional<AffineSolution> solve_rational(const QMat& a, const QVec& b) {
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    QMat work = a;
    QVec rhs = b;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && work[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(work[r], work[piv]);
        std::swap(rhs[r], rhs[piv]);
        Rational d = work[r][c];
        for (std::size_t j = 0; j < cols; ++j) work[r][j] /= d;
        rhs[r] /= d;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || work[i][c] == 0) continue;
            Rational f = work[i][c];
            for (std::size_t j = 0; j < cols; ++j) work[i][j] -= f * work[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (rhs[i] != 0) return std::nullopt;

    AffineSolution sol;
    sol.point.assign(cols, Rational(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) sol.point[pivot_col[i]] = rhs[i];
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        QVec v(cols, Rational(0));
        v[c] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -work[i][c];
        sol.kernel.push_back(v);
    }
    return sol;
}

IMat quotient_projection(const IMat& lattice_basis, std::size_t n) {
    if (lattice_basis.empty()) return identity_matrix(n);
    std::size_t k = lattice_basis.size();
    // Columns of B are the basis vectors; U B V = D with unit pivots when the
    // lattice is saturated. The last n-k rows of U then kill span(B) and map
    // Z^n onto Z^{n-k}.
    IMat b(n, IVec(k, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) b[i][j] = lattice_basis[j][i];
    SmithResult s = smith_normal_form(b);
    IMat proj;
    for (std::size_t i = k; i < n; ++i) proj.push_back(s.u[i]);
    return proj;
}

IVec reduce_mod_lattice(IVec v, const IMat& hnf_basis) {
    for (const IVec& row : hnf_basis) {
        std::size_t p = 0;
        while (p < row.size() && row[p] == 0) ++p;
        if (p == row.size()) continue;
        Int q = floor_div(v[p], row[p]);
        if (q != 0)
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= q * row[j];
    }
    return v;
}

std::optional<IVec> solve_in_lattice(const IMat& rows, const IVec& target) {
    if (rows.empty()) {
        bool zero = std::all_of(target.begin(), target.end(),
                                [](const Int& x) { return x == 0; });
        if (zero) return IVec{};
        return std::nullopt;
    }
    auto [h, u] = hermite_normal_form(rows);
    IVec t = target, coeff(rows.size(), 0);
    // Express target over the HNF rows, then pull back through U.
    IVec c_h(h.size(), 0);
    for (std::size_t i = 0; i < h.size(); ++i) {
        std::size_t p = 0;
        while (p < h[i].size() && h[i][p] == 0) ++p;
        if (p == h[i].size()) continue;
        if (t[p] % h[i][p] != 0) return std::nullopt;
        Int q = t[p] / h[i][p];
        c_h[i] = q;
        for (std::size_t j = 0; j < t.size(); ++j) t[j] -= q * h[i][j];
    }
    if (!std::all_of(t.begin(), t.end(), [](const Int& x) { return x == 0; }))
        return std::nullopt;
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) coeff[j] += c_h[i] * u[i][j];
    return coeff;
}

} // namespace collage
