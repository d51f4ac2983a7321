#pragma once

#include <array>
#include <tuple>
#include <utility>
#include <vector>

#include "nf/belitskii.hpp"
#include "nf/engine.hpp"
#include "nf/linalg.hpp"
#include "nf/matrix_series.hpp"

namespace nf {

enum class GeomKind { frame, metric, conformal };

inline const char* to_string(GeomKind k) {
    switch (k) {
        case GeomKind::frame: return "frame";
        case GeomKind::metric: return "metric";
        default: return "conformal";
    }
}

/// Object I + M with M(0) = 0.
template <class S>
struct GeometryObject {
    GeomKind kind = GeomKind::frame;
    int n = 2;
    int d = 8;
    MatrixSeries<S> M;
    double tol = kDefaultTol;
};

/// Gauge (id + phi, exp Q, 1 + h); Q skew, h only for the conformal kind.
template <class S>
struct GaugeElement {
    std::vector<GradedSeries<S>> phi;
    MatrixSeries<S> Q;
    GradedSeries<S> h;

    static GaugeElement zero(int n, int d) {
        GaugeElement g;
        g.phi.assign(n, GradedSeries<S>(n, d));
        g.Q = MatrixSeries<S>(n, n, d);
        g.h = GradedSeries<S>(n, d);
        return g;
    }
    bool is_identity() const {
        for (const auto& p : phi)
            if (!p.is_zero()) return false;
        return Q.is_zero() && h.is_zero();
    }
};

template <class S>
std::vector<GradedSeries<S>> gradient(const GradedSeries<S>& g) {
    std::vector<GradedSeries<S>> out;
    for (int j = 0; j < g.vars(); ++j) out.push_back(partial(g, j));
    return out;
}

template <class S>
GradedSeries<S> divergence(const std::vector<GradedSeries<S>>& v) {
    GradedSeries<S> out(v[0].vars(), v[0].truncation());
    for (size_t j = 0; j < v.size(); ++j) out += partial(v[j], static_cast<int>(j));
    return out;
}

template <class S>
GradedSeries<S> dot_with_x(const std::vector<GradedSeries<S>>& v) {
    int n = v[0].vars();
    GradedSeries<S> out(n, v[0].truncation());
    for (int j = 0; j < n; ++j) out += v[j] * variable_series<S>(n, v[0].truncation(), j);
    return out;
}

template <class S>
GradedSeries<S> radius_squared(int n, int trunc) {
    GradedSeries<S> out(n, trunc);
    for (int j = 0; j < n; ++j) {
        std::vector<int> e(n, 0);
        e[j] = 2;
        out.add_coeff(MultiIndex(std::move(e)), scalar_traits<S>::one());
    }
    return out;
}

namespace detail {
/// Homogeneous degree-i inputs are polynomials; give them room for the
/// degree-raising steps (A x has degree i+1, <f,x> degree i+2).
template <class S>
MatrixSeries<S> with_headroom(const MatrixSeries<S>& A, int i) {
    MatrixSeries<S> r(A.dim, A.vars(), i + 2);
    for (size_t t = 0; t < A.entry.size(); ++t) r.entry[t] = A.entry[t].extended(i + 2);
    return r;
}
}  // namespace detail

/// phi = A(x) x / (i+1); then A - Dphi annihilates x.
template <class S>
std::vector<GradedSeries<S>> frame_solve(const MatrixSeries<S>& A0, int i) {
    if (i < 1) throw std::invalid_argument("frame_solve: need degree >= 1");
    MatrixSeries<S> A = detail::with_headroom(A0, i);
    auto ax = A.apply_to_x();
    S inv = scalar_traits<S>::one() / scalar_traits<S>::from_int(i + 1);
    for (auto& c : ax) c *= inv;
    return ax;
}

/// Closed-form metric step: unique (phi, Q) with A - Dphi + Q in the space of
/// symmetric matrices annihilating x.
template <class S>
std::pair<std::vector<GradedSeries<S>>, MatrixSeries<S>> metric_solve(const MatrixSeries<S>& A0,
                                                                      int i) {
    using tr = scalar_traits<S>;
    if (i < 2) throw std::invalid_argument("metric_solve: closed form needs degree >= 2");
    int n = A0.dim;
    MatrixSeries<S> A = detail::with_headroom(A0, i);
    MatrixSeries<S> sym = A + A.transpose();
    std::vector<GradedSeries<S>> f = sym.apply_to_x();
    std::vector<GradedSeries<S>> g = gradient(dot_with_x(f));
    S inv_i = tr::one() / tr::from_int(i);
    S inv_2ii1 = tr::one() / tr::from_int(2 * i * (i + 1));
    std::vector<GradedSeries<S>> phi;
    for (int l = 0; l < n; ++l) phi.push_back(f[l] * inv_i - g[l] * inv_2ii1);
    MatrixSeries<S> dphi = jacobian(phi);
    MatrixSeries<S> Q = (dphi - dphi.transpose() - A + A.transpose());
    Q *= tr::one() / tr::from_int(2);
    return {std::move(phi), std::move(Q)};
}

/// (1/(i(i+1))) |x|^2 Laplacian(h) + ((n-2)(i-1)/(i+1)) h on degree-i input.
template <class S>
GradedSeries<S> l_operator_apply(const GradedSeries<S>& h, int n, int i) {
    using tr = scalar_traits<S>;
    GradedSeries<S> lap(n, h.truncation());
    for (int j = 0; j < n; ++j) lap += differentiate(h, MultiIndex::unit(n, j).plus(MultiIndex::unit(n, j)));
    GradedSeries<S> out = radius_squared<S>(n, h.truncation()) * lap;
    out *= tr::one() / tr::from_int(i * (i + 1));
    S lam1 = tr::from_int((n - 2) * (i - 1)) / tr::from_int(i + 1);
    out += h * lam1;
    return out;
}

/// Dense exact solve of L_i(h) = z in the degree-i monomial basis.
template <class S>
GradedSeries<S> l_operator_solve(const GradedSeries<S>& z, int n, int i, double tol = 0.0) {
    using tr = scalar_traits<S>;
    std::vector<MultiIndex> mono = monomials_of_degree(n, i);
    std::map<MultiIndex, int, GrlexLess> idx;
    for (size_t t = 0; t < mono.size(); ++t) idx.emplace(mono[t], static_cast<int>(t));
    int dim = static_cast<int>(mono.size());
    DenseMatrix<S> L(dim, dim);
    for (int ccol = 0; ccol < dim; ++ccol) {
        GradedSeries<S> img =
            l_operator_apply(GradedSeries<S>::monomial(n, i, mono[ccol], tr::one()), n, i);
        for (const auto& [a, v] : img.terms_of_degree(i)) L.at(idx.at(a), ccol) += v;
    }
    std::vector<S> rhs(dim, tr::zero());
    for (int r = 0; r < dim; ++r) rhs[r] = z.coeff(mono[r]);
    auto sol = solve_linear(L, rhs, tol);
    if (!sol) throw std::runtime_error("l_operator_solve: singular system");
    GradedSeries<S> h(n, z.truncation());
    for (int r = 0; r < dim; ++r)
        if (!tr::is_zero((*sol)[r], 0.0)) h.add_coeff(mono[r], (*sol)[r]);
    return h;
}

/// Minimal eigenvalue of L_i as a self-adjoint operator in the Belitskii
/// inner product (dense symmetric eigensolve in the orthonormalized basis).
inline double l_operator_min_eigenvalue(int n, int i) {
    if (n < 3 || i < 2) throw std::invalid_argument("l_operator_min_eigenvalue: need n>=3, i>=2");
    std::vector<MultiIndex> mono = monomials_of_degree(n, i);
    std::map<MultiIndex, int, GrlexLess> idx;
    for (size_t t = 0; t < mono.size(); ++t) idx.emplace(mono[t], static_cast<int>(t));
    int dim = static_cast<int>(mono.size());
    std::vector<Rational> Lq(static_cast<size_t>(dim) * dim, Rational(0));
    for (int c = 0; c < dim; ++c) {
        GradedSeries<Rational> img =
            l_operator_apply(GradedSeries<Rational>::monomial(n, i, mono[c], Rational(1)), n, i);
        for (const auto& [a, v] : img.terms_of_degree(i)) Lq[idx.at(a) * static_cast<size_t>(dim) + c] = v;
    }
    // in the orthonormal basis x^a / sqrt(w_a) the matrix is B_{rc} = L_{rc} sqrt(w_r / w_c)
    std::vector<double> w(dim);
    for (int t = 0; t < dim; ++t) w[t] = belitskii_weight(mono[t]).get_d();
    std::vector<double> B(static_cast<size_t>(dim) * dim, 0.0);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            double v = Lq[static_cast<size_t>(r) * dim + c].get_d();
            if (v != 0.0) B[static_cast<size_t>(r) * dim + c] = v * std::sqrt(w[r] / w[c]);
        }
    std::vector<double> ev = symmetric_eigenvalues(std::move(B), dim);
    return ev.front();
}

/// Closed-form conformal step (n >= 3): unique (phi, Q, h) with
/// A - Dphi + Q + h I symmetric, traceless and annihilating x.
template <class S>
std::tuple<std::vector<GradedSeries<S>>, MatrixSeries<S>, GradedSeries<S>> conformal_solve(
    const MatrixSeries<S>& A0, int i, double tol = 0.0) {
    using tr = scalar_traits<S>;
    int n = A0.dim;
    if (n < 3) throw std::invalid_argument("conformal_solve: closed form needs n >= 3");
    if (i < 2) throw std::invalid_argument("conformal_solve: closed form needs degree >= 2");
    MatrixSeries<S> A = detail::with_headroom(A0, i);
    MatrixSeries<S> sym = A + A.transpose();
    std::vector<GradedSeries<S>> f = sym.apply_to_x();
    std::vector<GradedSeries<S>> g = gradient(dot_with_x(f));
    S inv_i = tr::one() / tr::from_int(i);
    S inv_2ii1 = tr::one() / tr::from_int(2 * i * (i + 1));
    std::vector<GradedSeries<S>> s;
    for (int l = 0; l < n; ++l) s.push_back(f[l] * inv_i - g[l] * inv_2ii1);
    GradedSeries<S> w = divergence(s);
    GradedSeries<S> z = w - A.trace();
    GradedSeries<S> h = l_operator_solve(z.homogeneous_part(i), n, i, tol);

    std::vector<GradedSeries<S>> grad_h = gradient(h);
    GradedSeries<S> r2 = radius_squared<S>(n, h.truncation());
    S inv_ii1 = tr::one() / tr::from_int(i * (i + 1));
    S two_over_i1 = tr::from_int(2) / tr::from_int(i + 1);
    std::vector<GradedSeries<S>> phi;
    for (int l = 0; l < n; ++l) {
        GradedSeries<S> p = s[l] - r2 * grad_h[l] * inv_ii1;
        p += h * variable_series<S>(n, h.truncation(), l) * two_over_i1;
        phi.push_back(std::move(p));
    }
    MatrixSeries<S> dphi = jacobian(phi);
    MatrixSeries<S> Q = (dphi - dphi.transpose() - A + A.transpose());
    Q *= tr::one() / tr::from_int(2);
    return {std::move(phi), std::move(Q), std::move(h)};
}

/// (1+h) expQ (I+Dphi)^{-1} (I + M(x+phi)) - I, truncated at d.
template <class S>
MatrixSeries<S> apply_gauge(const MatrixSeries<S>& M, const GaugeElement<S>& gauge, GeomKind kind,
                            int d) {
    int n = M.dim;
    for (const auto& p : gauge.phi)
        if (p.order() < 2) throw std::invalid_argument("apply_gauge: phi must have order >= 2");
    if (kind != GeomKind::frame && !(gauge.Q + gauge.Q.transpose()).is_zero())
        throw std::invalid_argument("apply_gauge: Q must be skew-symmetric");
    MatrixSeries<S> base = MatrixSeries<S>::identity(n, M.vars(), d);
    base += M.compose_shifted(gauge.phi, d);
    // the Jacobian needs phi before truncation: degree d+1 of phi feeds degree d
    MatrixSeries<S> dphi(n, M.vars(), d);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dphi.at(i, j) = partial(gauge.phi[i], j).truncated(d);
    MatrixSeries<S> res = neumann_inverse(dphi, d) * base;
    if (kind != GeomKind::frame) res = matrix_exp(gauge.Q, d) * res;
    if (kind == GeomKind::conformal) {
        GradedSeries<S> one_h(M.vars(), d);
        one_h.set_coeff(MultiIndex::zero(M.vars()), scalar_traits<S>::one());
        one_h += gauge.h.truncated(d);
        for (auto& e : res.entry) e = e * one_h;
    }
    return res - MatrixSeries<S>::identity(n, M.vars(), d);
}

namespace detail {

/// Generic per-degree solve for the gauge linearization -Dphi + Q + hI.
/// Used at degree 1 (below the closed forms) and for n = 2 conformal.
template <class S>
void geometry_fallback_step(const MatrixSeries<S>& A, GeomKind kind, int i, int n, double tol,
                            std::vector<GradedSeries<S>>& dphi_out, MatrixSeries<S>& dQ_out,
                            GradedSeries<S>& dh_out) {
    using tr = scalar_traits<S>;
    std::vector<MultiIndex> cod_mono = monomials_of_degree(n, i);
    std::vector<MultiIndex> phi_mono = monomials_of_degree(n, i + 1);
    std::map<MultiIndex, int, GrlexLess> cidx;
    for (size_t t = 0; t < cod_mono.size(); ++t) cidx.emplace(cod_mono[t], static_cast<int>(t));
    int mcount = static_cast<int>(cod_mono.size());
    int rows = n * n * mcount;
    auto row_of = [&](int a, int b, const MultiIndex& mo) {
        return (a * n + b) * mcount + cidx.at(mo);
    };

    int phi_cols = n * static_cast<int>(phi_mono.size());
    int q_cols = kind != GeomKind::frame ? (n * (n - 1) / 2) * mcount : 0;
    int h_cols = kind == GeomKind::conformal ? mcount : 0;
    DenseMatrix<S> mat(rows, phi_cols + q_cols + h_cols);
    std::vector<S> wd(phi_cols + q_cols + h_cols, tr::one());

    int col = 0;
    for (int l = 0; l < n; ++l)
        for (const MultiIndex& beta : phi_mono) {
            // -D(x^beta e_l): row block l
            for (int j = 0; j < n; ++j) {
                if (beta[j] == 0) continue;
                MultiIndex m2 = beta.minus(MultiIndex::unit(n, j));
                mat.at(row_of(l, j, m2), col) -= tr::from_int(beta[j]);
            }
            wd[col] = tr::from_rational(belitskii_weight(beta));
            ++col;
        }
    if (kind != GeomKind::frame)
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (const MultiIndex& gamma : cod_mono) {
                    mat.at(row_of(a, b, gamma), col) += tr::one();
                    mat.at(row_of(b, a, gamma), col) -= tr::one();
                    wd[col] = tr::from_rational(belitskii_weight(gamma) * 2);
                    ++col;
                }
    if (kind == GeomKind::conformal)
        for (const MultiIndex& gamma : cod_mono) {
            for (int a = 0; a < n; ++a) mat.at(row_of(a, a, gamma), col) += tr::one();
            wd[col] = tr::from_rational(belitskii_weight(gamma) * n);
            ++col;
        }

    std::vector<S> rhs(rows, tr::zero());
    std::vector<S> wc(rows, tr::one());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (const MultiIndex& mo : cod_mono) {
                rhs[row_of(a, b, mo)] = -A.at(a, b).coeff(mo);  // solve S(delta) = -A + residual
                wc[row_of(a, b, mo)] = tr::from_rational(belitskii_weight(mo));
            }
    ComplementSolve<S> sol = solve_with_complement(mat, rhs, wc, wd, tol);

    col = 0;
    for (int l = 0; l < n; ++l)
        for (const MultiIndex& beta : phi_mono) {
            if (!tr::is_zero(sol.solution[col], 0.0)) dphi_out[l].add_coeff(beta, sol.solution[col]);
            ++col;
        }
    if (kind != GeomKind::frame)
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (const MultiIndex& gamma : cod_mono) {
                    if (!tr::is_zero(sol.solution[col], 0.0)) {
                        dQ_out.at(a, b).add_coeff(gamma, sol.solution[col]);
                        dQ_out.at(b, a).add_coeff(gamma, -sol.solution[col]);
                    }
                    ++col;
                }
    if (kind == GeomKind::conformal)
        for (const MultiIndex& gamma : cod_mono) {
            if (!tr::is_zero(sol.solution[col], 0.0)) dh_out.add_coeff(gamma, sol.solution[col]);
            ++col;
        }
}

}  // namespace detail

template <class S>
struct GeometryResult {
    GaugeElement<S> gauge;
    MatrixSeries<S> normal_form;
    bool annihilates_x = false;
    bool symmetric = false;
    bool traceless = false;
    bool certified = false;  // all membership equations required by the kind
    SolveReport report;
    // per-degree solver-norm ratios: i*|phi|/|A|, |Q|/|A|, |h|/|A|
    std::vector<std::array<double, 3>> ratios;
};

/// Degree-by-degree reduction of I + M to the kind's normal space. The gauge
/// accumulates additively; every degree re-applies it to the original object.
template <class S>
GeometryResult<S> geometry_normalize(const GeometryObject<S>& obj) {
    using tr = scalar_traits<S>;
    const int n = obj.n;
    const int d = obj.d;
    if (obj.M.order() < 1) throw std::invalid_argument("geometry_normalize: M(0) must vanish");
    double ltol = tr::is_exact ? 0.0 : obj.tol;

    GeometryResult<S> out;
    out.gauge = GaugeElement<S>::zero(n, d + 1);  // phi reaches degree d+1

    for (int i = 1; i <= d; ++i) {
        MatrixSeries<S> cur = apply_gauge(obj.M, out.gauge, obj.kind, d);
        MatrixSeries<S> A = cur.homogeneous_part(i);
        double an = A.max_entry_norm_degree(i);
        std::vector<GradedSeries<S>> dphi(n, GradedSeries<S>(n, d + 1));
        MatrixSeries<S> dQ(n, n, d);
        GradedSeries<S> dh(n, d);
        if (an > 0.0) {
            bool fallback = (i == 1) || (obj.kind == GeomKind::conformal && n < 3);
            if (fallback) {
                detail::geometry_fallback_step(A, obj.kind, i, n, ltol, dphi, dQ, dh);
            } else if (obj.kind == GeomKind::frame) {
                dphi = frame_solve(A, i);
            } else if (obj.kind == GeomKind::metric) {
                auto [p, q] = metric_solve(A, i);
                dphi = std::move(p);
                dQ = std::move(q);
            } else {
                auto [p, q, hh] = conformal_solve(A, i, ltol);
                dphi = std::move(p);
                dQ = std::move(q);
                dh = std::move(hh);
            }
        }
        double pn = 0.0;
        for (const auto& p : dphi) pn = std::max(pn, norm_homogeneous_degree(p, i + 1));
        double qn = dQ.max_entry_norm_degree(i);
        double hn = norm_homogeneous_degree(dh, i);
        out.ratios.push_back({an > 0 ? i * pn / an : 0.0, an > 0 ? qn / an : 0.0,
                              an > 0 ? hn / an : 0.0});
        out.report.degrees.push_back(i);
        out.report.rhs_norm.push_back(an);
        out.report.solution_norm.push_back(std::max({pn, qn, hn}));
        out.report.min_denominator.push_back(std::numeric_limits<double>::quiet_NaN());

        for (int l = 0; l < n; ++l) out.gauge.phi[l].accumulate(dphi[l]);
        out.gauge.Q.accumulate(dQ);
        out.gauge.h.accumulate(dh);
    }

    out.normal_form = apply_gauge(obj.M, out.gauge, obj.kind, d);

    auto series_small = [&](const GradedSeries<S>& g) {
        if constexpr (tr::is_exact) return g.is_zero();
        bool ok = true;
        g.for_each([&](const MultiIndex&, const S& c) {
            if (tr::abs_approx(c) > obj.tol) ok = false;
        });
        return ok;
    };
    // M x raises the degree by one, so check it with headroom above d
    MatrixSeries<S> ext(n, n, d + 1);
    for (size_t t = 0; t < ext.entry.size(); ++t) ext.entry[t] = out.normal_form.entry[t].extended(d + 1);
    out.annihilates_x = true;
    for (const auto& e : ext.apply_to_x())
        if (!series_small(e)) out.annihilates_x = false;
    MatrixSeries<S> asym = out.normal_form - out.normal_form.transpose();
    out.symmetric = true;
    for (const auto& e : asym.entry)
        if (!series_small(e)) out.symmetric = false;
    out.traceless = series_small(out.normal_form.trace());
    for (size_t t = 0; t < out.report.degrees.size(); ++t)
        out.report.residual_norm.push_back(
            out.normal_form.max_entry_norm_degree(out.report.degrees[t]));

    out.certified = out.annihilates_x;
    if (obj.kind != GeomKind::frame) out.certified = out.certified && out.symmetric;
    if (obj.kind == GeomKind::conformal) out.certified = out.certified && out.traceless;
    return out;
}

}  // namespace nf
