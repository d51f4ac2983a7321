#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nf/univariate.hpp"
#include "nf/vector_series.hpp"

namespace nf {

/// Parameters of the scalar majorant system and its solved series f_1..f_r.
/// R is the real coefficient type (Rational in exact mode, double otherwise).
template <class R>
struct MajorantModel {
    int r = 1;
    int n = 1;
    int q = 0;
    int k = 1;  // jet cut; k >= q+1
    std::vector<int> m;
    R M{0};
    R c{0};
    R C{0};
    std::vector<std::vector<int>> p;  // p[j][l] = max(0, l+q+1-m_j)
    std::vector<R> c_l;               // c_l = sum_{|Q|=l} Q!/l!, c_0 = 1
    std::vector<Poly1<R>> f;          // f[j], coefficients 1..N
};

/// c_l = sum over multiindices Q in n variables with |Q| = l of Q!/l!.
inline Rational derivative_count_constant(int n, int l) {
    if (l == 0) return Rational(1);
    Rational acc(0);
    for (const MultiIndex& Q : monomials_of_degree(n, l)) acc += Q.factorial();
    return acc / factorial_q(l);
}

namespace detail {

template <class R>
R from_q(const Rational& v) {
    if constexpr (std::is_same_v<R, Rational>)
        return v;
    else
        return v.get_d();
}

/// Right-hand side C*G(z, d^l(z^{m_j+k} f_j)/dz^l) truncated at degree N+q+k.
template <class R>
std::vector<Poly1<R>> majorant_rhs(const MajorantModel<R>& model, const std::vector<Poly1<R>>& f,
                                   int trunc) {
    const int r = model.r;
    Poly1<R> z(trunc);
    z.c[1] = R(1);
    Poly1<R> nz = z * R(model.n);

    // u[j][l] = d^l (z^{m_j+k} f_j) / dz^l
    std::vector<std::vector<Poly1<R>>> u(r);
    for (int j = 0; j < r; ++j) {
        Poly1<R> base = f[j].shifted(model.m[j] + model.k);
        for (int l = 0; l <= model.m[j]; ++l) u[j].push_back(base.derivative(l));
    }

    Poly1<R> lin(trunc);
    {  // (nz)^{k+q+1}
        Poly1<R> pw(trunc);
        pw.c[0] = R(1);
        for (int t = 0; t < model.k + model.q + 1; ++t) pw = pw * nz;
        lin += pw;
    }
    for (int j = 0; j < r; ++j)
        for (int l = 0; l <= model.m[j]; ++l) {
            Poly1<R> pw(trunc);
            pw.c[0] = R(1);
            for (int t = 0; t < model.p[j][l]; ++t) pw = pw * nz;
            lin += pw * u[j][l] * model.c_l[l];
        }
    Poly1<R> first = lin * geometric_inverse(nz * model.c) * model.M;

    Poly1<R> quad(trunc);
    for (int j = 0; j < r; ++j)
        for (int l = 1; l <= model.m[j]; ++l)
            for (int j2 = 0; j2 < r; ++j2)
                for (int l2 = 1; l2 <= model.m[j2]; ++l2)
                    quad += u[j][l] * u[j2][l2] * (model.c_l[l] * model.c_l[l2]);
    Poly1<R> denom_arg = nz;
    for (int j = 0; j < r; ++j)
        for (int l = 0; l <= model.m[j]; ++l) denom_arg += u[j][l] * model.c_l[l];
    Poly1<R> second = quad * geometric_inverse(denom_arg * model.c) * model.M;

    Poly1<R> g = first + second;
    std::vector<Poly1<R>> rhs(r, Poly1<R>(trunc));
    for (int i = 0; i < r; ++i) rhs[i] = g * model.C;
    return rhs;
}

}  // namespace detail

/// Solve d^{m_i}(z^{q+m_i+k} f_i)/dz^{m_i} = C G(...) termwise for N
/// coefficients by fixed-point iteration, until the coefficients stop moving.
template <class R>
MajorantModel<R> majorant_build(int r, int n, std::vector<int> m, int q, int k, R M, R c, R C,
                                int N) {
    if (k < q + 1) throw std::invalid_argument("majorant_build: need k >= q+1");
    MajorantModel<R> model;
    model.r = r;
    model.n = n;
    model.q = q;
    model.k = k;
    model.m = std::move(m);
    model.M = M;
    model.c = c;
    model.C = C;
    int mmax = 0;
    for (int j = 0; j < r; ++j) mmax = std::max(mmax, model.m[j]);
    for (int l = 0; l <= mmax; ++l)
        model.c_l.push_back(detail::from_q<R>(derivative_count_constant(n, l)));
    model.p.resize(r);
    for (int j = 0; j < r; ++j)
        for (int l = 0; l <= model.m[j]; ++l)
            model.p[j].push_back(std::max(0, l + q + 1 - model.m[j]));

    int trunc = N + q + k + mmax;
    model.f.assign(r, Poly1<R>(N));
    for (int pass = 0; pass <= N + 2; ++pass) {
        std::vector<Poly1<R>> rhs = detail::majorant_rhs(model, model.f, trunc);
        std::vector<Poly1<R>> next(r, Poly1<R>(N));
        for (int i = 0; i < r; ++i) {
            for (int pcoef = 1; pcoef <= N; ++pcoef) {
                // d^{m_i}(z^{q+m_i+k} f)/dz^{m_i} carries (p+q+k+m_i)!/(p+q+k)!
                // on coefficient p, producing z^{p+q+k}
                Rational factor = factorial_q(pcoef + q + k + model.m[i]) / factorial_q(pcoef + q + k);
                next[i].c[pcoef] = rhs[i].at(pcoef + q + k) / detail::from_q<R>(factor);
            }
        }
        if (next == model.f) return model;  // exact stabilization
        model.f = std::move(next);
    }
    throw std::runtime_error("majorant_build: fixed point did not stabilize");
}

struct DominationVerdict {
    bool dominated = true;
    int first_failure = -1;  // shifted index i with ||F^(m_j+k+i)|| > f_{j,i}
    int checked = 0;
};

/// Checks ||F_j^{(m_j+k+i)}|| <= f_{j,i} for every component and index
/// available on both sides. Exact when both sides are rational.
template <class S, class R>
DominationVerdict verify_domination(const VectorSeries<S>& F, const MajorantModel<R>& model,
                                    int k) {
    DominationVerdict v;
    for (int j = 0; j < std::min<int>(F.size(), model.r); ++j) {
        int avail = F.comp[j].truncation() - F.offsets[j] - k;
        int top = std::min(avail, model.f[j].truncation());
        for (int i = 1; i <= top; ++i) {
            bool ok;
            if constexpr (std::is_same_v<S, Rational> && std::is_same_v<R, Rational>) {
                ok = norm_exact_degree(F.comp[j], F.offsets[j] + k + i) <= model.f[j].at(i);
            } else {
                double lhs = norm_homogeneous_degree(F.comp[j], F.offsets[j] + k + i);
                double fr;
                if constexpr (std::is_same_v<R, Rational>)
                    fr = model.f[j].at(i).get_d();
                else
                    fr = model.f[j].at(i);
                ok = lhs <= fr * (1.0 + 1e-12);
            }
            ++v.checked;
            if (!ok) {
                v.dominated = false;
                if (v.first_failure < 0) v.first_failure = i;
                return v;
            }
        }
    }
    return v;
}

struct RadiusInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool valid = false;
};

/// Ratio-test estimate of the radius of convergence of f_j from the last
/// window of computed coefficients.
template <class R>
RadiusInterval radius_estimate(const MajorantModel<R>& model, int window = 10) {
    RadiusInterval out;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int j = 0; j < model.r; ++j) {
        const auto& f = model.f[j];
        int N = f.truncation();
        for (int i = std::max(1, N - window); i < N; ++i) {
            double a, b;
            if constexpr (std::is_same_v<R, Rational>) {
                a = f.at(i).get_d();
                b = f.at(i + 1).get_d();
            } else {
                a = f.at(i);
                b = f.at(i + 1);
            }
            if (a <= 0.0 || b <= 0.0) continue;
            double ratio = a / b;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    }
    if (hi > 0.0 && std::isfinite(lo)) {
        out.lo = lo;
        out.hi = hi;
        out.valid = true;
    }
    return out;
}

}  // namespace nf
