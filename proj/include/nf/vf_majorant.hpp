#pragma once

#include "nf/majorant.hpp"
#include "nf/vector_field.hpp"

namespace nf {

/// Smallest admissible jet cut k: q+1 in general, one more when the model
/// feeds the Gevrey path (product-order margin >= 2).
inline int minimal_jet_cut(int q, bool gevrey_path = false) { return q + 1 + (gevrey_path ? 1 : 0); }

template <class R>
struct VfMajorantParams {
    R M{0}, c{0}, C{0};
    int k = 2;
};

/// Cauchy-type numeric estimate of (M, c) for the vector-field action, from a
/// truncated hat model of the nonlinearity on the polydisc of radius rho, and
/// of the big-denominator constant C from the enumerated denominators.
/// Numeric evidence, not a proof; verify_domination is the certificate.
template <class S>
VfMajorantParams<Rational> estimate_vf_majorant(const VectorFieldProblem<S>& problem,
                                                Rational rho = Rational(1, 2), int hat_order = 12,
                                                int den_range = 40) {
    using tr = scalar_traits<S>;
    const int n = problem.n();

    // exact-where-possible hat coefficients of R and the linear part
    std::vector<Rational> rhat(problem.d + 1, Rational(0));
    for (int i = 2; i <= problem.d; ++i) {
        Rational v(0);
        for (int j = 0; j < n; ++j) {
            if constexpr (std::is_same_v<S, Rational>) {
                Rational w = norm_exact_degree(problem.R[j], i);
                if (w > v) v = w;
            } else {
                Rational w(norm_homogeneous_degree(problem.R[j], i));
                if (w > v) v = w;
            }
        }
        rhat[i] = v;
    }
    Rational a(0);
    for (const S& lam : problem.lambda) {
        Rational bound;
        if constexpr (tr::is_exact)
            bound = abs(tr::re(lam)) + abs(tr::im(lam));  // >= |lambda|
        else
            bound = Rational(tr::abs_approx(lam));
        if (bound > a) a = bound;
    }

    // 3-variable hat model in (z, u0, u1): dominates R(x+F), the Neumann tail
    // and the DF cross term coefficientwise.
    using G3 = GradedSeries<Rational>;
    const int N = hat_order;
    auto var = [&](int j) { return variable_series<Rational>(3, N, j); };
    G3 zu = var(0) + var(1);
    G3 rzu(3, N);
    {
        G3 pw(3, N);
        pw.set_coeff(MultiIndex::zero(3), Rational(1));
        for (int i = 1; i <= std::min(problem.d, N); ++i) {
            pw = pw * zu;
            if (sgn(rhat[i]) != 0) rzu += pw * rhat[i];
        }
    }
    G3 lin = zu * a + rzu;
    G3 nu1 = var(2) * Rational(n);
    G3 tail(3, N);  // sum_{k>=2} (n u1)^k = (n u1)^2 / (1 - n u1)
    {
        G3 pw = nu1 * nu1;
        while (!pw.is_zero()) {
            tail += pw;
            pw = pw * nu1;
        }
    }
    G3 omega = rzu + tail * lin + var(2) * Rational(n) * (var(1) * a + rzu);

    VfMajorantParams<Rational> out;
    out.k = minimal_jet_cut(1);
    out.c = Rational(1) / rho;
    Rational best(0);
    omega.for_each([&](const MultiIndex& alpha, const Rational& cf) {
        Rational scaled = abs(cf);
        for (int t = 0; t < alpha.degree(); ++t) scaled *= rho;
        if (scaled > best) best = scaled;
    });
    out.M = best * 4;  // fixed safety margin
    if (sgn(out.M) == 0) out.M = Rational(1);

    double cbound = 0.0;
    for (int deg = 2; deg <= den_range; ++deg) {
        double mind = std::numeric_limits<double>::infinity();
        for (const MultiIndex& Q : monomials_of_degree(n, deg))
            for (int j = 0; j < n; ++j) {
                S den = denominator(problem.lambda, j, Q);
                if (is_resonant_denominator(den, Q, problem.tol)) continue;
                mind = std::min(mind, tr::abs_approx(den));
            }
        if (std::isfinite(mind) && mind > 0.0) cbound = std::max(cbound, deg / mind);
    }
    out.C = Rational(cbound <= 0.0 ? 1.0 : cbound) * 2;
    return out;
}

}  // namespace nf
