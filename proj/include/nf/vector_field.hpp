#pragma once

#include <utility>
#include <vector>

#include "nf/engine.hpp"
#include "nf/matrix_series.hpp"
#include "nf/profile.hpp"

namespace nf {

/// x' = Ax + R with A = diag(lambda) and R of order >= 2.
template <class S>
struct VectorFieldProblem {
    std::vector<S> lambda;
    std::vector<GradedSeries<S>> R;  // n components
    int d = 10;
    double tol = kDefaultTol;

    int n() const { return static_cast<int>(lambda.size()); }
};

/// lambda_j - (Q, lambda).
template <class S>
S denominator(const std::vector<S>& lambda, int j, const MultiIndex& Q) {
    S acc = lambda.at(j);
    for (int t = 0; t < Q.n(); ++t)
        acc -= scalar_traits<S>::from_int(Q[t]) * lambda[t];
    return acc;
}

/// Resonance test: exact zero in exact mode, |den| <= tol(1+|Q|) in floating.
template <class S>
bool is_resonant_denominator(const S& den, const MultiIndex& Q, double tol) {
    if constexpr (scalar_traits<S>::is_exact)
        return scalar_traits<S>::is_zero(den, 0.0);
    else
        return scalar_traits<S>::abs_approx(den) <= tol * (1.0 + Q.degree());
}

/// All (j, Q) with 2 <= |Q| <= d and vanishing denominator.
template <class S>
std::vector<std::pair<int, MultiIndex>> enumerate_resonances(const std::vector<S>& lambda, int d,
                                                             double tol = kDefaultTol) {
    int n = static_cast<int>(lambda.size());
    std::vector<std::pair<int, MultiIndex>> out;
    for (int deg = 2; deg <= d; ++deg)
        for (const MultiIndex& Q : monomials_of_degree(n, deg))
            for (int j = 0; j < n; ++j)
                if (is_resonant_denominator(denominator(lambda, j, Q), Q, tol))
                    out.emplace_back(j, Q);
    return out;
}

namespace detail {
template <class R>
int sign_of(const R& v) {
    if constexpr (std::is_same_v<R, Rational>)
        return sgn(v);
    else
        return (v > 0) - (v < 0);
}
}  // namespace detail

/// True iff 0 is not in the convex hull of {lambda_j} in the complex plane
/// (a separating line through 0 exists, line excluded). Exact in exact modes.
template <class S>
bool poincare_domain(const std::vector<S>& lambda) {
    using tr = scalar_traits<S>;
    using R = typename tr::real_t;
    int n = static_cast<int>(lambda.size());
    std::vector<R> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x[i] = tr::re(lambda[i]);
        y[i] = tr::im(lambda[i]);
    }
    for (int i = 0; i < n; ++i)
        if (detail::sign_of(x[i]) == 0 && detail::sign_of(y[i]) == 0) return false;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            R cross = x[i] * y[j] - y[i] * x[j];
            R dot = x[i] * x[j] + y[i] * y[j];
            if (detail::sign_of(cross) == 0 && detail::sign_of(dot) < 0) return false;  // 0 on segment
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                int s1 = detail::sign_of(R(x[i] * y[j] - y[i] * x[j]));
                int s2 = detail::sign_of(R(x[j] * y[k] - y[j] * x[k]));
                int s3 = detail::sign_of(R(x[k] * y[i] - y[k] * x[i]));
                if (s1 != 0 && s1 == s2 && s2 == s3) return false;  // 0 strictly inside
            }
    return true;
}

/// S(F) = A F - DF * Ax, the linearized action at the diagonal linear field.
template <class S>
std::vector<GradedSeries<S>> vf_cohomological_operator(const std::vector<GradedSeries<S>>& F,
                                                       const std::vector<S>& lambda) {
    int n = static_cast<int>(lambda.size());
    std::vector<GradedSeries<S>> out;
    out.reserve(n);
    for (int j = 0; j < n; ++j) {
        GradedSeries<S> s = F[j] * lambda[j];
        for (int l = 0; l < n; ++l) {
            GradedSeries<S> xl = variable_series<S>(n, F[j].truncation(), l);
            s -= partial(F[j], l) * xl * lambda[l];
        }
        out.push_back(std::move(s));
    }
    return out;
}

/// The conjugated field (I + DF)^{-1} (Ax + A F + R(x + F)), truncated at d.
template <class S>
std::vector<GradedSeries<S>> pushforward(const std::vector<GradedSeries<S>>& F,
                                         const std::vector<S>& lambda,
                                         const std::vector<GradedSeries<S>>& R, int d) {
    int n = static_cast<int>(lambda.size());
    std::vector<GradedSeries<S>> rhs;
    rhs.reserve(n);
    for (int j = 0; j < n; ++j) {
        GradedSeries<S> v = variable_series<S>(n, d, j) * lambda[j];  // Ax
        v += F[j].truncated(d) * lambda[j];                           // A F
        v += compose_shifted(R[j].truncated(d), F, d);                // R(x+F)
        rhs.push_back(std::move(v));
    }
    std::vector<GradedSeries<S>> Ftr;
    for (const auto& f : F) Ftr.push_back(f.truncated(d));
    return solve_unipotent(jacobian(Ftr), rhs, d);
}

/// Denominator profile over all (j, Q) with 2 <= |Q| <= d; Poincare-domain
/// eigenvalue tuples are labeled big regardless of the fit.
template <class S>
DenominatorProfile classify_growth(const std::vector<S>& lambda, int d, double tol = kDefaultTol,
                                   double slack = 0.1) {
    int n = static_cast<int>(lambda.size());
    std::vector<DenominatorEntry> entries;
    for (int deg = 2; deg <= d; ++deg)
        for (const MultiIndex& Q : monomials_of_degree(n, deg))
            for (int j = 0; j < n; ++j) {
                S den = denominator(lambda, j, Q);
                DenominatorEntry e;
                e.component = j;
                e.exponents = Q.exponents();
                e.degree = deg;
                e.abs_value = scalar_traits<S>::abs_approx(den);
                e.resonant = is_resonant_denominator(den, Q, tol);
                entries.push_back(std::move(e));
            }
    DenominatorProfile p = classify_denominators(std::move(entries), 1, slack);
    if (poincare_domain(lambda)) {
        p.kind = DenominatorClass::big;
        p.poincare_override = true;
    }
    return p;
}

template <class S>
struct PDResult {
    std::vector<GradedSeries<S>> F;            // transformation id + F
    std::vector<GradedSeries<S>> normal_form;  // full conjugated field, linear part included
    std::vector<std::pair<int, MultiIndex>> resonant_terms;  // positions moved to the normal form
    DenominatorProfile profile;
    SolveReport report;
    bool certified = false;
};

/// Poincare-Dulac normalization for diagonal linear part: kills every
/// non-resonant coefficient degree by degree and re-verifies by substitution.
template <class S>
PDResult<S> pd_normalize(const VectorFieldProblem<S>& problem) {
    using tr = scalar_traits<S>;
    int n = problem.n();
    int d = problem.d;
    for (const auto& r : problem.R)
        if (r.order() < 2) throw std::invalid_argument("pd_normalize: R must have order >= 2");

    PDResult<S> out;
    out.F.assign(n, GradedSeries<S>(n, d));
    for (int k = 2; k <= d; ++k) {
        // only the degree-k slice matters here, so truncate the recomputation at k
        std::vector<GradedSeries<S>> cur = pushforward(out.F, problem.lambda, problem.R, k);
        double rhsn = 0.0, resn = 0.0, soln = 0.0;
        double mind = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
            rhsn = std::max(rhsn, norm_homogeneous_degree(cur[j], k));
            double res_j = 0.0;
            for (const auto& [Q, c] : cur[j].terms_of_degree(k)) {
                S den = denominator(problem.lambda, j, Q);
                if (is_resonant_denominator(den, Q, problem.tol)) {
                    out.resonant_terms.emplace_back(j, Q);
                    res_j += tr::abs_approx(c);
                } else {
                    out.F[j].add_coeff(Q, -c / den);
                    mind = std::min(mind, tr::abs_approx(den));
                }
            }
            resn = std::max(resn, res_j);
            soln = std::max(soln, norm_homogeneous_degree(out.F[j], k));
        }
        out.report.degrees.push_back(k);  // ambient degree of the killed terms
        out.report.rhs_norm.push_back(rhsn);
        out.report.solution_norm.push_back(soln);
        out.report.residual_norm.push_back(resn);
        out.report.min_denominator.push_back(std::isfinite(mind)
                                                 ? mind
                                                 : std::numeric_limits<double>::quiet_NaN());
    }

    out.normal_form = pushforward(out.F, problem.lambda, problem.R, d);
    out.profile = classify_growth(problem.lambda, d, problem.tol);

    out.certified = true;
    for (int j = 0; j < n && out.certified; ++j)
        for (int k = 2; k <= d && out.certified; ++k)
            for (const auto& [Q, c] : out.normal_form[j].terms_of_degree(k)) {
                S den = denominator(problem.lambda, j, Q);
                if (is_resonant_denominator(den, Q, problem.tol)) continue;
                if constexpr (tr::is_exact) {
                    out.certified = false;
                } else {
                    if (tr::abs_approx(c) > problem.tol) out.certified = false;
                }
                if (!out.certified) break;
            }
    return out;
}

/// Generic-engine formulation of the same problem; used as a cross-check
/// against pd_normalize.
template <class S>
CohomologyProblem<S> vf_engine_problem(const VectorFieldProblem<S>& problem) {
    int n = problem.n();
    int d = problem.d;
    CohomologyProblem<S> cp;
    cp.n = n;
    cp.r = n;
    cp.s_dim = n;
    cp.q = 1;
    cp.d_shift = 0;
    cp.m.assign(n, 1);
    cp.projection_spec = "kill non-resonant monomial coefficients; resonant monomials span the complement";

    std::vector<S> lambda = problem.lambda;
    std::vector<GradedSeries<S>> R = problem.R;
    double tol = problem.tol;

    cp.eval_nonlinear = [lambda, R, d, n](const VectorSeries<S>& F) {
        std::vector<GradedSeries<S>> f(F.comp.begin(), F.comp.end());
        std::vector<GradedSeries<S>> t = vf_cohomological_operator(f, lambda);
        std::vector<GradedSeries<S>> push = pushforward(f, lambda, R, d);
        VectorSeries<S> out(n, n, d);
        for (int j = 0; j < n; ++j) {
            GradedSeries<S> lin = variable_series<S>(n, d, j) * lambda[j];
            out.comp[j] = t[j] - (push[j] - lin);
        }
        return out;
    };
    cp.solve_degree = [lambda, tol, n, d](int k, const VectorSeries<S>& rhs) {
        DegreeSolve<S> step;
        step.solution = VectorSeries<S>(n, n, d, std::vector<int>(n, 1));
        step.residual = VectorSeries<S>(n, n, d);
        double mind = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j)
            for (const auto& [Q, c] : rhs.comp[j].terms_of_degree(k + 1)) {
                S den = denominator(lambda, j, Q);
                if (is_resonant_denominator(den, Q, tol)) {
                    step.residual.comp[j].add_coeff(Q, c);
                } else {
                    step.solution.comp[j].add_coeff(Q, c / den);
                    mind = std::min(mind, scalar_traits<S>::abs_approx(den));
                }
            }
        if (std::isfinite(mind)) step.min_abs_denominator = mind;
        return step;
    };
    return cp;
}

}  // namespace nf
