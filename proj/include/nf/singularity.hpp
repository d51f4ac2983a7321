#pragma once

#include <utility>
#include <vector>

#include "nf/belitskii.hpp"
#include "nf/engine.hpp"
#include "nf/linalg.hpp"

namespace nf {

/// f = f0 + R with f0 homogeneous of degree q >= 2 and ord R >= q+1.
template <class S>
struct SingularityProblem {
    GradedSeries<S> f0;
    GradedSeries<S> R;
    int d = 10;
    double tol = kDefaultTol;

    int q() const { return f0.order(); }
};

template <class S>
struct JacobianDegreeData {
    DenseMatrix<S> s_matrix;                       // columns: (component l, monomial beta)
    std::vector<MultiIndex> domain_monomials;      // degree i-q+1
    std::vector<MultiIndex> codomain_monomials;    // degree i
    std::vector<GradedSeries<S>> image_basis;      // independent columns as polynomials
    std::vector<GradedSeries<S>> complement_basis; // Belitskii-orthogonal complement of the image
};

/// Image of U -> Df0 . U from (vector fields homogeneous of degree i-q+1)
/// into degree-i polynomials, plus its orthogonal complement.
template <class S>
JacobianDegreeData<S> jacobian_image_basis(const GradedSeries<S>& f0, int i,
                                           InnerVariant variant = InnerVariant::classic,
                                           double tol = 0.0) {
    int n = f0.vars();
    int q = f0.is_zero() ? 0 : f0.order();
    if (!f0.is_zero() && f0.top_degree() != q)
        throw std::invalid_argument("jacobian_image_basis: f0 must be homogeneous");
    if (!f0.is_zero() && i < q) throw std::invalid_argument("jacobian_image_basis: need i >= q");

    JacobianDegreeData<S> out;
    out.codomain_monomials = monomials_of_degree(n, i);
    int udeg = f0.is_zero() ? 0 : i - q + 1;
    out.domain_monomials = f0.is_zero() ? std::vector<MultiIndex>{} : monomials_of_degree(n, udeg);

    int rows = static_cast<int>(out.codomain_monomials.size());
    int cols = static_cast<int>(out.domain_monomials.size()) * n;
    std::map<MultiIndex, int, GrlexLess> row_of;
    for (int r = 0; r < rows; ++r) row_of.emplace(out.codomain_monomials[r], r);

    out.s_matrix = DenseMatrix<S>(rows, cols);
    std::vector<GradedSeries<S>> df;
    for (int l = 0; l < n; ++l) df.push_back(partial(f0, l));
    int col = 0;
    for (int l = 0; l < n; ++l)
        for (const MultiIndex& beta : out.domain_monomials) {
            for (const auto& [a, c] : df[l].terms_of_degree(q - 1))
                out.s_matrix.at(row_of.at(a.plus(beta)), col) += c;
            ++col;
        }

    // independent columns -> image basis
    {
        DenseMatrix<S> copy = out.s_matrix;
        std::vector<int> piv = rref(copy, tol);
        for (int c : piv) {
            GradedSeries<S> g(n, i);
            for (int r = 0; r < rows; ++r)
                if (!scalar_traits<S>::is_zero(out.s_matrix.at(r, c), 0.0))
                    g.add_coeff(out.codomain_monomials[r], out.s_matrix.at(r, c));
            out.image_basis.push_back(std::move(g));
        }
    }
    // Belitskii-orthogonal complement of the column space
    {
        std::vector<S> w(rows);
        for (int r = 0; r < rows; ++r)
            w[r] = scalar_traits<S>::from_rational(
                belitskii_weight(out.codomain_monomials[r], variant));
        for (auto& v : column_space_orthogonal_complement(out.s_matrix, w, tol)) {
            GradedSeries<S> g(n, i);
            for (int r = 0; r < rows; ++r)
                if (!scalar_traits<S>::is_zero(v[r], 0.0)) g.add_coeff(out.codomain_monomials[r], v[r]);
            out.complement_basis.push_back(std::move(g));
        }
    }
    return out;
}

template <class S>
struct SingResult {
    std::vector<GradedSeries<S>> U;  // transformation id + U, ord U >= 2
    GradedSeries<S> h;               // remainder: f(id+U) = f0 + h, h^(i) in the complement
    std::vector<int> complement_dims;  // dim of the complement per degree q+1..d
    SolveReport report;
    bool certified = false;
};

/// Degreewise normalization of f = f0 + R: for q < i <= d the degree-i part
/// of f(id+U) is moved into the Belitskii complement of Image(Df0 . ).
template <class S>
SingResult<S> sing_normalize(const SingularityProblem<S>& problem,
                             InnerVariant variant = InnerVariant::classic) {
    using tr = scalar_traits<S>;
    const int n = problem.f0.vars();
    const int d = problem.d;
    const int q = problem.q();
    if (q < 2) throw std::invalid_argument("sing_normalize: f0 must have degree >= 2");
    if (problem.f0.top_degree() != q)
        throw std::invalid_argument("sing_normalize: f0 must be homogeneous");
    if (!problem.R.is_zero() && problem.R.order() <= q)
        throw std::invalid_argument("sing_normalize: R must have order > q");

    GradedSeries<S> f = problem.f0.truncated(d);
    f += problem.R.truncated(d);

    SingResult<S> out;
    out.U.assign(n, GradedSeries<S>(n, d));
    out.h = GradedSeries<S>(n, d);

    for (int i = q + 1; i <= d; ++i) {
        JacobianDegreeData<S> data = jacobian_image_basis(problem.f0, i, variant, problem.tol);
        out.complement_dims.push_back(static_cast<int>(data.complement_basis.size()));

        GradedSeries<S> cur = compose_shifted(f, out.U, d);
        GradedSeries<S> B = (cur - problem.f0.truncated(d)).homogeneous_part(i);

        std::vector<S> rhs(data.codomain_monomials.size(), tr::zero());
        for (size_t r = 0; r < data.codomain_monomials.size(); ++r)
            rhs[r] = B.coeff(data.codomain_monomials[r]);

        std::vector<S> wc(data.codomain_monomials.size());
        for (size_t r = 0; r < wc.size(); ++r)
            wc[r] = tr::from_rational(belitskii_weight(data.codomain_monomials[r], variant));
        std::vector<S> wd(data.domain_monomials.size() * n);
        for (size_t t = 0; t < wd.size(); ++t)
            wd[t] = tr::from_rational(
                belitskii_weight(data.domain_monomials[t % data.domain_monomials.size()], variant));

        ComplementSolve<S> sol =
            solve_with_complement(data.s_matrix, rhs, wc, wd, tr::is_exact ? 0.0 : problem.tol);

        int udeg = i - q + 1;
        double soln = 0.0;
        int col = 0;
        for (int l = 0; l < n; ++l)
            for (const MultiIndex& beta : data.domain_monomials) {
                if (!tr::is_zero(sol.solution[col], 0.0)) out.U[l].add_coeff(beta, -sol.solution[col]);
                ++col;
            }
        for (int l = 0; l < n; ++l) soln = std::max(soln, norm_homogeneous_degree(out.U[l], udeg));
        double resn = 0.0;
        for (size_t r = 0; r < data.codomain_monomials.size(); ++r) {
            if (!tr::is_zero(sol.residual[r], 0.0))
                out.h.add_coeff(data.codomain_monomials[r], sol.residual[r]);
            resn += tr::abs_approx(sol.residual[r]);
        }

        out.report.degrees.push_back(i);
        out.report.rhs_norm.push_back(norm_homogeneous_degree(B, i));
        out.report.solution_norm.push_back(soln);
        out.report.residual_norm.push_back(resn);
        out.report.min_denominator.push_back(std::numeric_limits<double>::quiet_NaN());
    }

    // certificate: f(id+U) - f0 - h vanishes through degree d
    GradedSeries<S> composed = compose_shifted(f, out.U, d);
    GradedSeries<S> diff = composed - problem.f0.truncated(d) - out.h;
    if constexpr (tr::is_exact) {
        out.certified = diff.is_zero();
    } else {
        out.certified = true;
        diff.for_each([&](const MultiIndex&, const S& c) {
            if (tr::abs_approx(c) > problem.tol) out.certified = false;
        });
    }
    return out;
}

/// Engine formulation of the same problem (d_shift = 1, q_eff = q - 1);
/// cross-checked against sing_normalize.
template <class S>
CohomologyProblem<S> sing_engine_problem(const SingularityProblem<S>& problem,
                                         InnerVariant variant = InnerVariant::classic) {
    using tr = scalar_traits<S>;
    const int n = problem.f0.vars();
    const int d = problem.d;
    const int q = problem.q();
    CohomologyProblem<S> cp;
    cp.n = n;
    cp.r = n;
    cp.s_dim = 1;
    cp.q = q - 1;
    cp.d_shift = 1;
    cp.m.assign(n, 0);
    cp.projection_spec = "orthogonal projection onto the jacobian image, complement basis per degree";

    GradedSeries<S> f0 = problem.f0.truncated(d);
    GradedSeries<S> f = f0;
    f += problem.R.truncated(d);
    double tol = problem.tol;

    cp.eval_nonlinear = [f, f0, n, d](const VectorSeries<S>& U) {
        // T(U) = S(U) - (f(id+U) - f0), with S(U) = Df0 . U
        std::vector<GradedSeries<S>> u;
        u.reserve(n);
        for (const auto& c : U.comp) u.push_back(c.extended(d));  // unsolved degrees are zero
        GradedSeries<S> s(n, d);
        for (int l = 0; l < n; ++l) s += partial(f0, l) * u[l];
        GradedSeries<S> t = s - (compose_shifted(f, u, d) - f0);
        VectorSeries<S> out(1, n, d);
        out.comp[0] = std::move(t);
        return out;
    };
    cp.solve_degree = [f0, n, variant, tol, d, q](int k, const VectorSeries<S>& rhs) {
        int i = (q - 1) + k;  // target ambient degree
        JacobianDegreeData<S> data = jacobian_image_basis(f0, i, variant, tol);
        std::vector<S> b(data.codomain_monomials.size(), tr::zero());
        for (size_t r = 0; r < b.size(); ++r) b[r] = rhs.comp[0].coeff(data.codomain_monomials[r]);
        std::vector<S> wc(data.codomain_monomials.size());
        for (size_t r = 0; r < wc.size(); ++r)
            wc[r] = tr::from_rational(belitskii_weight(data.codomain_monomials[r], variant));
        std::vector<S> wd(data.domain_monomials.size() * n);
        for (size_t t = 0; t < wd.size(); ++t)
            wd[t] = tr::from_rational(
                belitskii_weight(data.domain_monomials[t % data.domain_monomials.size()], variant));
        ComplementSolve<S> sol =
            solve_with_complement(data.s_matrix, b, wc, wd, tr::is_exact ? 0.0 : tol);

        DegreeSolve<S> step;
        step.solution = VectorSeries<S>(n, n, d, std::vector<int>(n, 0));
        step.residual = VectorSeries<S>(1, n, (q - 1) + d);
        int col = 0;
        for (int l = 0; l < n; ++l)
            for (const MultiIndex& beta : data.domain_monomials) {
                if (!tr::is_zero(sol.solution[col], 0.0))
                    step.solution.comp[l].add_coeff(beta, sol.solution[col]);
                ++col;
            }
        for (size_t r = 0; r < data.codomain_monomials.size(); ++r)
            if (!tr::is_zero(sol.residual[r], 0.0))
                step.residual.comp[0].add_coeff(data.codomain_monomials[r], sol.residual[r]);
        return step;
    };
    return cp;
}

}  // namespace nf
