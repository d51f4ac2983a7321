#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "nf/vector_series.hpp"

namespace nf {

/// One degree of a homological solve: the shifted degree-k solution component
/// and the residual left in the chosen complement of the image.
template <class S>
struct DegreeSolve {
    VectorSeries<S> solution;  // r components, component j homogeneous of ambient degree m_j + k
    VectorSeries<S> residual;  // s components, homogeneous of the target ambient degree
    double min_abs_denominator = std::numeric_limits<double>::quiet_NaN();
};

struct SolveDegreeError : std::runtime_error {
    int degree;
    SolveDegreeError(int k, const std::string& what)
        : std::runtime_error("degree " + std::to_string(k) + ": " + what), degree(k) {}
};

/// Degree-by-degree solver data for S(F) = pi(T(F)). q is the ambient degree
/// raise of S under the shifted convention (target degree of shifted degree k
/// is q + k); d_shift delays the first solved degree to d_shift + 1.
template <class S>
struct CohomologyProblem {
    int n = 1;
    int r = 1;
    int s_dim = 1;
    int q = 0;
    int d_shift = 0;
    std::vector<int> m;

    /// How the projection onto the image is realized (complement basis per
    /// degree, or a closed form); descriptive only.
    std::string projection_spec;

    /// Maps a homogeneous target component of ambient degree q+k to the
    /// shifted degree-k solution plus the residual in the complement.
    std::function<DegreeSolve<S>(int k, const VectorSeries<S>& rhs)> solve_degree;

    /// Full nonlinear evaluator T on a truncated candidate F.
    std::function<VectorSeries<S>(const VectorSeries<S>& F)> eval_nonlinear;
};

struct SolveReport {
    std::vector<int> degrees;  // shifted degrees
    std::vector<double> rhs_norm, solution_norm, residual_norm, min_denominator;
    double wall_seconds = 0.0;  // in-memory only, not serialized
};

template <class S>
struct EngineResult {
    VectorSeries<S> F;         // the formal solution, truncated
    VectorSeries<S> residual;  // sum over degrees of (1-pi)(T(F))
    SolveReport report;
};

/// F^(k) = (S^{-1} pi T(S_{k-1}))^(k) for d_shift < k <= d. Recomputing with a
/// finer truncation leaves lower-degree output unchanged.
template <class S>
EngineResult<S> solve_degreewise(const CohomologyProblem<S>& problem, int d) {
    auto t0 = std::chrono::steady_clock::now();
    EngineResult<S> out;
    out.F = VectorSeries<S>(problem.r, problem.n, 0, problem.m);
    for (int j = 0; j < problem.r; ++j)
        out.F.comp[j] = GradedSeries<S>(problem.n, problem.m[j] + d);
    out.residual = VectorSeries<S>(problem.s_dim, problem.n, problem.q + d);

    {
        VectorSeries<S> t0v = problem.eval_nonlinear(out.F);
        int ord = INT_MAX;
        for (const auto& c : t0v.comp) ord = std::min(ord, c.order());
        if (ord < problem.q + 1 + problem.d_shift)
            throw std::invalid_argument("solve_degreewise: T(0) has order " + std::to_string(ord) +
                                        " < q+1+d_shift");
    }

    for (int k = problem.d_shift + 1; k <= d; ++k) {
        VectorSeries<S> tval = problem.eval_nonlinear(out.F);
        int target = problem.q + k;
        VectorSeries<S> rhs = tval.shifted_part(target);  // offsets are zero on the target side
        DegreeSolve<S> step = problem.solve_degree(k, rhs);
        out.F.accumulate(step.solution);
        out.residual.accumulate(step.residual);

        out.report.degrees.push_back(k);
        out.report.rhs_norm.push_back(shifted_norm(rhs, target));
        out.report.solution_norm.push_back(shifted_norm(step.solution, k));
        out.report.residual_norm.push_back(shifted_norm(step.residual, target));
        out.report.min_denominator.push_back(step.min_abs_denominator);
    }
    out.report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace nf
