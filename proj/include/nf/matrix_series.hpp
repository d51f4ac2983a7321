#pragma once

#include <stdexcept>
#include <vector>

#include "nf/graded_series.hpp"
#include "nf/vector_series.hpp"

namespace nf {

/// Square matrix of graded series (all entries share n and truncation).
template <class S>
struct MatrixSeries {
    int dim = 0;
    std::vector<GradedSeries<S>> entry;  // row-major, dim*dim

    MatrixSeries() = default;
    MatrixSeries(int dim_, int n, int trunc)
        : dim(dim_), entry(static_cast<size_t>(dim_) * dim_, GradedSeries<S>(n, trunc)) {}

    GradedSeries<S>& at(int i, int j) { return entry[static_cast<size_t>(i) * dim + j]; }
    const GradedSeries<S>& at(int i, int j) const { return entry[static_cast<size_t>(i) * dim + j]; }

    int vars() const { return entry.empty() ? 0 : entry[0].vars(); }
    int truncation() const { return entry.empty() ? 0 : entry[0].truncation(); }

    static MatrixSeries identity(int dim, int n, int trunc) {
        MatrixSeries m(dim, n, trunc);
        for (int i = 0; i < dim; ++i)
            m.at(i, i).set_coeff(MultiIndex::zero(n), scalar_traits<S>::one());
        return m;
    }

    bool is_zero() const {
        for (const auto& e : entry)
            if (!e.is_zero()) return false;
        return true;
    }

    MatrixSeries transpose() const {
        MatrixSeries r(dim, vars(), truncation());
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) r.at(i, j) = at(j, i);
        return r;
    }

    MatrixSeries homogeneous_part(int k) const {
        MatrixSeries r(dim, vars(), truncation());
        for (size_t t = 0; t < entry.size(); ++t) r.entry[t] = entry[t].homogeneous_part(k);
        return r;
    }

    /// Lowest degree with a nonzero entry term, INT_MAX if zero.
    int order() const {
        int o = INT_MAX;
        for (const auto& e : entry) o = std::min(o, e.order());
        return o;
    }

    MatrixSeries& accumulate(const MatrixSeries& o) {
        for (size_t t = 0; t < entry.size(); ++t) entry[t].accumulate(o.entry[t]);
        return *this;
    }

    MatrixSeries& operator+=(const MatrixSeries& o) {
        for (size_t t = 0; t < entry.size(); ++t) entry[t] += o.entry[t];
        return *this;
    }
    MatrixSeries& operator-=(const MatrixSeries& o) {
        for (size_t t = 0; t < entry.size(); ++t) entry[t] -= o.entry[t];
        return *this;
    }
    friend MatrixSeries operator+(MatrixSeries a, const MatrixSeries& b) { return a += b; }
    friend MatrixSeries operator-(MatrixSeries a, const MatrixSeries& b) { return a -= b; }
    MatrixSeries operator-() const {
        MatrixSeries r = *this;
        for (auto& e : r.entry) e = -e;
        return r;
    }
    MatrixSeries& operator*=(const S& s) {
        for (auto& e : entry) e *= s;
        return *this;
    }
    friend MatrixSeries operator*(MatrixSeries a, const S& s) { return a *= s; }

    friend MatrixSeries operator*(const MatrixSeries& a, const MatrixSeries& b) {
        if (a.dim != b.dim) throw std::invalid_argument("MatrixSeries: dim mismatch");
        MatrixSeries r(a.dim, a.vars(), std::min(a.truncation(), b.truncation()));
        for (int i = 0; i < a.dim; ++i)
            for (int j = 0; j < a.dim; ++j)
                for (int t = 0; t < a.dim; ++t) r.at(i, j) += a.at(i, t) * b.at(t, j);
        return r;
    }

    friend bool operator==(const MatrixSeries& a, const MatrixSeries& b) {
        return a.dim == b.dim && a.entry == b.entry;
    }

    /// Matrix times a column of series.
    std::vector<GradedSeries<S>> apply(const std::vector<GradedSeries<S>>& v) const {
        if (static_cast<int>(v.size()) != dim) throw std::invalid_argument("apply: size mismatch");
        std::vector<GradedSeries<S>> out;
        out.reserve(dim);
        for (int i = 0; i < dim; ++i) {
            GradedSeries<S> s(vars(), std::min(truncation(), v[0].truncation()));
            for (int j = 0; j < dim; ++j) s += at(i, j) * v[j];
            out.push_back(std::move(s));
        }
        return out;
    }

    /// M(x) * x as a column of series.
    std::vector<GradedSeries<S>> apply_to_x() const {
        std::vector<GradedSeries<S>> x;
        for (int j = 0; j < vars(); ++j) x.push_back(variable_series<S>(vars(), truncation(), j));
        return apply(x);
    }

    GradedSeries<S> trace() const {
        GradedSeries<S> t(vars(), truncation());
        for (int i = 0; i < dim; ++i) t += at(i, i);
        return t;
    }

    /// Entrywise composition with x + phi.
    MatrixSeries compose_shifted(const std::vector<GradedSeries<S>>& phi, int target = -1) const {
        MatrixSeries r(dim, vars(), target >= 0 ? target : truncation());
        for (size_t t = 0; t < entry.size(); ++t)
            r.entry[t] = nf::compose_shifted(entry[t], phi, target >= 0 ? target : truncation());
        return r;
    }

    double max_entry_norm_degree(int k) const {
        double m = 0.0;
        for (const auto& e : entry) m = std::max(m, norm_homogeneous_degree(e, k));
        return m;
    }
};

/// Jacobian DF of an n-component map on n variables.
template <class S>
MatrixSeries<S> jacobian(const std::vector<GradedSeries<S>>& F) {
    int n = static_cast<int>(F.size());
    MatrixSeries<S> J(n, F[0].vars(), F[0].truncation());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) J.at(i, j) = partial(F[i], j);
    return J;
}

/// Solve (I + N) Z = rhs degree by degree for N of order >= 1; equivalent to
/// neumann_inverse(N, d).apply(rhs) but one convolution per entry.
template <class S>
std::vector<GradedSeries<S>> solve_unipotent(const MatrixSeries<S>& N,
                                             const std::vector<GradedSeries<S>>& rhs, int d) {
    if (N.order() < 1) throw std::invalid_argument("solve_unipotent: N has a constant term");
    int n = N.dim;
    std::vector<GradedSeries<S>> Z(n, GradedSeries<S>(N.vars(), d));
    for (int t = 0; t <= d; ++t)
        for (int i = 0; i < n; ++i) {
            GradedSeries<S> acc = rhs[i].homogeneous_part(t).truncated(d);
            // subtract (N Z)^(t), which only reads Z below degree t
            for (int j = 0; j < n; ++j) {
                const auto& e = N.at(i, j);
                for (int a = 1; a <= t; ++a) {
                    if (e.terms_of_degree(a).empty() || Z[j].terms_of_degree(t - a).empty())
                        continue;
                    for (const auto& [ma, ca] : e.terms_of_degree(a))
                        for (const auto& [mb, cb] : Z[j].terms_of_degree(t - a))
                            acc.add_coeff(ma.plus(mb), -(ca * cb));
                }
            }
            Z[i].accumulate(acc.homogeneous_part(t));
        }
    return Z;
}

/// Truncated inverse of (I + N): sum_{k<=d} (-N)^k. N must have order >= 1.
template <class S>
MatrixSeries<S> neumann_inverse(const MatrixSeries<S>& N, int d) {
    if (N.order() < 1) throw std::invalid_argument("neumann_inverse: N has a constant term");
    MatrixSeries<S> acc = MatrixSeries<S>::identity(N.dim, N.vars(), d);
    MatrixSeries<S> pw = acc;
    MatrixSeries<S> mN = -N;
    for (int k = 1; k <= d; ++k) {
        pw = pw * mN;
        if (pw.is_zero()) break;
        acc += pw;
    }
    return acc;
}

/// Truncated matrix exponential sum_{k<=d} Q^k / k!. Q must have order >= 1.
template <class S>
MatrixSeries<S> matrix_exp(const MatrixSeries<S>& Q, int d) {
    if (Q.order() < 1) throw std::invalid_argument("matrix_exp: Q has a constant term");
    MatrixSeries<S> acc = MatrixSeries<S>::identity(Q.dim, Q.vars(), d);
    MatrixSeries<S> pw = acc;
    for (int k = 1; k <= d; ++k) {
        pw = pw * Q;
        if (pw.is_zero()) break;
        acc += pw * (scalar_traits<S>::one() / scalar_traits<S>::from_rational(factorial_q(k)));
    }
    return acc;
}

/// Truncated matrix logarithm of (I + N), N of order >= 1.
template <class S>
MatrixSeries<S> matrix_log(const MatrixSeries<S>& N, int d) {
    if (N.order() < 1) throw std::invalid_argument("matrix_log: N has a constant term");
    MatrixSeries<S> acc(N.dim, N.vars(), d);
    MatrixSeries<S> pw = MatrixSeries<S>::identity(N.dim, N.vars(), d);
    S sign = scalar_traits<S>::one();
    for (int k = 1; k <= d; ++k) {
        pw = pw * N;
        if (pw.is_zero()) break;
        acc += pw * (sign / scalar_traits<S>::from_int(k));
        sign = -sign;
    }
    return acc;
}

}  // namespace nf
