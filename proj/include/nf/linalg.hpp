#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nf/scalar.hpp"

namespace nf {

template <class S>
struct DenseMatrix {
    int rows = 0, cols = 0;
    std::vector<S> a;

    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, scalar_traits<S>::zero()) {}

    S& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const S& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    DenseMatrix conj_transpose() const {
        DenseMatrix r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r.at(j, i) = scalar_traits<S>::conj(at(i, j));
        return r;
    }

    std::vector<S> apply(const std::vector<S>& v) const {
        std::vector<S> out(rows, scalar_traits<S>::zero());
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) out[i] += at(i, j) * v[j];
        return out;
    }
};

namespace detail {

template <class S>
int pick_pivot(const DenseMatrix<S>& m, int col, int from_row, double tol) {
    using tr = scalar_traits<S>;
    if constexpr (tr::is_exact) {
        for (int i = from_row; i < m.rows; ++i)
            if (!tr::is_zero(m.at(i, col), 0.0)) return i;
        return -1;
    } else {
        int best = -1;
        double bv = tol;
        for (int i = from_row; i < m.rows; ++i) {
            double v = tr::abs_approx(m.at(i, col));
            if (v > bv) {
                bv = v;
                best = i;
            }
        }
        return best;
    }
}

}  // namespace detail

/// Reduced row echelon form in place; returns pivot columns.
template <class S>
std::vector<int> rref(DenseMatrix<S>& m, double tol = 0.0) {
    using tr = scalar_traits<S>;
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int p = detail::pick_pivot(m, col, row, tol);
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(row, j));
        S inv = tr::one() / m.at(row, col);
        for (int j = col; j < m.cols; ++j) m.at(row, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == row || tr::is_zero(m.at(i, col), 0.0)) continue;
            S f = m.at(i, col);
            for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

/// Kernel basis of A (columns of A indexed by domain coordinates).
template <class S>
std::vector<std::vector<S>> kernel_basis(DenseMatrix<S> A, double tol = 0.0) {
    using tr = scalar_traits<S>;
    std::vector<int> piv = rref(A, tol);
    std::vector<bool> is_piv(A.cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::vector<S>> basis;
    for (int free = 0; free < A.cols; ++free) {
        if (is_piv[free]) continue;
        std::vector<S> v(A.cols, tr::zero());
        v[free] = tr::one();
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -A.at(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solve A x = b for a consistent system; free variables are set to zero.
/// Returns nullopt on inconsistency.
template <class S>
std::optional<std::vector<S>> solve_linear(DenseMatrix<S> A, std::vector<S> b, double tol = 0.0) {
    using tr = scalar_traits<S>;
    int row = 0;
    std::vector<int> pivcol;
    for (int col = 0; col < A.cols && row < A.rows; ++col) {
        int p = detail::pick_pivot(A, col, row, tol);
        if (p < 0) continue;
        if (p != row) {
            for (int j = 0; j < A.cols; ++j) std::swap(A.at(p, j), A.at(row, j));
            std::swap(b[p], b[row]);
        }
        S inv = tr::one() / A.at(row, col);
        for (int j = col; j < A.cols; ++j) A.at(row, j) *= inv;
        b[row] = b[row] * inv;
        for (int i = 0; i < A.rows; ++i) {
            if (i == row || tr::is_zero(A.at(i, col), 0.0)) continue;
            S f = A.at(i, col);
            for (int j = col; j < A.cols; ++j) A.at(i, j) -= f * A.at(row, j);
            b[i] -= f * b[row];
        }
        pivcol.push_back(col);
        ++row;
    }
    double check_tol = tr::is_exact ? 0.0 : (tol > 0 ? tol : 1e-9);
    for (int i = row; i < A.rows; ++i)
        if (!tr::is_zero(b[i], check_tol)) return std::nullopt;
    std::vector<S> x(A.cols, tr::zero());
    for (int r = 0; r < row; ++r) x[pivcol[r]] = b[r];
    return x;
}

template <class S>
struct ComplementSolve {
    std::vector<S> solution;  // minimal-weighted-norm preimage coordinates
    std::vector<S> residual;  // rhs - A*solution, orthogonal to Image(A) in the codomain weights
};

/// Decompose rhs = A u + nu with nu orthogonal to the column space of A with
/// respect to diag(codomain_w), and u orthogonal to ker A with respect to
/// diag(domain_w). Weights must be positive reals.
template <class S>
ComplementSolve<S> solve_with_complement(const DenseMatrix<S>& A, const std::vector<S>& rhs,
                                         const std::vector<S>& codomain_w,
                                         const std::vector<S>& domain_w, double tol = 0.0) {
    using tr = scalar_traits<S>;
    if (static_cast<int>(rhs.size()) != A.rows || static_cast<int>(codomain_w.size()) != A.rows ||
        static_cast<int>(domain_w.size()) != A.cols)
        throw std::invalid_argument("solve_with_complement: size mismatch");

    // normal equations (A^H W A) u = A^H W rhs
    DenseMatrix<S> G(A.cols, A.cols);
    std::vector<S> c(A.cols, tr::zero());
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) {
            S wij = tr::conj(A.at(i, j)) * codomain_w[i];
            if (tr::is_zero(wij, 0.0)) continue;
            for (int k = 0; k < A.cols; ++k) G.at(j, k) += wij * A.at(i, k);
            c[j] += wij * rhs[i];
        }
    }
    auto u0 = solve_linear(G, c, tol);
    if (!u0) throw std::runtime_error("solve_with_complement: inconsistent normal equations");
    std::vector<S> u = *u0;

    // project away the kernel component (weights domain_w)
    auto ker = kernel_basis(A, tol);
    if (!ker.empty()) {
        auto dot = [&](const std::vector<S>& x, const std::vector<S>& y) {
            S s = tr::zero();
            for (int t = 0; t < A.cols; ++t) s += domain_w[t] * x[t] * tr::conj(y[t]);
            return s;
        };
        std::vector<std::vector<S>> ortho;
        for (auto& k : ker) {
            std::vector<S> v = k;
            for (const auto& b : ortho) {
                S f = dot(v, b) / dot(b, b);
                for (int t = 0; t < A.cols; ++t) v[t] -= f * b[t];
            }
            bool nonzero = false;
            for (const auto& vt : v)
                if (!tr::is_zero(vt, tol)) {
                    nonzero = true;
                    break;
                }
            if (nonzero) ortho.push_back(std::move(v));
        }
        for (const auto& b : ortho) {
            S f = dot(u, b) / dot(b, b);
            for (int t = 0; t < A.cols; ++t) u[t] -= f * b[t];
        }
    }

    ComplementSolve<S> out;
    out.solution = u;
    out.residual = rhs;
    std::vector<S> Au = A.apply(u);
    for (int i = 0; i < A.rows; ++i) out.residual[i] -= Au[i];
    return out;
}

/// Basis of the orthogonal complement of the column space of A with respect
/// to diag(w): kernel of A^H diag(w).
template <class S>
std::vector<std::vector<S>> column_space_orthogonal_complement(const DenseMatrix<S>& A,
                                                               const std::vector<S>& w,
                                                               double tol = 0.0) {
    DenseMatrix<S> M = A.conj_transpose();
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j) M.at(i, j) *= w[j];
    return kernel_basis(M, tol);
}

/// Eigenvalues of a symmetric matrix (row-major, n x n) by cyclic Jacobi.
/// Returns them sorted ascending; deterministic.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                (i == j ? diag : off) += a[static_cast<size_t>(i) * n + j] * a[static_cast<size_t>(i) * n + j];
        if (off <= 1e-26 * (diag + 1e-300)) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double cth = 1.0 / std::sqrt(t * t + 1.0);
                double sth = t * cth;
                for (int k = 0; k < n; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = cth * akp - sth * akq;
                    at(k, q) = sth * akp + cth * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = cth * apk - sth * aqk;
                    at(q, k) = sth * apk + cth * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = at(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace nf
