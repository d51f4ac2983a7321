#pragma once

#include <stdexcept>

#include "nf/graded_series.hpp"
#include "nf/matrix_series.hpp"
#include "nf/vector_series.hpp"

namespace nf {

enum class InnerVariant { classic, modified };

/// Weight of the monomial x^a: alpha! (classic) or alpha!/|alpha|! (modified).
/// Makes d/dx_j adjoint to multiplication by x_j in the classic case.
inline Rational belitskii_weight(const MultiIndex& a, InnerVariant v = InnerVariant::classic) {
    Rational w = a.factorial();
    if (v == InnerVariant::modified) w /= factorial_q(a.degree());
    return w;
}

/// <f,g> = sum_a w_a f_a conj(g_a) on homogeneous polynomials of one degree.
template <class S>
S belitskii_inner(const GradedSeries<S>& f, const GradedSeries<S>& g,
                  InnerVariant v = InnerVariant::classic) {
    using tr = scalar_traits<S>;
    int df = f.top_degree(), dg = g.top_degree();
    if (df >= 0 && f.order() != df) throw std::invalid_argument("belitskii_inner: f not homogeneous");
    if (dg >= 0 && g.order() != dg) throw std::invalid_argument("belitskii_inner: g not homogeneous");
    if (df >= 0 && dg >= 0 && df != dg) throw std::invalid_argument("belitskii_inner: degree mismatch");
    S acc = tr::zero();
    int i = df >= 0 ? df : dg;
    if (i < 0) return acc;
    for (const auto& [a, c] : f.terms_of_degree(i)) {
        S gc = g.coeff(a);
        if (tr::is_zero(gc, 0.0)) continue;
        acc += tr::from_rational(belitskii_weight(a, v)) * c * tr::conj(gc);
    }
    return acc;
}

/// Tuples pair componentwise.
template <class S>
S belitskii_inner(const VectorSeries<S>& f, const VectorSeries<S>& g,
                  InnerVariant v = InnerVariant::classic) {
    if (f.size() != g.size()) throw std::invalid_argument("belitskii_inner: component mismatch");
    S acc = scalar_traits<S>::zero();
    for (int j = 0; j < f.size(); ++j) acc += belitskii_inner(f.comp[j], g.comp[j], v);
    return acc;
}

/// Matrices pair as n^2-tuples of entries.
template <class S>
S belitskii_inner(const MatrixSeries<S>& f, const MatrixSeries<S>& g,
                  InnerVariant v = InnerVariant::classic) {
    if (f.dim != g.dim) throw std::invalid_argument("belitskii_inner: dim mismatch");
    S acc = scalar_traits<S>::zero();
    for (size_t t = 0; t < f.entry.size(); ++t) acc += belitskii_inner(f.entry[t], g.entry[t], v);
    return acc;
}

}  // namespace nf
