#pragma once

#include <algorithm>
#include <climits>
#include <vector>

#include "nf/graded_series.hpp"

namespace nf {

/// r-tuple of graded series with per-component order offsets m_j.
/// "Homogeneous of shifted degree k" means component j is homogeneous of
/// ambient degree m_j + k.
template <class S>
struct VectorSeries {
    std::vector<GradedSeries<S>> comp;
    std::vector<int> offsets;

    VectorSeries() = default;
    VectorSeries(int r, int n, int trunc, std::vector<int> m = {})
        : comp(r, GradedSeries<S>(n, trunc)), offsets(std::move(m)) {
        if (offsets.empty()) offsets.assign(r, 0);
        if (static_cast<int>(offsets.size()) != r)
            throw std::invalid_argument("VectorSeries: offsets size mismatch");
    }

    int size() const { return static_cast<int>(comp.size()); }
    int vars() const { return comp.empty() ? 0 : comp[0].vars(); }
    int truncation() const {
        int d = INT_MAX;
        for (const auto& c : comp) d = std::min(d, c.truncation());
        return d;
    }

    bool is_zero() const {
        for (const auto& c : comp)
            if (!c.is_zero()) return false;
        return true;
    }

    /// Largest shifted degree representable by every component.
    int shifted_truncation() const {
        int k = INT_MAX;
        for (int j = 0; j < size(); ++j) k = std::min(k, comp[j].truncation() - offsets[j]);
        return k;
    }

    /// Shifted order: smallest k >= 1 with a nonzero ambient (m_j+k)-part,
    /// INT_MAX when zero beyond the offsets.
    int shifted_order() const {
        int best = INT_MAX;
        for (int j = 0; j < size(); ++j) {
            const auto& c = comp[j];
            for (int i = std::max(0, offsets[j] + 1); i <= c.truncation(); ++i)
                if (!c.terms_of_degree(i).empty()) {
                    best = std::min(best, i - offsets[j]);
                    break;
                }
        }
        return best;
    }

    /// Component tuple of shifted degree k (component j keeps its ambient
    /// degree (m_j+k) part only).
    VectorSeries shifted_part(int k) const {
        VectorSeries r = *this;
        for (int j = 0; j < size(); ++j) r.comp[j] = comp[j].homogeneous_part(offsets[j] + k);
        return r;
    }

    VectorSeries& accumulate(const VectorSeries& o) {
        for (int j = 0; j < size(); ++j) comp[j].accumulate(o.comp[j]);
        return *this;
    }

    VectorSeries& operator+=(const VectorSeries& o) {
        for (int j = 0; j < size(); ++j) comp[j] += o.comp[j];
        return *this;
    }
    VectorSeries& operator-=(const VectorSeries& o) {
        for (int j = 0; j < size(); ++j) comp[j] -= o.comp[j];
        return *this;
    }
    friend VectorSeries operator+(VectorSeries a, const VectorSeries& b) { return a += b; }
    friend VectorSeries operator-(VectorSeries a, const VectorSeries& b) { return a -= b; }
    VectorSeries operator-() const {
        VectorSeries r = *this;
        for (auto& c : r.comp) c = -c;
        return r;
    }
    friend bool operator==(const VectorSeries& a, const VectorSeries& b) {
        return a.offsets == b.offsets && a.comp == b.comp;
    }
};

/// max_j sum-of-|coefficients| of component j at ambient degree m_j + k.
template <class S>
double shifted_norm(const VectorSeries<S>& F, int k) {
    double m = 0.0;
    for (int j = 0; j < F.size(); ++j)
        m = std::max(m, norm_homogeneous_degree(F.comp[j], F.offsets[j] + k));
    return m;
}

inline Rational shifted_norm_exact(const VectorSeries<Rational>& F, int k) {
    Rational m(0);
    for (int j = 0; j < F.size(); ++j) {
        Rational v = norm_exact_degree(F.comp[j], F.offsets[j] + k);
        if (v > m) m = v;
    }
    return m;
}

/// One-variable series of homogeneous-component norms, nonnegative reals.
struct HatSeries {
    std::vector<double> coeff;  // index = degree

    int degree() const { return static_cast<int>(coeff.size()) - 1; }
    double at(int i) const { return (i >= 0 && i < static_cast<int>(coeff.size())) ? coeff[i] : 0.0; }
    bool is_zero() const {
        for (double c : coeff)
            if (c != 0.0) return false;
        return true;
    }
};

/// Hat series under the shifted degree convention: coefficient k is the norm
/// of the shifted degree-k tuple.
template <class S>
HatSeries hat_series(const VectorSeries<S>& F) {
    HatSeries h;
    int kmax = F.shifted_truncation();
    h.coeff.assign(kmax + 1, 0.0);
    for (int k = 0; k <= kmax; ++k) h.coeff[k] = shifted_norm(F, k);
    return h;
}

template <class S>
HatSeries hat_series(const GradedSeries<S>& f) {
    HatSeries h;
    h.coeff.assign(f.truncation() + 1, 0.0);
    for (int i = 0; i <= f.truncation(); ++i) h.coeff[i] = norm_homogeneous_degree(f, i);
    return h;
}

/// Norm of a homogeneous shifted-degree-k tuple (components checked).
template <class S>
double norm_homogeneous(const VectorSeries<S>& F) {
    int k = F.shifted_order();
    if (k == INT_MAX) {
        // allow offset-degree content only if genuinely zero
        for (int j = 0; j < F.size(); ++j)
            if (!F.comp[j].is_zero()) throw std::invalid_argument("norm_homogeneous: mixed degrees");
        return 0.0;
    }
    for (int j = 0; j < F.size(); ++j) {
        const auto& c = F.comp[j];
        for (int i = 0; i <= c.truncation(); ++i)
            if (!c.terms_of_degree(i).empty() && i != F.offsets[j] + k)
                throw std::invalid_argument("norm_homogeneous: mixed-degree input");
    }
    return shifted_norm(F, k);
}

}  // namespace nf
