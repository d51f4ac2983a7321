#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nf/multi_index.hpp"
#include "nf/scalar.hpp"

namespace nf {

/// Truncated multivariate power series stored by homogeneous degree.
/// The truncation degree is a capacity: coefficients above it are unknown and
/// never produced. Exact zeros are never stored.
template <class S>
class GradedSeries {
public:
    using Term = std::map<MultiIndex, S, GrlexLess>;
    using traits = scalar_traits<S>;

    GradedSeries() = default;
    GradedSeries(int n, int trunc) : n_(n), trunc_(trunc), deg_(trunc + 1) {
        if (n < 1 || trunc < 0) throw std::invalid_argument("GradedSeries: bad dimensions");
    }

    static GradedSeries monomial(int n, int trunc, const MultiIndex& a, const S& c) {
        GradedSeries r(n, trunc);
        r.add_coeff(a, c);
        return r;
    }

    int vars() const { return n_; }
    int truncation() const { return trunc_; }
    bool compatible(const GradedSeries& o) const { return n_ == o.n_; }

    const Term& terms_of_degree(int i) const {
        static const Term empty;
        if (i < 0 || i > trunc_) return empty;
        return deg_[i];
    }

    S coeff(const MultiIndex& a) const {
        if (a.degree() > trunc_) return traits::zero();
        const Term& t = deg_[a.degree()];
        auto it = t.find(a);
        return it == t.end() ? traits::zero() : it->second;
    }

    void set_coeff(const MultiIndex& a, const S& c) {
        if (a.n() != n_) throw std::invalid_argument("set_coeff: wrong variable count");
        if (a.degree() > trunc_) return;  // beyond capacity, drop
        Term& t = deg_[a.degree()];
        if (traits::is_zero(c, 0.0))
            t.erase(a);
        else
            t[a] = c;
    }

    void add_coeff(const MultiIndex& a, const S& c) {
        if (a.n() != n_) throw std::invalid_argument("add_coeff: wrong variable count");
        if (a.degree() > trunc_) return;
        Term& t = deg_[a.degree()];
        auto it = t.find(a);
        if (it == t.end()) {
            if (!traits::is_zero(c, 0.0)) t.emplace(a, c);
        } else {
            it->second += c;
            if (traits::is_zero(it->second, 0.0)) t.erase(it);
        }
    }

    bool is_zero() const {
        for (const Term& t : deg_)
            if (!t.empty()) return false;
        return true;
    }

    /// Lowest degree with a stored term, INT_MAX if none.
    int order() const {
        for (int i = 0; i <= trunc_; ++i)
            if (!deg_[i].empty()) return i;
        return INT_MAX;
    }
    /// Highest degree with a stored term, -1 if none.
    int top_degree() const {
        for (int i = trunc_; i >= 0; --i)
            if (!deg_[i].empty()) return i;
        return -1;
    }

    GradedSeries homogeneous_part(int i) const {
        GradedSeries r(n_, trunc_);
        if (i >= 0 && i <= trunc_) r.deg_[i] = deg_[i];
        return r;
    }

    GradedSeries truncated(int d) const {
        GradedSeries r(n_, d);
        for (int i = 0; i <= std::min(d, trunc_); ++i) r.deg_[i] = deg_[i];
        return r;
    }

    /// Reinterpret a polynomial at a larger capacity (higher degrees zero).
    GradedSeries extended(int d) const { return truncated(std::max(d, trunc_)); }

    /// Add o's stored terms into *this, keeping this capacity (terms beyond
    /// it are dropped). Unlike operator+=, never shrinks the truncation.
    GradedSeries& accumulate(const GradedSeries& o) {
        check_binary(o);
        for (int i = 0; i <= std::min(trunc_, o.trunc_); ++i)
            for (const auto& [a, c] : o.deg_[i]) add_coeff(a, c);
        return *this;
    }

    GradedSeries& operator+=(const GradedSeries& o) {
        check_binary(o);
        for (int i = 0; i <= std::min(trunc_, o.trunc_); ++i)
            for (const auto& [a, c] : o.deg_[i]) add_coeff(a, c);
        trunc_ = std::min(trunc_, o.trunc_);
        deg_.resize(trunc_ + 1);
        return *this;
    }
    GradedSeries& operator-=(const GradedSeries& o) {
        check_binary(o);
        for (int i = 0; i <= std::min(trunc_, o.trunc_); ++i)
            for (const auto& [a, c] : o.deg_[i]) add_coeff(a, -c);
        trunc_ = std::min(trunc_, o.trunc_);
        deg_.resize(trunc_ + 1);
        return *this;
    }
    friend GradedSeries operator+(GradedSeries a, const GradedSeries& b) { return a += b; }
    friend GradedSeries operator-(GradedSeries a, const GradedSeries& b) { return a -= b; }
    GradedSeries operator-() const {
        GradedSeries r(n_, trunc_);
        for (int i = 0; i <= trunc_; ++i)
            for (const auto& [a, c] : deg_[i]) r.deg_[i].emplace(a, -c);
        return r;
    }

    GradedSeries& operator*=(const S& s) {
        if (traits::is_zero(s, 0.0)) {
            for (Term& t : deg_) t.clear();
            return *this;
        }
        for (Term& t : deg_)
            for (auto& [a, c] : t) c *= s;
        return *this;
    }
    friend GradedSeries operator*(GradedSeries a, const S& s) { return a *= s; }
    friend GradedSeries operator*(const S& s, GradedSeries a) { return a *= s; }

    friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
        a.check_binary(b);
        int d = std::min(a.trunc_, b.trunc_);
        GradedSeries r(a.n_, d);
        for (int i = 0; i <= d; ++i) {
            if (a.deg_[i].empty()) continue;
            for (int j = 0; j + i <= d; ++j) {
                if (b.deg_[j].empty()) continue;
                for (const auto& [ia, ca] : a.deg_[i])
                    for (const auto& [ib, cb] : b.deg_[j]) r.add_coeff(ia.plus(ib), ca * cb);
            }
        }
        return r;
    }

    friend bool operator==(const GradedSeries& a, const GradedSeries& b) {
        if (a.n_ != b.n_) return false;
        int d = std::min(a.trunc_, b.trunc_);
        for (int i = 0; i <= d; ++i)
            if (a.deg_[i] != b.deg_[i]) return false;
        return true;
    }

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (int i = 0; i <= trunc_; ++i)
            for (const auto& [a, c] : deg_[i]) fn(a, c);
    }

private:
    void check_binary(const GradedSeries& o) const {
        if (n_ != o.n_) throw std::invalid_argument("GradedSeries: variable count mismatch");
    }

    int n_ = 1;
    int trunc_ = 0;
    std::vector<Term> deg_{Term{}};
};

/// x_j as a series.
template <class S>
GradedSeries<S> variable_series(int n, int trunc, int j) {
    return GradedSeries<S>::monomial(n, trunc, MultiIndex::unit(n, j), scalar_traits<S>::one());
}

/// Sum of |coefficients| of the degree-i part, as a double.
template <class S>
double norm_homogeneous_degree(const GradedSeries<S>& f, int i) {
    double s = 0.0;
    for (const auto& [a, c] : f.terms_of_degree(i)) {
        (void)a;
        s += scalar_traits<S>::abs_approx(c);
    }
    return s;
}

/// Exact version for rational coefficients.
inline Rational norm_exact_degree(const GradedSeries<Rational>& f, int i) {
    Rational s(0);
    for (const auto& [a, c] : f.terms_of_degree(i)) {
        (void)a;
        s += abs(c);
    }
    return s;
}

/// Norm of a homogeneous series (all terms must share one degree).
template <class S>
double norm_homogeneous(const GradedSeries<S>& f) {
    int o = f.order(), t = f.top_degree();
    if (o == INT_MAX) return 0.0;
    if (o != t) throw std::invalid_argument("norm_homogeneous: mixed-degree input");
    return norm_homogeneous_degree(f, o);
}

/// Exact partial derivative d^{|a|} f / dx^a.
template <class S>
GradedSeries<S> differentiate(const GradedSeries<S>& f, const MultiIndex& a) {
    if (a.n() != f.vars()) throw std::invalid_argument("differentiate: wrong variable count");
    GradedSeries<S> r(f.vars(), f.truncation());
    f.for_each([&](const MultiIndex& m, const S& c) {
        if (!a.divides(m)) return;
        S factor = c;
        std::vector<int> e = m.exponents();
        for (int j = 0; j < a.n(); ++j)
            for (int t = 0; t < a[j]; ++t) factor *= scalar_traits<S>::from_int(e[j] - t);
        r.add_coeff(m.minus(a), factor);
    });
    return r;
}

template <class S>
GradedSeries<S> partial(const GradedSeries<S>& f, int j) {
    return differentiate(f, MultiIndex::unit(f.vars(), j));
}

/// Euler vector field: E(f) = sum_j x_j df/dx_j; equals i*f on degree-i parts.
template <class S>
GradedSeries<S> euler_apply(const GradedSeries<S>& f) {
    GradedSeries<S> r(f.vars(), f.truncation());
    f.for_each([&](const MultiIndex& m, const S& c) {
        r.add_coeff(m, c * scalar_traits<S>::from_int(m.degree()));
    });
    return r;
}

/// True iff G has real nonnegative coefficients and |F_a| <= G_a for all a
/// up to the common truncation.
template <class S>
bool dominates(const GradedSeries<S>& minorant, const GradedSeries<S>& majorant, double tol = 0.0) {
    using tr = scalar_traits<S>;
    if (minorant.vars() != majorant.vars()) throw std::invalid_argument("dominates: mismatch");
    int d = std::min(minorant.truncation(), majorant.truncation());
    for (int i = 0; i <= d; ++i) {
        for (const auto& [a, c] : majorant.terms_of_degree(i))
            if (!tr::is_real_nonneg(c, tol)) return false;
        for (const auto& [a, c] : minorant.terms_of_degree(i))
            if (!tr::abs_le(c, majorant.coeff(a), tol)) return false;
    }
    return true;
}

/// Taylor expansion of R(x + F(x)) where ord F >= 1, exact up to the result
/// truncation (min of operand capacities unless target given).
template <class S>
GradedSeries<S> compose_shifted(const GradedSeries<S>& R, const std::vector<GradedSeries<S>>& F,
                                int target_trunc = -1) {
    int n = R.vars();
    if (static_cast<int>(F.size()) != n)
        throw std::invalid_argument("compose: component count != variable count");
    int d = R.truncation();
    for (const auto& f : F) d = std::min(d, f.truncation());
    if (target_trunc >= 0) d = std::min(d, target_trunc);
    for (const auto& f : F)
        if (f.order() < 1) throw std::invalid_argument("compose: F must have order >= 1");

    // phi_j = x_j + F_j, powers memoized per variable
    std::vector<std::vector<GradedSeries<S>>> pow(n);
    GradedSeries<S> one(n, d);
    one.set_coeff(MultiIndex::zero(n), scalar_traits<S>::one());
    for (int j = 0; j < n; ++j) {
        GradedSeries<S> phi = variable_series<S>(n, d, j);
        phi += F[j].truncated(d);
        pow[j].push_back(one);
        pow[j].push_back(phi);
    }
    auto power = [&](int j, int t) -> const GradedSeries<S>& {
        while (static_cast<int>(pow[j].size()) <= t) pow[j].push_back(pow[j].back() * pow[j][1]);
        return pow[j][t];
    };

    GradedSeries<S> out(n, d);
    R.for_each([&](const MultiIndex& a, const S& c) {
        if (a.degree() > d) return;
        GradedSeries<S> term = one;
        for (int j = 0; j < n; ++j)
            if (a[j] > 0) term = term * power(j, a[j]);
        out += term * c;
    });
    return out;
}

}  // namespace nf
