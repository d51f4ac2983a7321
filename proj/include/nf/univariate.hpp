#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nf/scalar.hpp"

namespace nf {

/// Dense truncated power series in one variable over a real coefficient type
/// (Rational in exact mode, double otherwise).
template <class R>
struct Poly1 {
    std::vector<R> c;  // c[i] multiplies z^i

    Poly1() = default;
    explicit Poly1(int trunc) : c(trunc + 1, R(0)) {}

    int truncation() const { return static_cast<int>(c.size()) - 1; }
    R at(int i) const { return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : R(0); }
    void add(int i, const R& v) {
        if (i >= 0 && i < static_cast<int>(c.size())) c[i] += v;
    }

    bool operator==(const Poly1& o) const { return c == o.c; }

    Poly1& operator+=(const Poly1& o) {
        for (int i = 0; i <= std::min(truncation(), o.truncation()); ++i) c[i] += o.c[i];
        return *this;
    }
    friend Poly1 operator+(Poly1 a, const Poly1& b) { return a += b; }
    Poly1& operator*=(const R& s) {
        for (auto& v : c) v *= s;
        return *this;
    }
    friend Poly1 operator*(Poly1 a, const R& s) { return a *= s; }

    friend Poly1 operator*(const Poly1& a, const Poly1& b) {
        int d = std::min(a.truncation(), b.truncation());
        Poly1 r(d);
        for (int i = 0; i <= d; ++i) {
            if (a.c[i] == R(0)) continue;
            for (int j = 0; i + j <= d; ++j) r.c[i + j] += a.c[i] * b.c[j];
        }
        return r;
    }

    /// Multiply by z^k (degree shift within the truncation window).
    Poly1 shifted(int k) const {
        Poly1 r(truncation());
        for (int i = 0; i + k <= truncation(); ++i) r.c[i + k] = c[i];
        return r;
    }

    Poly1 derivative() const {
        Poly1 r(truncation());
        for (int i = 1; i <= truncation(); ++i) r.c[i - 1] = c[i] * R(i);
        return r;
    }

    Poly1 derivative(int times) const {
        Poly1 r = *this;
        for (int t = 0; t < times; ++t) r = r.derivative();
        return r;
    }
};

/// 1/(1-u) for u with u(0)=0, truncated geometric series.
template <class R>
Poly1<R> geometric_inverse(const Poly1<R>& u) {
    if (u.at(0) != R(0)) throw std::invalid_argument("geometric_inverse: u(0) must be 0");
    int d = u.truncation();
    Poly1<R> acc(d), pw(d);
    acc.c[0] = R(1);
    pw.c[0] = R(1);
    for (int k = 1; k <= d; ++k) {
        pw = pw * u;
        bool zero = true;
        for (const auto& v : pw.c)
            if (v != R(0)) {
                zero = false;
                break;
            }
        if (zero) break;
        acc += pw;
    }
    return acc;
}

/// t^q delta^p f with delta = t d/dt: coefficient i of f goes to i^p at power i+q.
template <class R>
Poly1<R> t_pow_delta_pow(const Poly1<R>& f, int q, int p) {
    Poly1<R> r(f.truncation());
    for (int i = 1; i <= f.truncation(); ++i) {
        if (f.c[i] == R(0)) continue;
        R v = f.c[i];
        for (int t = 0; t < p; ++t) v *= R(i);
        r.add(i + q, v);
    }
    return r;
}

/// ||f||_m = sum |a_l| l^m over stored coefficients.
inline double h_norm(const Poly1<double>& f, double m) {
    double s = 0.0;
    for (int i = 1; i <= f.truncation(); ++i) s += std::fabs(f.c[i]) * std::pow(double(i), m);
    if (m == 0.0) s += std::fabs(f.at(0));
    return s;
}

/// ||f||_{s,beta} = sum |a_i| i^beta / (i!)^s.
inline double gevrey_norm(const Poly1<double>& f, double s, double beta) {
    double acc = 0.0;
    for (int i = 1; i <= f.truncation(); ++i)
        acc += std::fabs(f.c[i]) * std::pow(double(i), beta) / std::exp(s * std::lgamma(double(i) + 1.0));
    if (beta == 0.0) acc += std::fabs(f.at(0));
    return acc;
}

/// Coefficientwise reweighting f_i -> f_i * i^{m-alpha}.
inline Poly1<double> weight_by_degree_power(const Poly1<double>& f, double m, double alpha) {
    Poly1<double> r(f.truncation());
    for (int i = 1; i <= f.truncation(); ++i) r.c[i] = f.c[i] * std::pow(double(i), m - alpha);
    return r;
}

/// Coefficientwise domination for univariate series with real coefficients.
template <class R>
bool dominates_univariate(const Poly1<R>& minorant, const Poly1<R>& majorant) {
    int d = std::min(minorant.truncation(), majorant.truncation());
    for (int i = 0; i <= d; ++i) {
        if (majorant.at(i) < R(0)) return false;
        R a = minorant.at(i);
        if (a < R(0)) a = -a;
        if (a > majorant.at(i)) return false;
    }
    return true;
}

}  // namespace nf
