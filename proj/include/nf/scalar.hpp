#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nf {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Exact element of Q(i). Division is exact (multiply by conjugate).
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long r) : re(r) {}

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = r;
        im = i;
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        Rational ns = o.re * o.re + o.im * o.im;
        if (sgn(ns) == 0) throw std::domain_error("GaussianRational: division by zero");
        Rational r = (re * o.re + im * o.im) / ns;
        Rational i = (im * o.re - re * o.im) / ns;
        re = r;
        im = i;
        return *this;
    }
    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return {-re, -im}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    Rational norm_sq() const { return re * re + im * im; }
};

inline std::string rational_str(const Rational& a) { return a.get_str(); }

/// Per-scalar-mode hooks. One computation sticks to a single mode; the mode
/// is the C++ type itself.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool is_exact = true;
    static constexpr bool is_complex_field = false;
    using real_t = Rational;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_int(long v) { return Rational(v); }
    static Rational from_rational(const Rational& v) { return v; }
    static Rational conj(const Rational& a) { return a; }
    static bool is_zero(const Rational& a, double = 0.0) { return sgn(a) == 0; }
    static double abs_approx(const Rational& a) { return std::fabs(a.get_d()); }
    static double to_double(const Rational& a) { return a.get_d(); }
    static real_t re(const Rational& a) { return a; }
    static real_t im(const Rational&) { return Rational(0); }
    static bool is_real_nonneg(const Rational& a, double = 0.0) { return sgn(a) >= 0; }
    // |a| <= b, b assumed real nonnegative; exact.
    static bool abs_le(const Rational& a, const Rational& b, double = 0.0) { return abs(a) <= b; }
    static std::string str(const Rational& a) { return a.get_str(); }
};

template <>
struct scalar_traits<GaussianRational> {
    static constexpr bool is_exact = true;
    static constexpr bool is_complex_field = true;
    using real_t = Rational;
    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return {Rational(1)}; }
    static GaussianRational from_int(long v) { return {Rational(v)}; }
    static GaussianRational from_rational(const Rational& v) { return {v}; }
    static GaussianRational conj(const GaussianRational& a) { return {a.re, -a.im}; }
    static bool is_zero(const GaussianRational& a, double = 0.0) {
        return sgn(a.re) == 0 && sgn(a.im) == 0;
    }
    static double abs_approx(const GaussianRational& a) { return std::sqrt(a.norm_sq().get_d()); }
    static double to_double(const GaussianRational& a) { return a.re.get_d(); }
    static real_t re(const GaussianRational& a) { return a.re; }
    static real_t im(const GaussianRational& a) { return a.im; }
    static bool is_real_nonneg(const GaussianRational& a, double = 0.0) {
        return sgn(a.im) == 0 && sgn(a.re) >= 0;
    }
    static bool abs_le(const GaussianRational& a, const GaussianRational& b, double = 0.0) {
        if (!is_real_nonneg(b)) return false;
        return a.norm_sq() <= b.re * b.re;  // sqrt is monotone
    }
    static std::string str(const GaussianRational& a) {
        std::ostringstream os;
        os << a.re.get_str();
        if (sgn(a.im) != 0) os << (sgn(a.im) > 0 ? "+" : "") << a.im.get_str() << "i";
        return os.str();
    }
};

template <>
struct scalar_traits<double> {
    static constexpr bool is_exact = false;
    static constexpr bool is_complex_field = false;
    using real_t = double;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_int(long v) { return static_cast<double>(v); }
    static double from_rational(const Rational& v) { return v.get_d(); }
    static double conj(double a) { return a; }
    static bool is_zero(double a, double tol = 1e-9) { return std::fabs(a) <= tol; }
    static double abs_approx(double a) { return std::fabs(a); }
    static double to_double(double a) { return a; }
    static real_t re(double a) { return a; }
    static real_t im(double) { return 0.0; }
    static bool is_real_nonneg(double a, double tol = 0.0) { return a >= -tol; }
    static bool abs_le(double a, double b, double tol = 0.0) { return std::fabs(a) <= b + tol; }
    static std::string str(double a) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", a);
        return buf;
    }
};

template <>
struct scalar_traits<Complex> {
    static constexpr bool is_exact = false;
    static constexpr bool is_complex_field = true;
    using real_t = double;
    static Complex zero() { return {0.0, 0.0}; }
    static Complex one() { return {1.0, 0.0}; }
    static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static Complex from_rational(const Rational& v) { return {v.get_d(), 0.0}; }
    static Complex conj(const Complex& a) { return std::conj(a); }
    static bool is_zero(const Complex& a, double tol = 1e-9) { return std::abs(a) <= tol; }
    static double abs_approx(const Complex& a) { return std::abs(a); }
    static double to_double(const Complex& a) { return a.real(); }
    static real_t re(const Complex& a) { return a.real(); }
    static real_t im(const Complex& a) { return a.imag(); }
    static bool is_real_nonneg(const Complex& a, double tol = 0.0) {
        return std::fabs(a.imag()) <= tol && a.real() >= -tol;
    }
    static bool abs_le(const Complex& a, const Complex& b, double tol = 0.0) {
        return std::abs(a) <= b.real() + tol;
    }
    static std::string str(const Complex& a) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", a.real(), a.imag());
        return buf;
    }
};

/// Default zero tolerance for the floating modes.
inline constexpr double kDefaultTol = 1e-9;

/// num/den in canonical form (mpq_class construction does not canonicalize).
inline Rational make_rational(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Exact factorial as a GMP integer, wrapped in a rational.
inline Rational factorial_q(long k) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
    return Rational(f);
}

}  // namespace nf
