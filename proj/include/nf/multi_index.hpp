#pragma once

#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "nf/scalar.hpp"

namespace nf {

/// Exponent tuple of a monomial in n variables.
class MultiIndex {
public:
    explicit MultiIndex(std::vector<int> exps) : e_(std::move(exps)) {
        if (e_.empty()) throw std::invalid_argument("MultiIndex: need n >= 1");
        deg_ = 0;
        for (int v : e_) {
            if (v < 0) throw std::invalid_argument("MultiIndex: negative exponent");
            deg_ += v;
        }
    }
    static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(n, 0)); }
    static MultiIndex unit(int n, int j) {
        std::vector<int> e(n, 0);
        e.at(j) = 1;
        return MultiIndex(std::move(e));
    }

    int n() const { return static_cast<int>(e_.size()); }
    int degree() const { return deg_; }
    int operator[](int j) const { return e_[j]; }
    const std::vector<int>& exponents() const { return e_; }

    MultiIndex plus(const MultiIndex& o) const {
        std::vector<int> e(e_);
        for (size_t j = 0; j < e.size(); ++j) e[j] += o.e_[j];
        return MultiIndex(std::move(e));
    }
    /// Returns a-b; exponents must stay nonnegative (checked by caller via divides()).
    MultiIndex minus(const MultiIndex& o) const {
        std::vector<int> e(e_);
        for (size_t j = 0; j < e.size(); ++j) e[j] -= o.e_[j];
        return MultiIndex(std::move(e));
    }
    bool divides(const MultiIndex& o) const {
        for (size_t j = 0; j < e_.size(); ++j)
            if (e_[j] > o.e_[j]) return false;
        return true;
    }

    /// alpha! = prod alpha_j!
    Rational factorial() const {
        Rational f(1);
        for (int v : e_) f *= factorial_q(v);
        return f;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e_ == b.e_; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return a.e_ != b.e_; }

    std::string str() const {
        std::string s = "(";
        for (size_t j = 0; j < e_.size(); ++j) {
            if (j) s += ",";
            s += std::to_string(e_[j]);
        }
        return s + ")";
    }

private:
    std::vector<int> e_;
    int deg_ = 0;
};

/// Graded lexicographic order: lower total degree first; within a degree the
/// x1-heavy monomial comes first. Fixes iteration and serialization order.
struct GrlexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return std::lexicographical_compare(b.exponents().begin(), b.exponents().end(),
                                            a.exponents().begin(), a.exponents().end());
    }
};

/// All monomials of total degree k in n variables, in grlex order.
inline std::vector<MultiIndex> monomials_of_degree(int n, int k) {
    std::vector<MultiIndex> out;
    std::vector<int> cur(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == n - 1) {
            cur[pos] = rem;
            out.emplace_back(cur);
            return;
        }
        for (int v = rem; v >= 0; --v) {
            cur[pos] = v;
            rec(pos + 1, rem - v);
        }
    };
    if (n >= 1 && k >= 0) rec(0, k);
    return out;
}

/// dim of the space of homogeneous degree-k polynomials in n variables.
inline long homogeneous_dim(int n, int k) {
    // C(k+n-1, n-1)
    long num = 1, den = 1;
    for (int t = 1; t <= n - 1; ++t) {
        num *= k + t;
        den *= t;
    }
    return num / den;
}

}  // namespace nf
