#pragma once

#include <cstdint>

#include "nf/graded_series.hpp"
#include "nf/matrix_series.hpp"

namespace nf {

/// Deterministic cross-platform generator (splitmix64); std::uniform_*
/// distributions are implementation-defined, so tests and the self-test
/// battery use this instead.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, bound), bound > 0.
    uint64_t below(uint64_t bound) { return next() % bound; }
    /// Uniform integer in [lo, hi].
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1))); }
    double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Nonzero rational with numerator in [-9,9] and denominator in [1,9].
    Rational rational() {
        long num = 0;
        while (num == 0) num = range(-9, 9);
        return make_rational(num, range(1, 9));
    }
};

/// Random homogeneous degree-k polynomial with small rational coefficients;
/// roughly `density` of the monomials get a term (at least one).
inline GradedSeries<Rational> random_homogeneous(SplitMix64& rng, int n, int k, int trunc,
                                                 double density = 0.7) {
    GradedSeries<Rational> f(n, trunc);
    auto mons = monomials_of_degree(n, k);
    bool any = false;
    for (const auto& a : mons)
        if (rng.real01() < density) {
            f.set_coeff(a, rng.rational());
            any = true;
        }
    if (!any && !mons.empty()) f.set_coeff(mons[rng.below(mons.size())], rng.rational());
    return f;
}

inline GradedSeries<Rational> random_series(SplitMix64& rng, int n, int lo_deg, int hi_deg,
                                            int trunc, double density = 0.5) {
    GradedSeries<Rational> f(n, trunc);
    for (int k = lo_deg; k <= hi_deg; ++k) f += random_homogeneous(rng, n, k, trunc, density);
    return f;
}

inline MatrixSeries<Rational> random_homogeneous_matrix(SplitMix64& rng, int dim, int k, int trunc,
                                                        double density = 0.7) {
    MatrixSeries<Rational> M(dim, dim, trunc);
    for (auto& e : M.entry) e = random_homogeneous(rng, dim, k, trunc, density);
    return M;
}

}  // namespace nf
