#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nf/rng.hpp"
#include "nf/singularity.hpp"

using namespace nf;

namespace {

GradedSeries<Rational> mono(int n, int trunc, std::vector<int> e, long num, long den = 1) {
    return GradedSeries<Rational>::monomial(n, trunc, MultiIndex(std::move(e)),
                                            make_rational(num, den));
}

}  // namespace

TEST_CASE("jacobian image and complement per degree") {
    SUBCASE("morse point in one variable fills everything") {
        GradedSeries<Rational> f0 = mono(1, 4, {2}, 1);
        auto data = jacobian_image_basis(f0, 3);
        REQUIRE(data.image_basis.size() == 1);
        CHECK(data.image_basis[0].coeff(MultiIndex({3})) != Rational(0));
        CHECK(data.complement_basis.empty());
    }
    SUBCASE("f0 = x1^2 x2 at degree 3") {
        GradedSeries<Rational> f0 = mono(2, 4, {2, 1}, 1);
        auto data = jacobian_image_basis(f0, 3);
        CHECK(data.image_basis.size() == 3);
        REQUIRE(data.complement_basis.size() == 1);
        CHECK(data.complement_basis[0].coeff(MultiIndex({0, 3})) != Rational(0));
        // complement vectors are orthogonal to the image, exactly
        for (const auto& v : data.complement_basis)
            for (const auto& w : data.image_basis) CHECK(belitskii_inner(v, w) == Rational(0));
    }
    SUBCASE("zero map has trivial image and full complement") {
        GradedSeries<Rational> f0(2, 4);
        auto data = jacobian_image_basis(f0, 3);
        CHECK(data.image_basis.empty());
        CHECK(data.complement_basis.size() == monomials_of_degree(2, 3).size());
    }
}

TEST_CASE("singularity normalization") {
    SUBCASE("x^2 + x^3 is equivalent to x^2") {
        SingularityProblem<Rational> p;
        p.d = 8;
        p.f0 = mono(1, p.d, {2}, 1);
        p.R = mono(1, p.d, {3}, 1);
        auto res = sing_normalize(p);
        CHECK(res.certified);
        CHECK(res.h.is_zero());
        GradedSeries<Rational> f = p.f0 + p.R;
        CHECK(compose_shifted(f, res.U, p.d) == p.f0);
    }
    SUBCASE("zero perturbation is a fixed point") {
        SingularityProblem<Rational> p;
        p.d = 7;
        p.f0 = mono(2, p.d, {2, 1}, 1);
        p.R = GradedSeries<Rational>(2, p.d);
        auto res = sing_normalize(p);
        CHECK(res.certified);
        CHECK(res.h.is_zero());
        for (const auto& u : res.U) CHECK(u.is_zero());
    }
    SUBCASE("x1^2 x2 + x2^4 keeps a remainder along x2^4") {
        SingularityProblem<Rational> p;
        p.d = 9;
        p.f0 = mono(2, p.d, {2, 1}, 1);
        p.R = mono(2, p.d, {0, 4}, 1);
        auto res = sing_normalize(p);
        CHECK(res.certified);
        CHECK(res.h.coeff(MultiIndex({0, 4})) != Rational(0));
        CHECK(res.h.homogeneous_part(4).terms_of_degree(4).size() == 1);
        // every remainder degree projects to zero on the image
        for (int i = p.f0.order() + 1; i <= p.d; ++i) {
            auto data = jacobian_image_basis(p.f0, i);
            GradedSeries<Rational> hi = res.h.homogeneous_part(i);
            for (const auto& w : data.image_basis) CHECK(belitskii_inner(hi, w) == Rational(0));
        }
    }
    SUBCASE("isolated quadratic singularity reduces to its quadratic part") {
        SplitMix64 rng(53);
        SingularityProblem<Rational> p;
        p.d = 7;
        p.f0 = mono(2, p.d, {2, 0}, 1);
        p.f0.add_coeff(MultiIndex({0, 2}), Rational(1));
        p.R = random_series(rng, 2, 3, 5, p.d);
        auto res = sing_normalize(p);
        CHECK(res.certified);
        CHECK(res.h.is_zero());  // the complement is trivial in every degree
        for (int dim : res.complement_dims) CHECK(dim == 0);
    }
    SUBCASE("random certificates: composition equals f0 + h exactly") {
        SplitMix64 rng(59);
        for (int t = 0; t < 3; ++t) {
            SingularityProblem<Rational> p;
            p.d = 8;
            p.f0 = mono(2, p.d, {2, 1}, 1);
            p.R = random_series(rng, 2, 4, 6, p.d);
            auto res = sing_normalize(p);
            CHECK(res.certified);
            GradedSeries<Rational> f = p.f0 + p.R;
            CHECK(compose_shifted(f, res.U, p.d) == p.f0 + res.h);
        }
    }
}

TEST_CASE("order accounting of the conjugacy expansion") {
    // Sigma1 = f0(id+U) - f0 - Df0.U has order >= 2k+q-2,
    // Sigma2 = R(id+U) - R has order >= k+q, for U of order k
    SplitMix64 rng(61);
    int d = 12;
    GradedSeries<Rational> f0 = mono(2, d, {2, 1}, 1);  // q = 3
    int q = f0.order();
    GradedSeries<Rational> R = random_series(rng, 2, q + 1, q + 3, d);
    for (int t = 0; t < 8; ++t) {
        int k = 2 + static_cast<int>(rng.below(3));
        std::vector<GradedSeries<Rational>> U;
        for (int l = 0; l < 2; ++l) U.push_back(random_series(rng, 2, k, k + 1, d));
        GradedSeries<Rational> df0u(2, d);
        for (int l = 0; l < 2; ++l) df0u += partial(f0, l) * U[l];
        GradedSeries<Rational> sigma1 = compose_shifted(f0, U, d) - f0 - df0u;
        GradedSeries<Rational> sigma2 = compose_shifted(R, U, d) - R;
        if (!sigma1.is_zero()) CHECK(sigma1.order() >= 2 * k + q - 2);
        if (!sigma2.is_zero()) CHECK(sigma2.order() >= k + q);
    }
}

TEST_CASE("input validation") {
    SingularityProblem<Rational> p;
    p.d = 6;
    p.f0 = mono(2, p.d, {1, 0}, 1);  // degree 1 rejected
    p.R = GradedSeries<Rational>(2, p.d);
    CHECK_THROWS_AS((void)sing_normalize(p), std::invalid_argument);

    p.f0 = mono(2, p.d, {2, 1}, 1);
    p.R = mono(2, p.d, {2, 0}, 1);  // order not above q
    CHECK_THROWS_AS((void)sing_normalize(p), std::invalid_argument);

    GradedSeries<Rational> not_homog = mono(2, 6, {2, 0}, 1);
    not_homog.add_coeff(MultiIndex({3, 0}), Rational(1));
    p.f0 = not_homog;
    p.R = GradedSeries<Rational>(2, p.d);
    CHECK_THROWS_AS((void)sing_normalize(p), std::invalid_argument);
}
