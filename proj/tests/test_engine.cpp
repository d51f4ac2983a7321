#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nf/engine.hpp"
#include "nf/linalg.hpp"
#include "nf/profile.hpp"
#include "nf/rng.hpp"
#include "nf/singularity.hpp"
#include "nf/vector_field.hpp"

using namespace nf;

TEST_CASE("solve_with_complement splits along the image") {
    SUBCASE("image spanned by the first basis vector") {
        DenseMatrix<Rational> A(2, 1);
        A.at(0, 0) = Rational(1);
        std::vector<Rational> rhs{Rational(1), Rational(1)};
        std::vector<Rational> w{Rational(1), Rational(1)};
        auto sol = solve_with_complement(A, rhs, w, {Rational(1)});
        CHECK(sol.solution[0] == Rational(1));
        CHECK(sol.residual[0] == Rational(0));
        CHECK(sol.residual[1] == Rational(1));
    }
    SUBCASE("invertible map has zero residual") {
        SplitMix64 rng(3);
        DenseMatrix<Rational> A(3, 3);
        A.at(0, 0) = Rational(2);
        A.at(1, 1) = Rational(3);
        A.at(2, 2) = Rational(5);
        A.at(0, 2) = Rational(1);
        std::vector<Rational> rhs{rng.rational(), rng.rational(), rng.rational()};
        std::vector<Rational> w{Rational(1), Rational(2), Rational(3)};
        auto sol = solve_with_complement(A, rhs, w, w);
        for (int i = 0; i < 3; ++i) CHECK(sol.residual[i] == Rational(0));
        auto Au = A.apply(sol.solution);
        for (int i = 0; i < 3; ++i) CHECK(Au[i] == rhs[i]);
    }
    SUBCASE("jacobian instance: complement of the image at degree 3") {
        GradedSeries<Rational> f0 =
            GradedSeries<Rational>::monomial(2, 4, MultiIndex({2, 1}), Rational(1));
        auto data = jacobian_image_basis(f0, 3);
        CHECK(data.image_basis.size() == 3);
        REQUIRE(data.complement_basis.size() == 1);
        CHECK(data.complement_basis[0].coeff(MultiIndex({0, 3})) != Rational(0));
        CHECK(data.complement_basis[0].terms_of_degree(3).size() == 1);
    }
    SUBCASE("projection idempotence and residual orthogonality") {
        SplitMix64 rng(5);
        for (int t = 0; t < 10; ++t) {
            int rows = 4, cols = 3;
            DenseMatrix<Rational> A(rows, cols);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j)
                    if (rng.real01() < 0.6) A.at(i, j) = rng.rational();
            std::vector<Rational> rhs(rows), wc(rows), wd(cols);
            for (auto& v : rhs) v = rng.rational();
            for (auto& v : wc) v = abs(rng.rational()) + 1;
            for (auto& v : wd) v = abs(rng.rational()) + 1;
            auto sol = solve_with_complement(A, rhs, wc, wd);
            // apply once more to the residual: nothing further to solve
            auto again = solve_with_complement(A, sol.residual, wc, wd);
            for (int i = 0; i < rows; ++i) CHECK(again.residual[i] == sol.residual[i]);
            for (int j = 0; j < cols; ++j) CHECK(again.solution[j] == Rational(0));
            // weighted orthogonality of residual against every column
            for (int j = 0; j < cols; ++j) {
                Rational ip(0);
                for (int i = 0; i < rows; ++i) ip += wc[i] * A.at(i, j) * sol.residual[i];
                CHECK(ip == Rational(0));
            }
        }
    }
}

namespace {

CohomologyProblem<Rational> trivial_problem(int n) {
    CohomologyProblem<Rational> cp;
    cp.n = n;
    cp.r = 1;
    cp.s_dim = 1;
    cp.q = 1;
    cp.m = {1};
    cp.eval_nonlinear = [n](const VectorSeries<Rational>& F) {
        return VectorSeries<Rational>(1, n, F.comp[0].truncation());
    };
    cp.solve_degree = [n](int, const VectorSeries<Rational>& rhs) {
        DegreeSolve<Rational> s;
        s.solution = VectorSeries<Rational>(1, n, rhs.comp[0].truncation(), {1});
        s.residual = VectorSeries<Rational>(1, n, rhs.comp[0].truncation());
        return s;
    };
    return cp;
}

}  // namespace

TEST_CASE("solve_degreewise on the zero problem") {
    auto res = solve_degreewise(trivial_problem(2), 6);
    CHECK(res.F.is_zero());
    CHECK(res.residual.is_zero());
    CHECK(res.report.degrees.size() == 6);
}

TEST_CASE("the order precondition on T(0) is enforced") {
    auto cp = trivial_problem(2);
    cp.eval_nonlinear = [](const VectorSeries<Rational>& F) {
        VectorSeries<Rational> t(1, 2, F.comp[0].truncation());
        t.comp[0].set_coeff(MultiIndex({1, 0}), Rational(1));  // order 1 < q+1
        return t;
    };
    CHECK_THROWS_AS((void)solve_degreewise(cp, 4), std::invalid_argument);
}

TEST_CASE("engine on the resonant quadratic field") {
    VectorFieldProblem<Rational> p;
    p.lambda = {Rational(1), Rational(2)};
    p.d = 6;
    p.R.assign(2, GradedSeries<Rational>(2, p.d));
    p.R[1].set_coeff(MultiIndex({2, 0}), Rational(1));  // x1^2 d/dx2, resonant
    auto res = solve_degreewise(vf_engine_problem(p), p.d - 1);
    CHECK(res.F.is_zero());
    // (1-pi)T(F) with T(F) = -(R + ...): the object-side remainder is -residual
    CHECK(res.residual.comp[1].coeff(MultiIndex({2, 0})) == Rational(-1));
    auto pd = pd_normalize(p);
    CHECK(pd.normal_form[1].coeff(MultiIndex({2, 0})) == Rational(1));
    CHECK(pd.normal_form[0] == variable_series<Rational>(2, p.d, 0));
    for (const auto& f : pd.F) CHECK(f.is_zero());
}

TEST_CASE("engine result equals the per-instance solvers") {
    SUBCASE("vector field, lambda = (1,3)") {
        SplitMix64 rng(7);
        VectorFieldProblem<Rational> p;
        p.lambda = {Rational(1), Rational(3)};
        p.d = 9;
        p.R.assign(2, GradedSeries<Rational>(2, p.d));
        for (int j = 0; j < 2; ++j) p.R[j] = random_series(rng, 2, 2, 3, p.d);
        auto eng = solve_degreewise(vf_engine_problem(p), p.d - 1);
        auto pd = pd_normalize(p);
        for (int j = 0; j < 2; ++j) CHECK(eng.F.comp[j] == pd.F[j]);
        // normal form = Ax - accumulated residual
        for (int j = 0; j < 2; ++j) {
            GradedSeries<Rational> nf =
                variable_series<Rational>(2, p.d, j) * p.lambda[j] - eng.residual.comp[j];
            CHECK(nf == pd.normal_form[j]);
        }
    }
    SUBCASE("singularity, f0 = x1^2 x2") {
        SplitMix64 rng(9);
        SingularityProblem<Rational> p;
        p.d = 8;
        p.f0 = GradedSeries<Rational>::monomial(2, p.d, MultiIndex({2, 1}), Rational(1));
        p.R = random_series(rng, 2, 4, 6, p.d);
        auto eng = solve_degreewise(sing_engine_problem(p), p.d - p.f0.order() + 1);
        auto direct = sing_normalize(p);
        for (int j = 0; j < 2; ++j) CHECK(eng.F.comp[j] == direct.U[j]);
        CHECK(eng.residual.comp[0] == -direct.h);
    }
}

TEST_CASE("uniqueness: finer truncation leaves lower degrees unchanged") {
    SplitMix64 rng(13);
    VectorFieldProblem<Rational> p;
    p.lambda = {Rational(1), Rational(2)};
    p.d = 7;
    p.R.assign(2, GradedSeries<Rational>(2, p.d));
    for (int j = 0; j < 2; ++j) p.R[j] = random_series(rng, 2, 2, 3, p.d);
    VectorFieldProblem<Rational> pfine = p;
    pfine.d = p.d + 3;
    for (auto& r : pfine.R) r = r.extended(pfine.d);
    auto a = solve_degreewise(vf_engine_problem(p), p.d - 1);
    auto b = solve_degreewise(vf_engine_problem(pfine), pfine.d - 1);
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i <= p.d; ++i)
            CHECK(a.F.comp[j].homogeneous_part(i) ==
                  b.F.comp[j].homogeneous_part(i).truncated(p.d));
}

TEST_CASE("filtering: T raises shifted order by more than q") {
    SplitMix64 rng(17);
    SUBCASE("vector-field instance") {
        VectorFieldProblem<Rational> p;
        p.lambda = {Rational(2), Rational(-3)};
        p.d = 8;
        p.R.assign(2, GradedSeries<Rational>(2, p.d));
        for (int j = 0; j < 2; ++j) p.R[j] = random_series(rng, 2, 2, 3, p.d);
        auto cp = vf_engine_problem(p);
        for (int t = 0; t < 5; ++t) {
            int k = 1 + static_cast<int>(rng.below(3));
            VectorSeries<Rational> F(2, 2, p.d, {1, 1});
            VectorSeries<Rational> G = F;
            for (int j = 0; j < 2; ++j) {
                F.comp[j] = random_series(rng, 2, k + 1, k + 2, p.d);
                G.comp[j] = random_series(rng, 2, k + 1, k + 2, p.d);
            }
            VectorSeries<Rational> dT = cp.eval_nonlinear(F) - cp.eval_nonlinear(G);
            int ord_fg = (F - G).shifted_order();
            if (ord_fg == INT_MAX) continue;
            int ord_dt = INT_MAX;
            for (const auto& c : dT.comp) ord_dt = std::min(ord_dt, c.order());
            CHECK(ord_dt > ord_fg + cp.q);
        }
    }
    SUBCASE("singularity instance") {
        SingularityProblem<Rational> p;
        p.d = 9;
        p.f0 = GradedSeries<Rational>::monomial(2, p.d, MultiIndex({2, 1}), Rational(1));
        p.R = random_series(rng, 2, 4, 5, p.d);
        auto cp = sing_engine_problem(p);
        for (int t = 0; t < 5; ++t) {
            int k = 2 + static_cast<int>(rng.below(2));
            VectorSeries<Rational> F(2, 2, p.d, {0, 0});
            VectorSeries<Rational> G = F;
            for (int j = 0; j < 2; ++j) {
                F.comp[j] = random_series(rng, 2, k, k + 1, p.d);
                G.comp[j] = random_series(rng, 2, k, k + 1, p.d);
            }
            VectorSeries<Rational> dT = cp.eval_nonlinear(F) - cp.eval_nonlinear(G);
            int ord_fg = (F - G).shifted_order();
            if (ord_fg == INT_MAX) continue;
            int ord_dt = INT_MAX;
            for (const auto& c : dT.comp) ord_dt = std::min(ord_dt, c.order());
            CHECK(ord_dt > ord_fg + cp.q);
        }
    }
}

TEST_CASE("solver failures carry the offending degree") {
    auto cp = trivial_problem(2);
    cp.eval_nonlinear = [](const VectorSeries<Rational>& F) {
        VectorSeries<Rational> t(1, 2, F.comp[0].truncation());
        t.comp[0].set_coeff(MultiIndex({3, 0}), Rational(1));
        return t;
    };
    cp.solve_degree = [](int k, const VectorSeries<Rational>& rhs) -> DegreeSolve<Rational> {
        if (!rhs.comp[0].is_zero()) throw SolveDegreeError(k, "not in the image");
        DegreeSolve<Rational> s;
        s.solution = VectorSeries<Rational>(1, 2, rhs.comp[0].truncation(), {1});
        s.residual = VectorSeries<Rational>(1, 2, rhs.comp[0].truncation());
        return s;
    };
    try {
        solve_degreewise(cp, 5);
        FAIL("expected SolveDegreeError");
    } catch (const SolveDegreeError& e) {
        CHECK(e.degree == 2);  // target degree q+k = 3 hits the seeded term at k = 2
    }
}

TEST_CASE("denominator classification") {
    SUBCASE("poincare pair (1,2) is big") {
        auto p = classify_growth<Rational>({Rational(1), Rational(2)}, 12);
        CHECK(p.kind == DenominatorClass::big);
        CHECK(p.poincare_override);
        CHECK(p.C > 0.0);
    }
    SUBCASE("(1,-1) has bounded denominators: relative with alpha = 1") {
        auto p = classify_growth<Rational>({Rational(1), Rational(-1)}, 12);
        CHECK(p.kind == DenominatorClass::relative);
        CHECK(p.alpha == doctest::Approx(1.0).epsilon(0.15));
    }
    SUBCASE("synthetic entries i^{1/2} with m=1: relative, alpha = 0.5") {
        std::vector<DenominatorEntry> entries;
        for (int i = 2; i <= 40; ++i) {
            DenominatorEntry e;
            e.component = -1;
            e.degree = i;
            e.abs_value = std::sqrt(static_cast<double>(i));
            entries.push_back(e);
        }
        auto p = classify_denominators(std::move(entries), 1);
        CHECK(p.kind == DenominatorClass::relative);
        CHECK(p.alpha == doctest::Approx(0.5).epsilon(0.1));
        CHECK(p.beta == doctest::Approx(0.5).epsilon(0.1));
    }
    SUBCASE("siegel-type decay classifies as siegel") {
        std::vector<DenominatorEntry> entries;
        for (int i = 2; i <= 40; ++i) {
            DenominatorEntry e;
            e.component = -1;
            e.degree = i;
            e.abs_value = 1.0 / (i * i);
            entries.push_back(e);
        }
        auto p = classify_denominators(std::move(entries), 1);
        CHECK(p.kind == DenominatorClass::siegel);
        CHECK(p.tau == doctest::Approx(2.0).epsilon(0.1));
    }
    SUBCASE("all resonant means unclassified") {
        std::vector<DenominatorEntry> entries(3);
        for (auto& e : entries) {
            e.degree = 2;
            e.abs_value = 0.0;
            e.resonant = true;
        }
        auto p = classify_denominators(std::move(entries), 1);
        CHECK(p.kind == DenominatorClass::unclassified);
    }
}
