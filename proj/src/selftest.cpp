#include "nf/selftest.hpp"

#include "nf/belitskii.hpp"
#include "nf/geometry.hpp"
#include "nf/majorant.hpp"
#include "nf/rng.hpp"
#include "nf/singularity.hpp"
#include "nf/vector_field.hpp"
#include "nf/vf_majorant.hpp"

namespace nf {

SelfTestResult run_self_tests(uint64_t seed) {
    SelfTestResult out;
    SplitMix64 rng(seed ^ 0xa02bdbf7bb3c0a7ULL);

    {  // adjoint identity <df/dx_j, g> = <f, x_j g>
        bool ok = true;
        for (int trial = 0; trial < 20 && ok; ++trial) {
            int n = 2 + static_cast<int>(rng.below(3));
            int deg = 2 + static_cast<int>(rng.below(5));
            auto f = random_homogeneous(rng, n, deg + 1, deg + 1);
            auto g = random_homogeneous(rng, n, deg, deg + 1);
            int j = static_cast<int>(rng.below(n));
            auto lhs = belitskii_inner(partial(f, j), g);
            auto rhs = belitskii_inner(f, variable_series<Rational>(n, deg + 1, j) * g);
            ok = lhs == rhs;
        }
        out.checks.emplace_back("belitskii_adjoint", ok);
    }
    {  // Poincare-Dulac certificate for lambda = (1,2)
        VectorFieldProblem<Rational> p;
        p.lambda = {Rational(1), Rational(2)};
        p.d = 8;
        p.R.assign(2, GradedSeries<Rational>(2, p.d));
        for (int j = 0; j < 2; ++j) p.R[j] = random_series(rng, 2, 2, 3, p.d);
        auto res = pd_normalize(p);
        out.checks.emplace_back("poincare_dulac_certificate", res.certified);
    }
    {  // metric membership, n = 2
        GeometryObject<Rational> obj;
        obj.kind = GeomKind::metric;
        obj.n = 2;
        obj.d = 6;
        obj.M = MatrixSeries<Rational>(2, 2, obj.d);
        for (auto& e : obj.M.entry) e = random_series(rng, 2, 1, 2, obj.d);
        auto res = geometry_normalize(obj);
        out.checks.emplace_back("metric_membership", res.certified);
    }
    {  // majorant domination for a small run
        VectorFieldProblem<Rational> p;
        p.lambda = {Rational(1), Rational(2)};
        p.d = 14;
        p.R.assign(2, GradedSeries<Rational>(2, p.d));
        p.R[0] = random_series(rng, 2, 2, 2, p.d);
        p.R[1] = random_series(rng, 2, 2, 2, p.d);
        auto res = pd_normalize(p);
        auto params = estimate_vf_majorant(p);
        auto model = majorant_build<Rational>(2, 2, {1, 1}, 1, params.k, params.M, params.c,
                                              params.C, p.d - params.k - 1);
        VectorSeries<Rational> F(2, 2, p.d, {1, 1});
        F.comp = {res.F[0], res.F[1]};
        auto verdict = verify_domination(F, model, params.k);
        out.checks.emplace_back("majorant_domination", verdict.dominated && verdict.checked > 0);
    }
    return out;
}

}  // namespace nf
