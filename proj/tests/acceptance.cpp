// Acceptance checks for the whole library and CLI: property-based runs at
// desk scale plus the explicitly displayed quantities. Each case prints one
// PASS/FAIL line; the binary exits nonzero if any fails.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nf/belitskii.hpp"
#include "nf/gevrey.hpp"
#include "nf/geometry.hpp"
#include "nf/majorant.hpp"
#include "nf/rng.hpp"
#include "nf/singularity.hpp"
#include "nf/univariate.hpp"
#include "nf/vector_field.hpp"
#include "nf/vf_majorant.hpp"

using namespace nf;

namespace {

std::string g_nfc;

void line(int id, bool ok, const char* text) {
    std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, text);
    std::fflush(stdout);
}

}  // namespace

TEST_CASE("01 belitskii adjoint identity, 200 random pairs, exact") {
    SplitMix64 rng(1001);
    bool ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng.below(3));          // n <= 4
        int deg = 1 + static_cast<int>(rng.below(7));        // derivative degree <= 8
        auto f = random_homogeneous(rng, n, deg + 1, deg + 1);
        auto g = random_homogeneous(rng, n, deg, deg + 1);
        int j = static_cast<int>(rng.below(n));
        ok = ok && belitskii_inner(partial(f, j), g) ==
                       belitskii_inner(f, variable_series<Rational>(n, deg + 1, j) * g);
        if (!ok) break;
    }
    line(1, ok, "belitskii adjoint identity on 200 random rational pairs");
    CHECK(ok);
}

TEST_CASE("02 poincare-dulac certificate at lambda=(1,2) and (1,3)") {
    SplitMix64 rng(1002);
    bool ok = true;
    for (long lam2 : {2L, 3L}) {
        VectorFieldProblem<Rational> p;
        p.lambda = {Rational(1), Rational(lam2)};
        p.d = 10;
        p.R.assign(2, GradedSeries<Rational>(2, p.d));
        for (auto& r : p.R) r = random_series(rng, 2, 2, 3, p.d, 0.9);
        auto res = pd_normalize(p);
        // recompute the pushforward and check every non-resonant coefficient
        auto push = pushforward(res.F, p.lambda, p.R, p.d);
        for (int j = 0; j < 2; ++j)
            for (int k = 2; k <= p.d; ++k)
                for (const auto& [Q, c] : push[j].terms_of_degree(k))
                    ok = ok && denominator(p.lambda, j, Q) == Rational(0);
        auto rs = enumerate_resonances(p.lambda, p.d);
        ok = ok && rs.size() == 1 && rs[0].first == 1 &&
             rs[0].second == MultiIndex({static_cast<int>(lam2), 0});
        ok = ok && res.certified;
    }
    line(2, ok, "pushforward has exactly zero non-resonant coefficients; resonance sets exact");
    CHECK(ok);
}

TEST_CASE("03 big denominators give geometric growth of the transformation") {
    // a single 3-parameter fit on the [d/2, d] window scatters by ~0.3 (the
    // regressors i and log i! are nearly collinear on so few points), so the
    // order is read off as the mean over 32 seeded instances at the stated
    // d = 14, with the default window
    SplitMix64 rng(1003);
    double mean_alpha = 0.0;
    bool certified = true;
    const int instances = 32;
    for (int t = 0; t < instances; ++t) {
        VectorFieldProblem<Rational> p;
        p.lambda = {Rational(1), Rational(2)};
        p.d = 14;
        p.R.assign(2, GradedSeries<Rational>(2, p.d));
        for (auto& r : p.R) r = random_series(rng, 2, 2, 3, p.d, 1.0);
        auto res = pd_normalize(p);
        certified = certified && res.certified;
        VectorSeries<Rational> F(2, 2, p.d, {1, 1});
        F.comp = {res.F[0], res.F[1]};
        HatSeries h = hat_series(F);
        mean_alpha += gevrey_fit(h.coeff, h.degree() / 2, h.degree()).alpha / instances;
    }
    bool ok = certified && mean_alpha >= -0.1 && mean_alpha <= 0.1;
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "mean fitted gevrey order %.4f in [-0.1, 0.1] at lambda=(1,2), d=14", mean_alpha);
    line(3, ok, buf);
    CHECK(ok);
}

TEST_CASE("04 relative denominators i^{1-alpha} give an alpha-gevrey solution") {
    const double alpha = 0.5;
    const int d = 40;
    CohomologyProblem<double> cp;
    cp.n = 1;
    cp.r = 1;
    cp.s_dim = 1;
    cp.q = 1;
    cp.m = {1};
    cp.eval_nonlinear = [](const VectorSeries<double>& F) {
        int tr = F.comp[0].truncation();
        VectorSeries<double> out(1, 1, tr + 1);
        GradedSeries<double> x2 = GradedSeries<double>::monomial(1, tr + 1, MultiIndex({2}), 1.0);
        out.comp[0] = x2 * 2.0;
        out.comp[0] += x2 * partial(F.comp[0].extended(tr + 1), 0);
        return out;
    };
    cp.solve_degree = [&](int k, const VectorSeries<double>& rhs) {
        DegreeSolve<double> s;
        s.solution = VectorSeries<double>(1, 1, d + 1, {1});
        s.residual = VectorSeries<double>(1, 1, d + 2);
        double den = std::pow(static_cast<double>(k), 1.0 - alpha);
        for (const auto& [Q, c] : rhs.comp[0].terms_of_degree(k + 1))
            s.solution.comp[0].add_coeff(Q, c / den);
        s.min_abs_denominator = den;
        return s;
    };
    auto res = solve_degreewise(cp, d);
    std::vector<double> norms(d + 1, 0.0);
    for (size_t t = 0; t < res.report.degrees.size(); ++t)
        norms[res.report.degrees[t]] = res.report.solution_norm[t];
    auto est = gevrey_fit(norms, d / 2, d);
    bool ok = est.alpha >= 0.35 && est.alpha <= 0.65;
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "synthetic engine with denominators i^{0.5}: fitted alpha %.4f in [0.35, 0.65]",
                  est.alpha);
    line(4, ok, buf);
    CHECK(ok);
}

TEST_CASE("05 metric normal form membership and the curvature line at n=2") {
    SplitMix64 rng(1005);
    bool ok = true;
    for (int n : {2, 3}) {
        GeometryObject<Rational> obj;
        obj.kind = GeomKind::metric;
        obj.n = n;
        obj.d = 8;
        obj.M = MatrixSeries<Rational>(n, n, obj.d);
        for (auto& e : obj.M.entry) e = random_series(rng, n, 1, 3, obj.d, 0.5);
        auto res = geometry_normalize(obj);
        ok = ok && res.annihilates_x && res.symmetric && res.certified;
        if (n == 2) {
            // the degree-2 normal space: 1-dimensional, spanned by
            // [[y^2, -xy], [-xy, x^2]]
            MatrixSeries<Rational> d2 = res.normal_form.homogeneous_part(2);
            Rational K = d2.at(0, 0).coeff(MultiIndex({0, 2}));
            MatrixSeries<Rational> gauss(2, 2, obj.d);
            gauss.at(0, 0) = GradedSeries<Rational>::monomial(2, obj.d, MultiIndex({0, 2}), K);
            gauss.at(0, 1) = GradedSeries<Rational>::monomial(2, obj.d, MultiIndex({1, 1}), -K);
            gauss.at(1, 0) = gauss.at(0, 1);
            gauss.at(1, 1) = GradedSeries<Rational>::monomial(2, obj.d, MultiIndex({2, 0}), K);
            ok = ok && d2 == gauss;
            // dimension of the degree-2 normal space by direct linear algebra:
            // symmetric degree-2 matrices with M x = 0
            std::vector<MultiIndex> mono2 = monomials_of_degree(2, 2);
            std::vector<MultiIndex> mono3 = monomials_of_degree(2, 3);
            std::map<MultiIndex, int, GrlexLess> ridx;
            int rr = 0;
            for (const auto& m3 : mono3) ridx.emplace(m3, rr++);
            DenseMatrix<Rational> C(2 * rr, 3 * static_cast<int>(mono2.size()));
            int col = 0;
            for (int a = 0; a < 2; ++a)
                for (int b = a; b < 2; ++b)
                    for (const auto& m : mono2) {
                        // entry (a,b) = (b,a) = x^m feeds (M x)_a and, off the
                        // diagonal, (M x)_b
                        C.at(a * rr + ridx.at(m.plus(MultiIndex::unit(2, b))), col) += Rational(1);
                        if (a != b)
                            C.at(b * rr + ridx.at(m.plus(MultiIndex::unit(2, a))), col) +=
                                Rational(1);
                        ++col;
                    }
            auto kern = kernel_basis(C);
            ok = ok && kern.size() == 1;
        }
    }
    line(5, ok, "metric NF: M x = 0 and M = M^t exact; n=2 degree-2 space is the gauss line");
    CHECK(ok);
}

TEST_CASE("06 conformal normal form at n=3; flatness at n=2") {
    SplitMix64 rng(1006);
    bool ok = true;
    {
        GeometryObject<Rational> obj;
        obj.kind = GeomKind::conformal;
        obj.n = 3;
        obj.d = 6;
        obj.M = MatrixSeries<Rational>(3, 3, obj.d);
        for (auto& e : obj.M.entry) e = random_series(rng, 3, 1, 2, obj.d, 0.35);
        auto res = geometry_normalize(obj);
        ok = ok && res.annihilates_x && res.symmetric && res.traceless && res.certified;
    }
    {
        GeometryObject<Rational> obj;
        obj.kind = GeomKind::conformal;
        obj.n = 2;
        obj.d = 6;
        obj.M = MatrixSeries<Rational>(2, 2, obj.d);
        for (auto& e : obj.M.entry) e = random_series(rng, 2, 1, 3, obj.d, 0.7);
        auto res = geometry_normalize(obj);
        ok = ok && res.certified && res.normal_form.is_zero();
    }
    line(6, ok, "conformal NF: three membership equations exact at n=3; n=2 reduces to zero");
    CHECK(ok);
}

TEST_CASE("07 spectrum of the trace operator across the grid") {
    bool ok = true;
    bool half_fails_at_32 = false;
    std::printf("       n  i  lambda_min  lambda_1     >1/2\n");
    for (int n = 3; n <= 5; ++n)
        for (int i = 2; i <= 8; ++i) {
            double lam1 = static_cast<double>((n - 2) * (i - 1)) / (i + 1);
            double lmin = l_operator_min_eigenvalue(n, i);
            bool above_half = lmin > 0.5;
            std::printf("       %d  %d  %10.6f  %10.6f  %s\n", n, i, lmin, lam1,
                        above_half ? "yes" : "no");
            ok = ok && lmin >= lam1 - 1e-9 && lmin > 0.0;
            if (n == 3 && i == 2) half_fails_at_32 = !above_half;
        }
    ok = ok && half_fails_at_32;  // recorded comparison: 1/3 < 1/2 at (3,2)
    line(7, ok, "lambda_min >= (n-2)(i-1)/(i+1) - 1e-9 and > 0; the 1/2 bound fails at (3,2)");
    CHECK(ok);
}

TEST_CASE("08 solver norm ratios bounded by one constant") {
    SplitMix64 rng(1008);
    const double pinned_bound = 1000.0;
    double low_degree_worst = 0.0, high_degree_worst = 0.0;
    bool ok = true;
    for (int i = 2; i <= 8; ++i) {
        double worst_i = 0.0;
        for (int t = 0; t < 50; ++t) {
            MatrixSeries<Rational> A = random_homogeneous_matrix(rng, 3, i, i, 0.5);
            double an = A.max_entry_norm_degree(i);
            if (an == 0.0) continue;
            auto [phi, Q, h] = conformal_solve(A, i);
            double pn = 0.0;
            for (const auto& p : phi) pn = std::max(pn, norm_homogeneous_degree(p, i + 1));
            worst_i = std::max({worst_i, i * pn / an, Q.max_entry_norm_degree(i) / an,
                                norm_homogeneous_degree(h, i) / an});
        }
        ok = ok && worst_i <= pinned_bound;
        if (i <= 4)
            low_degree_worst = std::max(low_degree_worst, worst_i);
        else if (i >= 6)
            high_degree_worst = std::max(high_degree_worst, worst_i);
    }
    // no growth trend: factorial-type divergence would blow past this easily
    ok = ok && high_degree_worst <= 3.0 * std::max(low_degree_worst, 1.0);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "ratios i|phi|/|A|, |Q|/|A|, |h|/|A| <= %.0f over i<=8 (low %.2f, high %.2f)",
                  pinned_bound, low_degree_worst, high_degree_worst);
    line(8, ok, buf);
    CHECK(ok);
}

TEST_CASE("09 singularity complement and certified normalization") {
    SplitMix64 rng(1009);
    bool ok = true;
    GradedSeries<Rational> f0 =
        GradedSeries<Rational>::monomial(2, 9, MultiIndex({2, 1}), Rational(1));
    auto data = jacobian_image_basis(f0, 3);
    ok = ok && data.complement_basis.size() == 1 &&
         data.complement_basis[0].terms_of_degree(3).size() == 1 &&
         data.complement_basis[0].coeff(MultiIndex({0, 3})) != Rational(0);
    for (int t = 0; t < 3; ++t) {
        SingularityProblem<Rational> p;
        p.d = 9;
        p.f0 = f0;
        p.R = random_series(rng, 2, 4, 6, p.d, 0.6);
        auto res = sing_normalize(p);
        ok = ok && res.certified;
        GradedSeries<Rational> f = p.f0 + p.R;
        ok = ok && compose_shifted(f, res.U, p.d) == p.f0 + res.h;  // full composition
        for (int i = 4; i <= p.d; ++i) {
            auto di = jacobian_image_basis(p.f0, i);
            GradedSeries<Rational> hi = res.h.homogeneous_part(i);
            for (const auto& w : di.image_basis)
                ok = ok && belitskii_inner(hi, w) == Rational(0);
        }
    }
    line(9, ok, "Delta^(3) = span{x2^3}; image projections exactly zero up to d=9, composition certified");
    CHECK(ok);
}

TEST_CASE("10 majorant domination for the lambda=(1,2) run, 30 terms") {
    SplitMix64 rng(1010);
    VectorFieldProblem<Rational> p;
    p.lambda = {Rational(1), Rational(2)};
    p.R.assign(2, GradedSeries<Rational>(2, 33));
    auto params = estimate_vf_majorant(p);
    const int terms = 30;
    p.d = params.k + 1 + terms;  // solution degrees reach m+k+terms
    for (auto& r : p.R) r = random_series(rng, 2, 2, 3, p.d, 0.8);
    auto res = pd_normalize(p);
    params = estimate_vf_majorant(p);
    auto model = majorant_build<Rational>(2, 2, {1, 1}, 1, params.k, params.M, params.c, params.C,
                                          terms);
    VectorSeries<Rational> F(2, 2, p.d, {1, 1});
    F.comp = {res.F[0], res.F[1]};
    auto verdict = verify_domination(F, model, params.k);
    auto rad = radius_estimate(model);
    bool ok = res.certified && verdict.dominated && verdict.checked >= 2 * terms &&
              rad.valid && rad.lo > 0.0 && rad.hi >= rad.lo;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "f dominates all %d checked norms; radius interval [%.3g, %.3g] positive",
                  verdict.checked, rad.lo, rad.hi);
    line(10, ok, buf);
    CHECK(ok);
}

TEST_CASE("11 gevrey-space and derivative-lemma inequalities, 100 cases each") {
    SplitMix64 rng(1011);
    bool ok = true;
    const double slack = 1e-12;
    for (int t = 0; t < 100 && ok; ++t) {  // weighted-norm inequalities
        int N = 12;
        Poly1<double> psi(N), g(N), f(N);
        for (int i = 1; i <= N; ++i) {
            psi.c[i] = (rng.real01() - 0.5) * 4.0;
            g.c[i] = (rng.real01() - 0.5) * 4.0;
            f.c[i] = (rng.real01() - 0.5) * 4.0;
        }
        double s = 0.5 + rng.real01();
        double beta = s + rng.real01() * 2.0;
        ok = ok && gevrey_norm(psi, s, beta - s) <= gevrey_norm(psi.shifted(1), s, beta) * (1 + slack);
        ok = ok && gevrey_norm(f * g, s, 0.0) <=
                       gevrey_norm(f, s, 0.0) * gevrey_norm(g, s, 0.0) * (1 + slack);
        int pexp = static_cast<int>(rng.below(3));
        int qexp = static_cast<int>(std::ceil(std::max(0.0, (pexp - beta) / s)));
        ok = ok && gevrey_norm(t_pow_delta_pow(g, qexp, pexp), s, 0.0) <=
                       gevrey_norm(g, s, beta) * (1 + slack);
    }
    for (int t = 0; t < 100 && ok; ++t) {  // hat-series derivative and product laws
        int n = 2 + static_cast<int>(rng.below(2));
        auto f = random_series(rng, n, 0, 5, 6, 0.5);
        auto g = random_series(rng, n, 0, 3, 6, 0.5);
        Poly1<double> hf(6), hg(6), hfg(6);
        hf.c = hat_series(f).coeff;
        hf.c.resize(7, 0.0);
        hg.c = hat_series(g).coeff;
        hg.c.resize(7, 0.0);
        hfg.c = hat_series(f * g).coeff;
        hfg.c.resize(7, 0.0);
        Poly1<double> prod = hf * hg;
        for (int i = 0; i <= 6; ++i) ok = ok && hfg.at(i) <= prod.at(i) * (1 + slack) + slack;
        int l = 1 + static_cast<int>(rng.below(2));
        Poly1<double> dh = hf.derivative(l);
        Poly1<double> sum(6);
        for (const auto& Q : monomials_of_degree(n, l)) {
            Poly1<double> one(6);
            one.c = hat_series(differentiate(f, Q)).coeff;
            one.c.resize(7, 0.0);
            for (int i = 0; i <= 6; ++i) {
                ok = ok && one.at(i) <= dh.at(i) * (1 + slack) + slack;
                sum.add(i, one.at(i));
            }
        }
        double cl = derivative_count_constant(n, l).get_d();
        for (int i = 0; i <= 6; ++i) ok = ok && sum.at(i) <= cl * dh.at(i) * (1 + slack) + slack;
    }
    line(11, ok, "gevrey-lemma and derivative-lemma inequalities hold on 100 random cases each");
    CHECK(ok);
}

TEST_CASE("12 cli determinism in exact mode") {
    bool ok = !g_nfc.empty();
    if (ok) {
        std::ofstream prob("acc_vf.json");
        prob << R"({
  "mode": "rational",
  "lambda": ["1", "2"],
  "d": 9,
  "R": [
    {"n": 2, "d": 9, "mode": "rational", "terms": [[[1, 1], "3", "7"], [[0, 2], "-2", "5"]]},
    {"n": 2, "d": 9, "mode": "rational", "terms": [[[2, 0], "1", "1"], [[1, 2], "4", "9"]]}
  ]
})";
        prob.close();
        auto run_once = [&](const std::string& out) {
            std::string cmd = g_nfc + " vf-normalize --input acc_vf.json --output " + out +
                              " >/dev/null 2>/dev/null";
            return std::system(cmd.c_str()) == 0;
        };
        auto slurp = [](const std::string& p) {
            std::ifstream in(p);
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        ok = run_once("acc_rep_a.json") && run_once("acc_rep_b.json");
        ok = ok && slurp("acc_rep_a.json") == slurp("acc_rep_b.json") &&
             !slurp("acc_rep_a.json").empty();
        ok = ok && slurp("acc_rep_a.csv") == slurp("acc_rep_b.csv");
    }
    line(12, ok, "repeated vf-normalize runs are byte-identical (report and csv)");
    CHECK(ok);
}

int main(int argc, char** argv) {
    doctest::Context ctx;
    if (argc > 1 && argv[1][0] != '-') {
        g_nfc = argv[1];
        ctx.applyCommandLine(argc - 1, argv + 1);
    } else {
        ctx.applyCommandLine(argc, argv);
    }
    return ctx.run();
}
