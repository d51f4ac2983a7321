// nfc: batch driver for normal-form computations. One run, one process:
// reads a JSON problem, writes a JSON report (and CSV tables), re-verifies
// its own certificate before exiting 0. Exit codes: 0 ok, 1 input error,
// 2 certificate failure.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nf/gevrey.hpp"
#include "nf/geometry.hpp"
#include "nf/json_io.hpp"
#include "nf/majorant.hpp"
#include "nf/selftest.hpp"
#include "nf/singularity.hpp"
#include "nf/vector_field.hpp"
#include "nf/vf_majorant.hpp"

using nlohmann::json;
using namespace nf;

namespace {

struct Options {
    std::string input, output;
    int degree = 0;  // 0 = take from file / default
    std::string mode;
    double tol = kDefaultTol;
    uint64_t seed = 1;
    std::string kind;
    std::string lambda;
    std::string window;
};

std::string csv_sibling(const std::string& path) {
    auto dot = path.rfind('.');
    if (dot == std::string::npos) return path + ".csv";
    return path.substr(0, dot) + ".csv";
}

void emit(const Options& opt, const json& report) {
    if (opt.output.empty())
        std::cout << report.dump(2) << "\n";
    else
        io::write_file(opt.output, report);
}

void emit_csv(const Options& opt, const std::string& csv) {
    if (opt.output.empty()) return;
    std::ofstream out(csv_sibling(opt.output));
    out << csv;
}

json report_table(const SolveReport& r) {
    return json{{"degrees", r.degrees},
                {"rhs_norm", r.rhs_norm},
                {"solution_norm", r.solution_norm},
                {"residual_norm", r.residual_norm},
                {"min_denominator", r.min_denominator}};
}

SolveReport report_table_from_json(const json& j) {
    SolveReport r;
    r.degrees = j.at("degrees").get<std::vector<int>>();
    r.rhs_norm = j.at("rhs_norm").get<std::vector<double>>();
    r.solution_norm = j.at("solution_norm").get<std::vector<double>>();
    r.residual_norm = j.at("residual_norm").get<std::vector<double>>();
    r.min_denominator = j.at("min_denominator").get<std::vector<double>>();
    return r;
}

json profile_json(const DenominatorProfile& p) {
    json j{{"kind", to_string(p.kind)},
           {"C", p.C},
           {"beta", p.beta},
           {"order_m", p.order_m},
           {"poincare_override", p.poincare_override}};
    if (p.kind == DenominatorClass::relative || p.kind == DenominatorClass::big)
        j["alpha"] = p.alpha;
    if (p.kind == DenominatorClass::siegel) j["tau"] = p.tau;
    return j;
}

// --lambda entry: "3", "-1/2", "1+2i", "3i", "1-i"
template <class S>
S parse_lambda_entry(const std::string& text);

Rational parse_rational_text(const std::string& s) {
    Rational v;
    if (v.set_str(s, 10) != 0) throw io::InputError("bad rational: " + s);
    v.canonicalize();
    return v;
}

template <>
Rational parse_lambda_entry<Rational>(const std::string& text) {
    return parse_rational_text(text);
}

// splits "a+bi" / "a-bi" / "bi" / "a" into textual real and imaginary parts
std::pair<std::string, std::string> split_complex_literal(const std::string& text) {
    std::string s = text;
    if (s.empty()) throw io::InputError("empty eigenvalue");
    if (s.back() != 'i') return {s, "0"};
    s.pop_back();
    size_t split = std::string::npos;
    for (size_t t = 1; t < s.size(); ++t)
        if (s[t] == '+' || s[t] == '-') split = t;
    if (split == std::string::npos) {
        if (s.empty() || s == "+") return {"0", "1"};
        if (s == "-") return {"0", "-1"};
        return {"0", s};
    }
    std::string imag = s.substr(split);
    if (imag == "+") imag = "1";
    if (imag == "-") imag = "-1";
    return {s.substr(0, split), imag};
}

template <>
GaussianRational parse_lambda_entry<GaussianRational>(const std::string& text) {
    auto [re, im] = split_complex_literal(text);
    return {parse_rational_text(re), parse_rational_text(im)};
}

template <>
double parse_lambda_entry<double>(const std::string& text) {
    return std::stod(text);
}

template <>
Complex parse_lambda_entry<Complex>(const std::string& text) {
    auto [re, im] = split_complex_literal(text);
    return {std::stod(re), std::stod(im)};
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

io::Mode pick_mode(const Options& opt, const json& j) {
    if (!opt.mode.empty()) return io::parse_mode(opt.mode);
    if (j.is_object() && j.contains("mode")) return io::parse_mode(j.at("mode").get<std::string>());
    return io::Mode::rational;
}

template <class Fn>
int dispatch_mode(io::Mode m, Fn&& fn) {
    switch (m) {
        case io::Mode::rational: return fn.template operator()<Rational>();
        case io::Mode::gaussian: return fn.template operator()<GaussianRational>();
        case io::Mode::real: return fn.template operator()<double>();
        case io::Mode::complex: return fn.template operator()<Complex>();
    }
    return 1;
}

// ---------------------------------------------------------------- vf

int checked_degree(int d) {
    if (d < 2) throw io::InputError("truncation degree must be at least 2");
    return d;
}

double checked_tol(double tol, io::Mode m) {
    if ((m == io::Mode::real || m == io::Mode::complex) && tol <= 0.0)
        throw io::InputError("floating modes need a positive tolerance");
    return tol;
}

template <class S>
VectorFieldProblem<S> vf_problem_from_json(const json& j, const Options& opt) {
    VectorFieldProblem<S> p;
    for (const json& l : j.at("lambda")) {
        if (l.is_string() && (io::json_codec<S>::mode == io::Mode::rational ||
                              io::json_codec<S>::mode == io::Mode::gaussian))
            p.lambda.push_back(parse_lambda_entry<S>(l.get<std::string>()));
        else
            p.lambda.push_back(io::json_codec<S>::scalar_read(l));
    }
    p.d = checked_degree(opt.degree > 0 ? opt.degree : j.value("d", 10));
    p.tol = checked_tol(j.value("tol", opt.tol), io::json_codec<S>::mode);
    int n = static_cast<int>(p.lambda.size());
    p.R.assign(n, GradedSeries<S>(n, p.d));
    if (j.contains("R")) {
        const json& comps = j.at("R").is_array() ? j.at("R") : j.at("R").at("components");
        if (static_cast<int>(comps.size()) != n)
            throw io::InputError("R must have one component per eigenvalue");
        for (int t = 0; t < n; ++t) p.R[t] = io::series_from_json<S>(comps[t]).extended(p.d).truncated(p.d);
    }
    return p;
}

template <class S>
json vf_problem_to_json(const VectorFieldProblem<S>& p) {
    json lam = json::array();
    for (const S& l : p.lambda) lam.push_back(io::json_codec<S>::scalar(l));
    json comps = json::array();
    for (const auto& r : p.R) comps.push_back(io::series_to_json(r));
    return json{{"lambda", std::move(lam)}, {"R", std::move(comps)}, {"d", p.d}, {"tol", p.tol}};
}

json resonance_list(const std::vector<std::pair<int, MultiIndex>>& res) {
    json out = json::array();
    for (const auto& [j, Q] : res) out.push_back(json::array({j + 1, Q.exponents()}));
    return out;
}

template <class S>
int do_vf_normalize(const json& in, const Options& opt) {
    VectorFieldProblem<S> p = vf_problem_from_json<S>(in, opt);
    auto t0 = std::chrono::steady_clock::now();
    PDResult<S> res = pd_normalize(p);
    std::fprintf(stderr, "vf-normalize: %.3fs\n",
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());

    bool analytic_request = in.value("certify", std::string()) == "analytic";
    bool analytic_ok = !analytic_request || res.profile.kind == DenominatorClass::big;

    json rep;
    rep["command"] = "vf-normalize";
    rep["mode"] = io::mode_name(io::json_codec<S>::mode);
    rep["problem"] = vf_problem_to_json(p);
    json F = json::array();
    for (const auto& f : res.F) F.push_back(io::series_to_json(f));
    rep["transformation"] = std::move(F);
    json NF = json::array();
    for (const auto& f : res.normal_form) NF.push_back(io::series_to_json(f));
    rep["normal_form"] = std::move(NF);
    rep["resonances"] = resonance_list(enumerate_resonances(p.lambda, p.d, p.tol));
    rep["poincare_domain"] = poincare_domain(p.lambda);
    rep["classification"] = profile_json(res.profile);
    rep["per_degree"] = report_table(res.report);
    rep["certified"] = res.certified;
    if (analytic_request) rep["analytic_certification"] = analytic_ok;
    emit(opt, rep);
    emit_csv(opt, io::report_csv(res.report));
    return res.certified && analytic_ok ? 0 : 2;
}

template <class S>
int do_vf_diagnose(const json& in, const Options& opt) {
    std::vector<S> lambda;
    if (!opt.lambda.empty())
        for (const std::string& tok : split_commas(opt.lambda))
            lambda.push_back(parse_lambda_entry<S>(tok));
    else
        for (const json& l : in.at("lambda")) {
            if (l.is_string())
                lambda.push_back(parse_lambda_entry<S>(l.get<std::string>()));
            else
                lambda.push_back(io::json_codec<S>::scalar_read(l));
        }
    int d = checked_degree(opt.degree > 0 ? opt.degree : (in.is_object() ? in.value("d", 10) : 10));
    checked_tol(opt.tol, io::json_codec<S>::mode);
    json rep;
    rep["command"] = "vf-diagnose";
    rep["mode"] = io::mode_name(io::json_codec<S>::mode);
    json lam = json::array();
    for (const S& l : lambda) lam.push_back(io::json_codec<S>::scalar(l));
    rep["lambda"] = std::move(lam);
    rep["d"] = d;
    rep["resonances"] = resonance_list(enumerate_resonances(lambda, d, opt.tol));
    rep["poincare_domain"] = poincare_domain(lambda);
    rep["classification"] = profile_json(classify_growth(lambda, d, opt.tol));
    emit(opt, rep);
    return 0;
}

// ---------------------------------------------------------------- sing

template <class S>
int do_sing_normalize(const json& in, const Options& opt) {
    SingularityProblem<S> p;
    int d = checked_degree(opt.degree > 0 ? opt.degree : in.value("d", 10));
    p.f0 = io::series_from_json<S>(in.at("f0")).extended(d).truncated(d);
    p.R = io::series_from_json<S>(in.at("R")).extended(d).truncated(d);
    p.d = d;
    p.tol = checked_tol(in.value("tol", opt.tol), io::json_codec<S>::mode);
    SingResult<S> res = sing_normalize(p);

    json rep;
    rep["command"] = "sing-normalize";
    rep["mode"] = io::mode_name(io::json_codec<S>::mode);
    rep["problem"] = json{{"f0", io::series_to_json(p.f0)},
                          {"R", io::series_to_json(p.R)},
                          {"d", p.d},
                          {"tol", p.tol}};
    json U = json::array();
    for (const auto& u : res.U) U.push_back(io::series_to_json(u));
    rep["transformation"] = std::move(U);
    rep["remainder"] = io::series_to_json(res.h);
    rep["complement_dims"] = res.complement_dims;
    rep["per_degree"] = report_table(res.report);
    rep["certified"] = res.certified;
    emit(opt, rep);
    emit_csv(opt, io::report_csv(res.report));
    return res.certified ? 0 : 2;
}

// ---------------------------------------------------------------- geometry

GeomKind parse_kind(const std::string& s) {
    if (s == "frame") return GeomKind::frame;
    if (s == "metric") return GeomKind::metric;
    if (s == "conformal") return GeomKind::conformal;
    throw io::InputError("unknown kind: " + s + " (expected frame|metric|conformal)");
}

template <class S>
int do_geom_normalize(const json& in, const Options& opt) {
    GeometryObject<S> obj;
    obj.kind = parse_kind(!opt.kind.empty() ? opt.kind : in.at("kind").get<std::string>());
    obj.n = in.at("n").get<int>();
    obj.d = checked_degree(opt.degree > 0 ? opt.degree : in.value("d", 8));
    obj.tol = checked_tol(in.value("tol", opt.tol), io::json_codec<S>::mode);
    obj.M = io::matrix_series_from_json<S>(in.at("M"), obj.n, obj.d);
    GeometryResult<S> res = geometry_normalize(obj);

    json rep;
    rep["command"] = "geom-normalize";
    rep["mode"] = io::mode_name(io::json_codec<S>::mode);
    rep["problem"] = json{{"kind", to_string(obj.kind)},
                          {"n", obj.n},
                          {"d", obj.d},
                          {"tol", obj.tol},
                          {"M", io::matrix_series_to_json(obj.M)}};
    json gauge;
    json phi = json::array();
    for (const auto& c : res.gauge.phi) phi.push_back(io::series_to_json(c));
    gauge["phi"] = std::move(phi);
    gauge["Q"] = io::matrix_series_to_json(res.gauge.Q);
    gauge["h"] = io::series_to_json(res.gauge.h);
    rep["gauge"] = std::move(gauge);
    rep["normal_form"] = io::matrix_series_to_json(res.normal_form);
    rep["membership"] = json{{"annihilates_x", res.annihilates_x},
                             {"symmetric", res.symmetric},
                             {"traceless", res.traceless}};
    rep["per_degree"] = report_table(res.report);
    rep["certified"] = res.certified;
    emit(opt, rep);
    std::string csv = "degree,phi_ratio,q_ratio,h_ratio\n";
    for (size_t t = 0; t < res.ratios.size(); ++t) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g\n", res.report.degrees[t],
                      res.ratios[t][0], res.ratios[t][1], res.ratios[t][2]);
        csv += buf;
    }
    emit_csv(opt, csv);
    return res.certified ? 0 : 2;
}

// ---------------------------------------------------------------- majorant

template <class R>
int do_majorant(const json& in, const Options& opt) {
    int r = in.at("r").get<int>();
    int n = in.at("n").get<int>();
    std::vector<int> m = in.at("m").get<std::vector<int>>();
    int q = in.at("q").get<int>();
    bool gevrey_path = in.value("gevrey", false);
    int kmin = minimal_jet_cut(q, gevrey_path);
    int k = std::max(in.value("k", kmin), kmin);  // enforce the sufficiency margin
    R M = io::json_codec<R>::scalar_read(in.at("M"));
    R c = io::json_codec<R>::scalar_read(in.at("c"));
    R C = io::json_codec<R>::scalar_read(in.at("C"));
    int N = opt.degree > 0 ? opt.degree : in.value("terms", 30);

    MajorantModel<R> model = majorant_build<R>(r, n, m, q, k, M, c, C, N);
    RadiusInterval rad = radius_estimate(model);

    json rep;
    rep["command"] = "majorant";
    rep["mode"] = io::mode_name(io::json_codec<R>::mode);
    rep["model"] = json{{"r", r}, {"n", n}, {"m", m},
                        {"q", q}, {"k", k}, {"terms", N},
                        {"M", io::json_codec<R>::scalar(M)},
                        {"c", io::json_codec<R>::scalar(c)},
                        {"C", io::json_codec<R>::scalar(C)}};
    json fs = json::array();
    for (const auto& f : model.f) {
        json coeffs = json::array();
        for (int i = 1; i <= f.truncation(); ++i) coeffs.push_back(io::json_codec<R>::scalar(f.at(i)));
        fs.push_back(std::move(coeffs));
    }
    rep["f"] = std::move(fs);
    rep["radius_interval"] = json{{"lo", rad.lo}, {"hi", rad.hi}, {"valid", rad.valid}};

    int rc = 0;
    if (in.contains("norms")) {
        // norm sequence indexed by shifted degree m_j+k+i; single component
        std::vector<double> norms = in.at("norms").get<std::vector<double>>();
        bool dominated = true;
        int first_fail = -1;
        for (int i = 1; i <= std::min<int>(model.f[0].truncation(), norms.size()); ++i) {
            double fr;
            if constexpr (std::is_same_v<R, Rational>)
                fr = model.f[0].at(i).get_d();
            else
                fr = model.f[0].at(i);
            if (norms[i - 1] > fr * (1.0 + 1e-12)) {
                dominated = false;
                first_fail = i;
                break;
            }
        }
        rep["domination"] = json{{"dominated", dominated}, {"first_failure", first_fail}};
        if (!dominated) rc = 2;
    }
    emit(opt, rep);

    std::string csv = "index,f\n";
    for (int i = 1; i <= model.f[0].truncation(); ++i) {
        char buf[64];
        double v;
        if constexpr (std::is_same_v<R, Rational>)
            v = model.f[0].at(i).get_d();
        else
            v = model.f[0].at(i);
        std::snprintf(buf, sizeof(buf), "%d,%.17g\n", i, v);
        csv += buf;
    }
    emit_csv(opt, csv);
    return rc;
}

// ---------------------------------------------------------------- gevrey-fit

int do_gevrey_fit(const Options& opt) {
    std::ifstream in(opt.input);
    if (!in) throw io::InputError("cannot open " + opt.input);
    std::vector<double> norms;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        try {
            int deg = std::stoi(line.substr(0, comma));
            double v = std::stod(line.substr(comma + 1));
            if (deg >= static_cast<int>(norms.size())) norms.resize(deg + 1, 0.0);
            norms[deg] = v;
        } catch (...) {
            continue;  // header or stray line
        }
    }
    if (norms.empty()) throw io::InputError("no (degree, norm) rows in " + opt.input);
    int d = static_cast<int>(norms.size()) - 1;
    int lo = d / 2, hi = d;
    if (!opt.window.empty()) {
        auto toks = split_commas(opt.window);
        if (toks.size() != 2) throw io::InputError("--window expects lo,hi");
        lo = std::stoi(toks[0]);
        hi = std::stoi(toks[1]);
    }
    GevreyEstimate est = gevrey_fit(norms, lo, hi);
    json rep{{"command", "gevrey-fit"},
             {"alpha", est.alpha},
             {"logC", est.logC},
             {"intercept", est.intercept},
             {"residual", est.residual},
             {"window", json::array({est.window_lo, est.window_hi})},
             {"points_used", est.points_used},
             {"all_zero", est.all_zero}};
    emit(opt, rep);
    return 0;
}

// ---------------------------------------------------------------- verify

template <class S>
int verify_vf_report(const json& rep, const Options& opt) {
    Options sub = opt;
    sub.degree = 0;
    VectorFieldProblem<S> p = vf_problem_from_json<S>(rep.at("problem"), sub);
    std::vector<GradedSeries<S>> F;
    for (const json& f : rep.at("transformation"))
        F.push_back(io::series_from_json<S>(f).extended(p.d).truncated(p.d));
    auto push = pushforward(F, p.lambda, p.R, p.d);
    bool ok = true;
    for (int j = 0; j < p.n() && ok; ++j)
        for (int k = 2; k <= p.d && ok; ++k)
            for (const auto& [Q, c] : push[j].terms_of_degree(k)) {
                S den = denominator(p.lambda, j, Q);
                if (is_resonant_denominator(den, Q, p.tol)) continue;
                if constexpr (scalar_traits<S>::is_exact)
                    ok = false;
                else if (scalar_traits<S>::abs_approx(c) > p.tol)
                    ok = false;
                if (!ok) break;
            }
    // the report's normal form must be the recomputed pushforward
    if (ok) {
        const json& nf_json = rep.at("normal_form");
        for (int j = 0; j < p.n() && ok; ++j) {
            GradedSeries<S> claimed = io::series_from_json<S>(nf_json.at(j)).extended(p.d).truncated(p.d);
            if constexpr (scalar_traits<S>::is_exact)
                ok = claimed == push[j];
            else {
                GradedSeries<S> diff = claimed - push[j];
                diff.for_each([&](const MultiIndex&, const S& c) {
                    if (scalar_traits<S>::abs_approx(c) > p.tol) ok = false;
                });
            }
        }
    }
    return ok ? 0 : 2;
}

template <class S>
int verify_sing_report(const json& rep, const Options& opt) {
    const json& pj = rep.at("problem");
    SingularityProblem<S> p;
    p.d = pj.at("d").get<int>();
    p.f0 = io::series_from_json<S>(pj.at("f0")).extended(p.d).truncated(p.d);
    p.R = io::series_from_json<S>(pj.at("R")).extended(p.d).truncated(p.d);
    p.tol = pj.value("tol", opt.tol);
    std::vector<GradedSeries<S>> U;
    for (const json& u : rep.at("transformation"))
        U.push_back(io::series_from_json<S>(u).extended(p.d).truncated(p.d));
    GradedSeries<S> h = io::series_from_json<S>(rep.at("remainder")).extended(p.d).truncated(p.d);
    GradedSeries<S> f = p.f0 + p.R;
    GradedSeries<S> diff = compose_shifted(f, U, p.d) - p.f0 - h;
    bool ok = true;
    if constexpr (scalar_traits<S>::is_exact)
        ok = diff.is_zero();
    else
        diff.for_each([&](const MultiIndex&, const S& c) {
            if (scalar_traits<S>::abs_approx(c) > p.tol) ok = false;
        });
    if (ok) {  // remainder must be orthogonal to every image basis vector
        for (int i = p.q() + 1; i <= p.d && ok; ++i) {
            auto data = jacobian_image_basis(p.f0, i, InnerVariant::classic,
                                             scalar_traits<S>::is_exact ? 0.0 : p.tol);
            GradedSeries<S> hi = h.homogeneous_part(i);
            for (const auto& v : data.image_basis) {
                S ip = belitskii_inner(hi, v);
                if (!scalar_traits<S>::is_zero(ip, p.tol)) ok = false;
            }
        }
    }
    return ok ? 0 : 2;
}

template <class S>
int verify_geom_report(const json& rep, const Options&) {
    const json& pj = rep.at("problem");
    GeometryObject<S> obj;
    obj.kind = parse_kind(pj.at("kind").get<std::string>());
    obj.n = pj.at("n").get<int>();
    obj.d = pj.at("d").get<int>();
    obj.tol = pj.value("tol", kDefaultTol);
    obj.M = io::matrix_series_from_json<S>(pj.at("M"), obj.n, obj.d);
    GaugeElement<S> gauge;
    for (const json& c : rep.at("gauge").at("phi"))
        gauge.phi.push_back(io::series_from_json<S>(c).extended(obj.d + 1));
    gauge.Q = io::matrix_series_from_json<S>(rep.at("gauge").at("Q"), obj.n, obj.d);
    gauge.h = io::series_from_json<S>(rep.at("gauge").at("h")).extended(obj.d).truncated(obj.d);
    MatrixSeries<S> nf = apply_gauge(obj.M, gauge, obj.kind, obj.d);
    MatrixSeries<S> claimed = io::matrix_series_from_json<S>(rep.at("normal_form"), obj.n, obj.d);
    auto small = [&](const GradedSeries<S>& g) {
        if constexpr (scalar_traits<S>::is_exact) return g.is_zero();
        bool okl = true;
        g.for_each([&](const MultiIndex&, const S& c) {
            if (scalar_traits<S>::abs_approx(c) > obj.tol) okl = false;
        });
        return okl;
    };
    bool ok = true;
    for (size_t t = 0; t < nf.entry.size(); ++t)
        if (!small(nf.entry[t] - claimed.entry[t])) ok = false;
    for (const auto& e : nf.apply_to_x())
        if (!small(e)) ok = false;
    if (obj.kind != GeomKind::frame) {
        MatrixSeries<S> asym = nf - nf.transpose();
        for (const auto& e : asym.entry)
            if (!small(e)) ok = false;
    }
    if (obj.kind == GeomKind::conformal && !small(nf.trace())) ok = false;
    return ok ? 0 : 2;
}

int do_verify(const Options& opt) {
    if (opt.input.empty()) {
        SelfTestResult res = run_self_tests(opt.seed);
        json rep;
        rep["command"] = "verify";
        rep["seed"] = opt.seed;
        json checks = json::array();
        for (const auto& [name, ok] : res.checks) checks.push_back(json{{"name", name}, {"passed", ok}});
        rep["checks"] = std::move(checks);
        rep["all_passed"] = res.all_passed();
        emit(opt, rep);
        return res.all_passed() ? 0 : 2;
    }
    json rep = io::parse_file(opt.input);
    std::string cmd = rep.value("command", "");
    io::Mode m = io::parse_mode(rep.value("mode", "rational"));
    int rc;
    if (cmd == "vf-normalize")
        rc = dispatch_mode(m, [&]<class S>() { return verify_vf_report<S>(rep, opt); });
    else if (cmd == "sing-normalize")
        rc = dispatch_mode(m, [&]<class S>() { return verify_sing_report<S>(rep, opt); });
    else if (cmd == "geom-normalize")
        rc = dispatch_mode(m, [&]<class S>() { return verify_geom_report<S>(rep, opt); });
    else
        throw io::InputError("verify: unsupported report command: " + cmd);
    json out{{"command", "verify"}, {"input", opt.input}, {"verified", rc == 0}};
    emit(opt, out);
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"normal-form computations with big-denominator diagnostics"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", opt.input, "input file");
        sub->add_option("--output", opt.output, "output report path (default: stdout)");
        sub->add_option("--degree", opt.degree, "truncation degree override");
        sub->add_option("--mode", opt.mode, "rational|gaussian|real|complex");
        sub->add_option("--tol", opt.tol, "floating-mode zero tolerance");
        sub->add_option("--seed", opt.seed, "seed for randomized self-tests");
        sub->add_option("--kind", opt.kind, "geometry kind: frame|metric|conformal");
        sub->add_option("--lambda", opt.lambda, "comma-separated eigenvalues");
        sub->add_option("--window", opt.window, "fit window lo,hi");
    };
    CLI::App* vfn = app.add_subcommand("vf-normalize", "Poincare-Dulac normalization");
    CLI::App* vfd = app.add_subcommand("vf-diagnose", "resonances and denominator growth");
    CLI::App* sng = app.add_subcommand("sing-normalize", "function-singularity normal form");
    CLI::App* geo = app.add_subcommand("geom-normalize", "frame/metric/conformal normal form");
    CLI::App* maj = app.add_subcommand("majorant", "build the scalar majorant system");
    CLI::App* gev = app.add_subcommand("gevrey-fit", "fit a Gevrey order to a norm sequence");
    CLI::App* ver = app.add_subcommand("verify", "re-verify a report, or run self-tests");
    for (CLI::App* sub : {vfn, vfd, sng, geo, maj, gev, ver}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        if (vfd->parsed()) {
            json in;
            if (!opt.input.empty()) in = io::parse_file(opt.input);
            if (opt.lambda.empty() && in.is_null()) throw io::InputError("need --lambda or --input");
            return dispatch_mode(pick_mode(opt, in), [&]<class S>() { return do_vf_diagnose<S>(in, opt); });
        }
        if (vfn->parsed()) {
            json in = io::parse_file(opt.input);
            return dispatch_mode(pick_mode(opt, in), [&]<class S>() { return do_vf_normalize<S>(in, opt); });
        }
        if (sng->parsed()) {
            json in = io::parse_file(opt.input);
            return dispatch_mode(pick_mode(opt, in), [&]<class S>() { return do_sing_normalize<S>(in, opt); });
        }
        if (geo->parsed()) {
            json in = io::parse_file(opt.input);
            return dispatch_mode(pick_mode(opt, in), [&]<class S>() { return do_geom_normalize<S>(in, opt); });
        }
        if (maj->parsed()) {
            json in = io::parse_file(opt.input);
            io::Mode m = pick_mode(opt, in);
            if (m == io::Mode::rational) return do_majorant<Rational>(in, opt);
            if (m == io::Mode::real) return do_majorant<double>(in, opt);
            throw io::InputError("majorant: mode must be rational or real");
        }
        if (gev->parsed()) {
            if (opt.input.empty()) throw io::InputError("gevrey-fit: need --input CSV");
            return do_gevrey_fit(opt);
        }
        if (ver->parsed()) return do_verify(opt);
    } catch (const io::InputError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 1;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
