#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nf/engine.hpp"
#include "nf/matrix_series.hpp"
#include "nf/vector_series.hpp"

namespace nf {
namespace io {

using nlohmann::json;

enum class Mode { rational, gaussian, real, complex };

Mode parse_mode(const std::string& s);
const char* mode_name(Mode m);

/// Thrown on malformed input files; carries a human-readable location.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json parse_file(const std::string& path);
void write_file(const std::string& path, const json& j);

inline Rational rational_from_string(const std::string& s) {
    Rational v;
    if (v.set_str(s, 10) != 0) throw InputError("bad rational literal: " + s);
    v.canonicalize();
    return v;
}

/// Per-mode coefficient encoding inside a term array.
template <class S>
struct json_codec;

template <>
struct json_codec<Rational> {
    static constexpr Mode mode = Mode::rational;
    static void append(json& term, const Rational& v) {
        term.push_back(v.get_num().get_str());
        term.push_back(v.get_den().get_str());
    }
    static Rational read(const json& term, size_t pos) {
        Rational v(mpz_class(term.at(pos).get<std::string>()),
                   mpz_class(term.at(pos + 1).get<std::string>()));
        v.canonicalize();
        return v;
    }
    static constexpr size_t width = 2;
    static json scalar(const Rational& v) { return v.get_str(); }
    static Rational scalar_read(const json& j) { return rational_from_string(j.get<std::string>()); }
};

template <>
struct json_codec<GaussianRational> {
    static constexpr Mode mode = Mode::gaussian;
    static void append(json& term, const GaussianRational& v) {
        term.push_back(v.re.get_num().get_str());
        term.push_back(v.re.get_den().get_str());
        term.push_back(v.im.get_num().get_str());
        term.push_back(v.im.get_den().get_str());
    }
    static GaussianRational read(const json& term, size_t pos) {
        Rational re(mpz_class(term.at(pos).get<std::string>()),
                    mpz_class(term.at(pos + 1).get<std::string>()));
        Rational im(mpz_class(term.at(pos + 2).get<std::string>()),
                    mpz_class(term.at(pos + 3).get<std::string>()));
        re.canonicalize();
        im.canonicalize();
        return {re, im};
    }
    static constexpr size_t width = 4;
    static json scalar(const GaussianRational& v) { return json::array({v.re.get_str(), v.im.get_str()}); }
    static GaussianRational scalar_read(const json& j) {
        if (j.is_string()) return {rational_from_string(j.get<std::string>())};
        return {rational_from_string(j.at(0).get<std::string>()),
                rational_from_string(j.at(1).get<std::string>())};
    }
};

template <>
struct json_codec<double> {
    static constexpr Mode mode = Mode::real;
    static void append(json& term, double v) { term.push_back(v); }
    static double read(const json& term, size_t pos) { return term.at(pos).get<double>(); }
    static constexpr size_t width = 1;
    static json scalar(double v) { return v; }
    static double scalar_read(const json& j) { return j.get<double>(); }
};

template <>
struct json_codec<Complex> {
    static constexpr Mode mode = Mode::complex;
    static void append(json& term, const Complex& v) {
        term.push_back(v.real());
        term.push_back(v.imag());
    }
    static Complex read(const json& term, size_t pos) {
        return {term.at(pos).get<double>(), term.at(pos + 1).get<double>()};
    }
    static constexpr size_t width = 2;
    static json scalar(const Complex& v) { return json::array({v.real(), v.imag()}); }
    static Complex scalar_read(const json& j) {
        if (j.is_number()) return {j.get<double>(), 0.0};
        return {j.at(0).get<double>(), j.at(1).get<double>()};
    }
};

/// {n, d, mode, terms: [[exponents...], coefficient fields...]}; iteration is
/// grlex, so serialization is canonical and round-trips bit-exactly in the
/// exact modes.
template <class S>
json series_to_json(const GradedSeries<S>& f) {
    json terms = json::array();
    f.for_each([&](const MultiIndex& a, const S& c) {
        json t = json::array();
        t.push_back(a.exponents());
        json_codec<S>::append(t, c);
        terms.push_back(std::move(t));
    });
    return json{{"n", f.vars()},
                {"d", f.truncation()},
                {"mode", mode_name(json_codec<S>::mode)},
                {"terms", std::move(terms)}};
}

template <class S>
GradedSeries<S> series_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("d"))
        throw InputError("series: expected object with n, d, terms");
    if (j.contains("mode") && parse_mode(j.at("mode").get<std::string>()) != json_codec<S>::mode)
        throw InputError("series: mode does not match the run mode");
    GradedSeries<S> f(j.at("n").get<int>(), j.at("d").get<int>());
    if (j.contains("terms"))
        for (const json& t : j.at("terms")) {
            MultiIndex a(t.at(0).get<std::vector<int>>());
            f.add_coeff(a, json_codec<S>::read(t, 1));
        }
    return f;
}

template <class S>
json vector_series_to_json(const VectorSeries<S>& F) {
    json comps = json::array();
    for (const auto& c : F.comp) comps.push_back(series_to_json(c));
    return json{{"offsets", F.offsets}, {"components", std::move(comps)}};
}

template <class S>
VectorSeries<S> vector_series_from_json(const json& j) {
    const json& comps = j.is_array() ? j : j.at("components");
    VectorSeries<S> F;
    for (const json& c : comps) F.comp.push_back(series_from_json<S>(c));
    if (j.is_object() && j.contains("offsets"))
        F.offsets = j.at("offsets").get<std::vector<int>>();
    else
        F.offsets.assign(F.comp.size(), 0);
    return F;
}

template <class S>
json matrix_series_to_json(const MatrixSeries<S>& M) {
    json rows = json::array();
    for (int i = 0; i < M.dim; ++i) {
        json row = json::array();
        for (int j = 0; j < M.dim; ++j) row.push_back(series_to_json(M.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class S>
MatrixSeries<S> matrix_series_from_json(const json& j, int n, int trunc) {
    MatrixSeries<S> M(n, n, trunc);
    if (static_cast<int>(j.size()) != n) throw InputError("matrix: wrong row count");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(j.at(i).size()) != n) throw InputError("matrix: wrong column count");
        for (int c = 0; c < n; ++c) M.at(i, c) = series_from_json<S>(j.at(i).at(c)).truncated(trunc);
    }
    return M;
}

/// CSV with the fixed header degree,rhs_norm,solution_norm,residual_norm,min_denominator.
std::string report_csv(const SolveReport& report);

}  // namespace io
}  // namespace nf
