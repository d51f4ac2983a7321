#include "nf/json_io.hpp"

#include <cstdio>

namespace nf {
namespace io {

Mode parse_mode(const std::string& s) {
    if (s == "rational") return Mode::rational;
    if (s == "gaussian") return Mode::gaussian;
    if (s == "real") return Mode::real;
    if (s == "complex") return Mode::complex;
    throw InputError("unknown mode: " + s);
}

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::rational: return "rational";
        case Mode::gaussian: return "gaussian";
        case Mode::real: return "real";
        default: return "complex";
    }
}

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is a 1-based offset into the text; report line/column
        size_t line = 1, col = 1;
        for (size_t t = 0; t + 1 < e.byte && t < text.size(); ++t) {
            if (text[t] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                         e.what());
    }
}

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

static void append_g17(std::string& s, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    s += buf;
}

std::string report_csv(const SolveReport& report) {
    std::string s = "degree,rhs_norm,solution_norm,residual_norm,min_denominator\n";
    for (size_t t = 0; t < report.degrees.size(); ++t) {
        s += std::to_string(report.degrees[t]);
        s += ',';
        append_g17(s, report.rhs_norm[t]);
        s += ',';
        append_g17(s, report.solution_norm[t]);
        s += ',';
        append_g17(s, report.residual_norm[t]);
        s += ',';
        append_g17(s, report.min_denominator[t]);
        s += '\n';
    }
    return s;
}

}  // namespace io
}  // namespace nf
