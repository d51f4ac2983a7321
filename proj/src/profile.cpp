#include "nf/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace nf {

std::vector<std::pair<int, int>> DenominatorProfile::resonances_component_degree() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& e : entries)
        if (e.resonant) out.emplace_back(e.component, e.degree);
    return out;
}

DenominatorProfile classify_denominators(std::vector<DenominatorEntry> entries, int m, double slack) {
    DenominatorProfile p;
    p.order_m = m;
    p.entries = std::move(entries);

    // lower envelope per degree over non-resonant entries
    std::map<int, double> mu;
    for (const auto& e : p.entries) {
        if (e.resonant || e.abs_value <= 0.0) continue;
        auto it = mu.find(e.degree);
        if (it == mu.end())
            mu[e.degree] = e.abs_value;
        else
            it->second = std::min(it->second, e.abs_value);
    }
    if (mu.empty()) {
        p.kind = DenominatorClass::unclassified;
        return p;
    }

    if (mu.size() == 1) {
        p.beta = 0.0;
    } else {
        // least squares on log mu_i = log C + beta log i
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (const auto& [deg, v] : mu) {
            if (deg < 1) continue;
            double x = std::log(static_cast<double>(deg));
            double y = std::log(v);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
        double det = n * sxx - sx * sx;
        p.beta = det != 0.0 ? (n * sxy - sx * sy) / det : 0.0;
    }

    // envelope constant for the fitted exponent
    double c = std::numeric_limits<double>::infinity();
    for (const auto& [deg, v] : mu)
        if (deg >= 1) c = std::min(c, v / std::pow(static_cast<double>(deg), p.beta));
    p.C = c;

    if (p.beta >= m - slack) {
        p.kind = DenominatorClass::big;
        p.alpha = std::max(0.0, m - p.beta);
    } else if (p.beta >= -slack) {
        p.kind = DenominatorClass::relative;
        p.alpha = m - p.beta;
    } else {
        p.kind = DenominatorClass::siegel;
        p.tau = -p.beta;
    }
    return p;
}

}  // namespace nf
