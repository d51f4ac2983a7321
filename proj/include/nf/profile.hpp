#pragma once

#include <string>
#include <vector>

namespace nf {

/// One homological-equation denominator, tagged with where it came from.
struct DenominatorEntry {
    int component = 0;           // 0-based component j; -1 for degree-only synthetic entries
    std::vector<int> exponents;  // empty for degree-only entries
    int degree = 0;              // |Q|, or the shifted degree for synthetic profiles
    double abs_value = 0.0;
    bool resonant = false;
};

enum class DenominatorClass { unclassified, big, relative, siegel };

inline const char* to_string(DenominatorClass c) {
    switch (c) {
        case DenominatorClass::big: return "big";
        case DenominatorClass::relative: return "relative";
        case DenominatorClass::siegel: return "siegel";
        default: return "unclassified";
    }
}

/// Fitted growth law |den| >= C * i^beta over the non-resonant entries.
struct DenominatorProfile {
    int order_m = 1;
    std::vector<DenominatorEntry> entries;
    DenominatorClass kind = DenominatorClass::unclassified;
    double C = 0.0;
    double beta = 0.0;   // fitted exponent
    double alpha = 0.0;  // m - beta when relative
    double tau = 0.0;    // -beta when siegel
    bool poincare_override = false;

    std::vector<std::pair<int, int>> resonances_component_degree() const;
};

/// Fit the largest beta with |den| >= C i^beta over non-resonant entries and
/// classify against the order m. slack is the classification tolerance on beta.
DenominatorProfile classify_denominators(std::vector<DenominatorEntry> entries, int m,
                                         double slack = 0.1);

}  // namespace nf
