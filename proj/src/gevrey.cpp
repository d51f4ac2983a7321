#include "nf/gevrey.hpp"

#include <cmath>
#include <stdexcept>

namespace nf {

GevreyEstimate gevrey_fit(const std::vector<double>& norms, int window_lo, int window_hi) {
    GevreyEstimate est;
    est.window_lo = window_lo;
    est.window_hi = window_hi;
    if (window_lo < 0 || window_hi >= static_cast<int>(norms.size()) || window_hi - window_lo + 1 < 5)
        throw std::invalid_argument("gevrey_fit: window must lie in range and hold >= 5 points");

    // 3-parameter linear least squares with regressors (i, log i!, 1)
    double a11 = 0, a12 = 0, a13 = 0, a22 = 0, a23 = 0, a33 = 0;
    double b1 = 0, b2 = 0, b3 = 0;
    int n = 0;
    for (int i = window_lo; i <= window_hi; ++i) {
        if (norms[i] <= 0.0) continue;  // skip zeros
        double x1 = static_cast<double>(i);
        double x2 = std::lgamma(static_cast<double>(i) + 1.0);
        double y = std::log(norms[i]);
        a11 += x1 * x1;
        a12 += x1 * x2;
        a13 += x1;
        a22 += x2 * x2;
        a23 += x2;
        a33 += 1.0;
        b1 += x1 * y;
        b2 += x2 * y;
        b3 += y;
        ++n;
    }
    est.points_used = n;
    if (n == 0) {
        est.all_zero = true;
        return est;
    }
    if (n < 3) {
        est.all_zero = true;  // underdetermined; flag rather than fit
        return est;
    }

    double det = a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13) +
                 a13 * (a12 * a23 - a22 * a13);
    if (std::fabs(det) < 1e-12) {
        est.all_zero = true;
        return est;
    }
    auto det3 = [&](double c1, double c2, double c3, int col) {
        double m[3][3] = {{a11, a12, a13}, {a12, a22, a23}, {a13, a23, a33}};
        m[0][col] = c1;
        m[1][col] = c2;
        m[2][col] = c3;
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    est.logC = det3(b1, b2, b3, 0) / det;
    est.alpha = det3(b1, b2, b3, 1) / det;
    est.intercept = det3(b1, b2, b3, 2) / det;

    double ss = 0.0;
    for (int i = window_lo; i <= window_hi; ++i) {
        if (norms[i] <= 0.0) continue;
        double pred = est.logC * i + est.alpha * std::lgamma(static_cast<double>(i) + 1.0) +
                      est.intercept;
        double r = std::log(norms[i]) - pred;
        ss += r * r;
    }
    est.residual = std::sqrt(ss / n);
    return est;
}

}  // namespace nf
