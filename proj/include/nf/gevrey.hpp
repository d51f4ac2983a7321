#pragma once

#include <vector>

namespace nf {

/// Result of fitting log||F^(i)|| = logC * i + alpha * log(i!) + const.
struct GevreyEstimate {
    double alpha = 0.0;
    double logC = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // rms of the fit
    int window_lo = 0;
    int window_hi = 0;
    int points_used = 0;
    bool all_zero = false;
};

/// norms[i] is the norm at degree i; zero norms inside the window are skipped.
GevreyEstimate gevrey_fit(const std::vector<double>& norms, int window_lo, int window_hi);

}  // namespace nf
