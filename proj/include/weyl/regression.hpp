#pragma once

#include <span>

namespace weyl {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_norm = 0.0;   // weighted 2-norm of the residuals
};

/// Weighted least-squares line y ~ slope * x + intercept, minimising
/// sum (w_i (y_i - slope x_i - intercept))^2. Empty weights mean w = 1.
LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 std::span<const double> w = {});

/// Slope of log|y| against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

} // namespace weyl
