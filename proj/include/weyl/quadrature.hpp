#pragma once

#include <functional>
#include <span>
#include <vector>

namespace weyl {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;   // estimated absolute error
    int evaluations = 0;
    bool converged = true;
};

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_subdivisions = 2000;
};

/// Globally adaptive Gauss-Kronrod (G10/K21) quadrature on a finite interval.
/// Never throws on non-convergence; inspect `converged`.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opts = {});

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> terms);

class CompensatedAccumulator {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

} // namespace weyl
