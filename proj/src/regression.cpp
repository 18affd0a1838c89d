#include "weyl/regression.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "weyl/errors.hpp"

namespace weyl {

LineFit fit_line(std::span<const double> x, std::span<const double> y, std::span<const double> w) {
    const auto n = static_cast<Eigen::Index>(x.size());
    if (y.size() != x.size() || (!w.empty() && w.size() != x.size()))
        throw DomainError("fit_line: mismatched input lengths");
    if (n < 2) throw FitError("fit_line: need at least two points");
    Eigen::MatrixXd a(n, 2);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double wi = w.empty() ? 1.0 : w[i];
        a(i, 0) = wi * x[i];
        a(i, 1) = wi;
        rhs[i] = wi * y[i];
    }
    const Eigen::Vector2d beta = a.colPivHouseholderQr().solve(rhs);
    LineFit fit;
    fit.slope = beta[0];
    fit.intercept = beta[1];
    fit.residual_norm = (a * beta - rhs).norm();
    return fit;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("loglog_slope: mismatched input lengths");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || y[i] == 0.0) throw DomainError("loglog_slope: needs x > 0 and y != 0");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(std::abs(y[i])));
    }
    return fit_line(lx, ly).slope;
}

} // namespace weyl
