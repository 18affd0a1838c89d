#include "weyl/chart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "weyl/errors.hpp"
#include "weyl/quadrature.hpp"

namespace weyl {
namespace {

Point tangential(const Point& x) { return x.head(x.size() - 1); }

void check_point(const BoundaryChart& chart, const Point& x) {
    if (x.size() != chart.dim) throw DomainError("chart: point dimension mismatch");
    if (!chart.in_base(tangential(x))) throw DomainError("chart: x' lies outside the chart base D");
}

} // namespace

BoundaryChart BoundaryChart::power_law(int dim, double c, double alpha, double radius) {
    if (dim < 2) throw DomainError("chart: dimension must be at least 2");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("chart: alpha must lie in (0, 1]");
    if (!(radius > 0.0)) throw DomainError("chart: radius must be positive");
    BoundaryChart chart;
    chart.dim = dim;
    chart.radius = radius;
    chart.alpha = alpha;
    chart.f = [c, alpha](const Point& xt) { return c * std::pow(xt.norm(), 1.0 + alpha); };
    chart.grad_f = [c, alpha](const Point& xt) -> Point {
        const double r = xt.norm();
        if (r == 0.0) return Point::Zero(xt.size());
        return c * (1.0 + alpha) * std::pow(r, alpha - 1.0) * xt;
    };
    return chart;
}

BoundaryChart BoundaryChart::flat(int dim, double radius) {
    return power_law(dim, 0.0, 1.0, radius);
}

Point straighten(const BoundaryChart& chart, const Point& x) {
    check_point(chart, x);
    Point y = x;
    y[chart.dim - 1] -= chart.f(tangential(x));
    return y;
}

Point unstraighten(const BoundaryChart& chart, const Point& y) {
    check_point(chart, y);
    Point x = y;
    x[chart.dim - 1] += chart.f(tangential(y));
    return x;
}

double max_gradient(const BoundaryChart& chart, int samples) {
    double best = 0.0;
    const int m = chart.dim - 1;
    for (int i = 0; i < samples; ++i) {
        const double r = chart.radius * (i + 0.5) / samples;
        if (m == 1) {
            for (double s : {-1.0, 1.0}) best = std::max(best, chart.grad_f(Point::Constant(1, s * r)).norm());
        } else {
            for (int k = 0; k < 16; ++k) {
                Point xt = Point::Zero(m);
                const double th = 2.0 * std::numbers::pi * k / 16.0;
                xt[0] = r * std::cos(th);
                xt[1] = r * std::sin(th);
                best = std::max(best, chart.grad_f(xt).norm());
            }
        }
    }
    return best;
}

double surface_defect(const BoundaryChart& chart, const std::function<double(const Point&)>& phi2) {
    const auto excess = [&](const Point& yt) {
        const Point g = chart.grad_f(yt);
        const double g2 = g.squaredNorm();
        // sqrt(1+g2) - 1 without cancellation
        return phi2(yt) * g2 / (std::sqrt(1.0 + g2) + 1.0);
    };
    const QuadOptions opts{1e-16, 1e-12, 2000};
    const double l = chart.radius;
    if (chart.dim == 2) {
        return integrate([&](double s) { return excess(Point::Constant(1, s)); }, -l, l, opts).value;
    }
    if (chart.dim == 3) {
        const auto ring = [&](double r) {
            return r * integrate(
                           [&](double th) {
                               Point yt(2);
                               yt << r * std::cos(th), r * std::sin(th);
                               return excess(yt);
                           },
                           0.0, 2.0 * std::numbers::pi, opts)
                           .value;
        };
        return integrate(ring, 0.0, l, opts).value;
    }
    throw DomainError("surface_defect: implemented for d = 2 and d = 3");
}

VolumeEstimate mc_image_volume(const BoundaryChart& chart, const Point& lo, const Point& hi,
                               std::size_t samples, std::uint64_t seed) {
    const int d = chart.dim;
    if (lo.size() != d || hi.size() != d || !(lo.array() < hi.array()).all())
        throw DomainError("mc_image_volume: invalid box");
    if (samples == 0) throw DomainError("mc_image_volume: need samples");
    // every corner of the tangential box must sit inside D
    const int m = d - 1;
    for (int mask = 0; mask < (1 << m); ++mask) {
        Point corner(m);
        for (int k = 0; k < m; ++k) corner[k] = (mask & (1 << k)) ? hi[k] : lo[k];
        if (!chart.in_base(corner)) throw DomainError("mc_image_volume: box leaves the chart base");
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // range of f over the tangential box, sampled then padded
    double f_min = std::numeric_limits<double>::infinity();
    double f_max = -f_min;
    for (int i = 0; i < 4096; ++i) {
        Point xt(m);
        for (int k = 0; k < m; ++k) xt[k] = lo[k] + (hi[k] - lo[k]) * unit(rng);
        const double v = chart.f(xt);
        f_min = std::min(f_min, v);
        f_max = std::max(f_max, v);
    }
    const double pad = 0.05 * (f_max - f_min) + 1e-12;
    Point box_lo = lo, box_hi = hi;
    box_lo[d - 1] = lo[d - 1] - f_max - pad;
    box_hi[d - 1] = hi[d - 1] - f_min + pad;
    const double box_volume = (box_hi - box_lo).prod();

    std::size_t hits = 0;
    Point y(d);
    for (std::size_t i = 0; i < samples; ++i) {
        for (int k = 0; k < d; ++k) y[k] = box_lo[k] + (box_hi[k] - box_lo[k]) * unit(rng);
        const Point x = unstraighten(chart, y);
        if ((x.array() >= lo.array()).all() && (x.array() <= hi.array()).all()) ++hits;
    }
    const double p = static_cast<double>(hits) / samples;
    VolumeEstimate out;
    out.estimate = box_volume * p;
    out.std_error = box_volume * std::sqrt(p * (1.0 - p) / samples);
    out.exact = (hi - lo).prod();
    return out;
}

} // namespace weyl
