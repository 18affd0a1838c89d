#include "weyl/localization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "weyl/constants.hpp"
#include "weyl/errors.hpp"
#include "weyl/parallel.hpp"
#include "weyl/quadrature.hpp"

namespace weyl {
namespace {

constexpr int kCubatureOrder = 4;
constexpr int kMaxDepth = 10;

// Tensor Gauss-Legendre rule on the cube [lo, lo + side]^d.
class TensorRule {
public:
    explicit TensorRule(int dim) : dim_(dim), rule_(gauss_legendre(kCubatureOrder)) {}

    template <class F>
    double apply(const F& f, const Point& lo, double side, std::size_t& evals) const {
        std::vector<int> idx(dim_, 0);
        Point u(dim_);
        double sum = 0.0;
        const double half = 0.5 * side;
        while (true) {
            double w = 1.0;
            for (int k = 0; k < dim_; ++k) {
                u[k] = lo[k] + half * (rule_.nodes[idx[k]] + 1.0);
                w *= rule_.weights[idx[k]];
            }
            sum += w * f(u);
            ++evals;
            int k = 0;
            while (k < dim_ && ++idx[k] == kCubatureOrder) idx[k++] = 0;
            if (k == dim_) break;
        }
        return sum * std::pow(half, dim_);
    }

private:
    int dim_;
    GaussRule rule_;
};

struct CubatureState {
    double value = 0.0;
    double error = 0.0;
    std::size_t evals = 0;
    bool exhausted = false;
};

template <class F>
void refine_cell(const F& f, const TensorRule& rule, const Point& lo, double side, double coarse,
                 double tol_per_volume, int depth, CubatureState& st) {
    const int d = static_cast<int>(lo.size());
    const double child = 0.5 * side;
    const int n_children = 1 << d;
    std::vector<double> values(n_children);
    std::vector<Point> corners(n_children, lo);
    double fine = 0.0;
    for (int c = 0; c < n_children; ++c) {
        for (int k = 0; k < d; ++k)
            if (c & (1 << k)) corners[c][k] += child;
        values[c] = rule.apply(f, corners[c], child, st.evals);
        fine += values[c];
    }
    const double diff = std::abs(fine - coarse);
    const double allowed = tol_per_volume * std::pow(side, d);
    if (diff <= allowed || depth >= kMaxDepth) {
        if (depth >= kMaxDepth && diff > allowed) st.exhausted = true;
        st.value += fine;
        st.error += diff;
        return;
    }
    for (int c = 0; c < n_children; ++c)
        refine_cell(f, rule, corners[c], child, values[c], tol_per_volume, depth + 1, st);
}

std::pair<Point, Point> sampling_box(const Domain& domain, double margin) {
    const int d = domain.dimension();
    if (std::holds_alternative<HalfSpace>(domain.shape())) {
        Point lo = Point::Constant(d, -1.0), hi = Point::Constant(d, 1.0);
        lo[d - 1] = -margin;
        hi[d - 1] = 2.0;
        return {lo, hi};
    }
    auto [lo, hi] = domain.bounding_box();
    return {(lo.array() - margin).matrix(), (hi.array() + margin).matrix()};
}

} // namespace

double scale_from_distance(double distance, double l0) {
    return 0.5 / (1.0 + 1.0 / std::sqrt(distance * distance + l0 * l0));
}

double scale_derivative(double distance, double l0) {
    const double q = std::sqrt(distance * distance + l0 * l0);
    // d/dd [1/2 (1 + 1/q)^-1] = 1/2 d / (q (q + 1)^2)
    return 0.5 * distance / (q * (q + 1.0) * (q + 1.0));
}

ScaleFunction::ScaleFunction(Domain domain, double l0) : domain_(std::move(domain)), l0_(l0) {
    if (!(l0 > 0.0 && l0 <= 1.0)) throw DomainError("scale function: l0 must lie in (0, 1]");
}

double ScaleFunction::operator()(const Point& u) const {
    return scale_from_distance(distance_to_complement(domain_, u), l0_);
}

ScaleFunction::Gradient ScaleFunction::gradient(const Point& u) const {
    if (auto g = distance_gradient(domain_, u)) {
        const double dist = distance_to_complement(domain_, u);
        return {scale_derivative(dist, l0_) * *g, false};
    }
    const double step = 1e-6 * l0_;
    Point grad(u.size());
    Point probe = u;
    for (Eigen::Index k = 0; k < u.size(); ++k) {
        probe[k] = u[k] + step;
        const double up = (*this)(probe);
        probe[k] = u[k] - step;
        const double down = (*this)(probe);
        probe[k] = u[k];
        grad[k] = (up - down) / (2.0 * step);
    }
    return {grad, true};
}

MotherBump::MotherBump(int dim) : dim_(dim) {
    if (dim < 1) throw DomainError("mother bump: dimension must be at least 1");
    const double omega = constants(dim).omega_d;
    const auto radial = integrate(
        [dim](double r) {
            if (r >= 1.0) return 0.0;
            return std::pow(r, dim - 1) * std::exp(-2.0 / (1.0 - r * r));
        },
        0.0, 1.0, {1e-16, 1e-14, 2000});
    c_ = 1.0 / std::sqrt(dim * omega * radial.value);
}

double MotherBump::operator()(const Point& z) const {
    const double r2 = z.squaredNorm();
    if (r2 >= 1.0) return 0.0;
    return c_ * std::exp(-1.0 / (1.0 - r2));
}

Point MotherBump::gradient(const Point& z) const {
    const double r2 = z.squaredNorm();
    if (r2 >= 1.0) return Point::Zero(z.size());
    const double s = 1.0 - r2;
    return (*this)(z) * (-2.0 / (s * s)) * z;
}

JacobianFactor jacobian_factor(const ScaleFunction& sf, const Point& x, const Point& u) {
    const double l = sf(u);
    const Point offset = x - u;
    if (!(offset.norm() < l)) throw DomainError("jacobian_factor: x must lie in the ball |x-u| < l(u)");
    const auto g = sf.gradient(u);
    const double value = std::pow(l, -sf.dimension()) * std::abs(1.0 + offset.dot(g.value) / l);
    return {value, g.finite_difference};
}

PartitionFunction::PartitionFunction(const ScaleFunction& sf, Point center)
    : center_(std::move(center)), scale_(sf(center_)), bump_(sf.dimension()) {
    const auto g = sf.gradient(center_);
    scale_gradient_ = g.value;
    fd_ = g.finite_difference;
}

double PartitionFunction::operator()(const Point& x) const {
    const Point offset = x - center_;
    if (!(offset.norm() < scale_)) return 0.0;
    const int d = static_cast<int>(x.size());
    const double jac = std::pow(scale_, -d) * std::abs(1.0 + offset.dot(scale_gradient_) / scale_);
    return bump_(offset / scale_) * std::sqrt(jac) * std::pow(scale_, 0.5 * d);
}

Point PartitionFunction::gradient(const Point& x) const {
    const Point offset = x - center_;
    const int d = static_cast<int>(x.size());
    if (!(offset.norm() < scale_)) return Point::Zero(d);
    const double linear = 1.0 + offset.dot(scale_gradient_) / scale_;
    const double sign = linear >= 0.0 ? 1.0 : -1.0;
    // J l^d = |linear|
    const double root = std::sqrt(std::abs(linear));
    const Point z = offset / scale_;
    const Point d_bump = bump_.gradient(z) / scale_;
    const Point d_root = sign * scale_gradient_ / (scale_ * 2.0 * root);
    return d_bump * root + bump_(z) * d_root;
}

NormalizationResult normalization_check(const ScaleFunction& sf, const Point& x, double tol) {
    if (!(tol > 0.0)) throw DomainError("normalization_check: tol must be positive");
    const int d = sf.dimension();
    if (x.size() != d) throw DomainError("normalization_check: point dimension mismatch");
    const MotherBump bump(d);
    std::size_t fd_points = 0;
    const auto integrand = [&](const Point& u) {
        const double l = sf(u);
        const Point offset = x - u;
        const double r2 = offset.squaredNorm();
        if (r2 >= l * l) return 0.0;
        const auto g = sf.gradient(u);
        if (g.finite_difference) ++fd_points;
        const double jac = std::pow(l, -d) * std::abs(1.0 + offset.dot(g.value) / l);
        const double phi = bump(offset / l);
        return phi * phi * jac;
    };

    const double lx = sf(x);
    const double side = 4.0 * lx;
    const Point cube_lo = (x.array() - 2.0 * lx).matrix();
    const double seed_step = std::max(sf.l0() / 8.0, lx / 12.0);
    const int per_axis = static_cast<int>(std::ceil(side / seed_step));
    const double cell = side / per_axis;
    const double tol_per_volume = 0.05 * tol / std::pow(side, d);

    const TensorRule rule(d);
    CubatureState st;
    std::vector<int> idx(d, 0);
    while (true) {
        Point lo = cube_lo;
        for (int k = 0; k < d; ++k) lo[k] += idx[k] * cell;
        const double coarse = rule.apply(integrand, lo, cell, st.evals);
        refine_cell(integrand, rule, lo, cell, coarse, tol_per_volume, 1, st);
        int k = 0;
        while (k < d && ++idx[k] == per_axis) idx[k++] = 0;
        if (k == d) break;
    }

    NormalizationResult out{st.value, st.error, st.evals, fd_points};
    if (st.exhausted && st.error > 0.5 * tol)
        throw ConvergenceError("normalization_check: cubature did not converge", st.value, st.error);
    if (!(std::abs(st.value - 1.0) < tol)) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "normalization integral %.12g deviates from 1 by more than %.3g", st.value,
                      tol);
        throw InvariantViolation(buf);
    }
    return out;
}

ScaleIntegrals scale_integrals(const ScaleFunction& sf, double a) {
    const Domain& domain = sf.domain();
    if (!std::holds_alternative<Box>(domain.shape()) && !std::holds_alternative<Ball>(domain.shape()))
        throw DomainError("scale_integrals: box or ball domains only");
    const int d = domain.dimension();
    const double l0 = sf.l0();
    auto [lo, hi] = domain.bounding_box();
    lo.array() -= l0;
    hi.array() += l0;
    const double target = l0 / 32.0;
    std::vector<int> counts(d);
    Point step(d);
    for (int k = 0; k < d; ++k) {
        counts[k] = static_cast<int>(std::ceil((hi[k] - lo[k]) / target));
        step[k] = (hi[k] - lo[k]) / counts[k];
    }
    const double cell_volume = step.prod();

    // one slab per index of the first axis, summed in order afterwards
    std::vector<ScaleIntegrals> slabs(counts[0]);
    parallel_for(static_cast<std::size_t>(counts[0]), [&](std::size_t i0) {
        ScaleIntegrals& acc = slabs[i0];
        CompensatedAccumulator inner, coll, meas;
        std::vector<int> idx(d, 0);
        idx[0] = static_cast<int>(i0);
        Point u(d);
        while (true) {
            for (int k = 0; k < d; ++k) u[k] = lo[k] + (idx[k] + 0.5) * step[k];
            const double l = sf(u);
            const double to_boundary = distance_to_boundary(domain, u);
            if (to_boundary <= l) {
                coll.add(std::pow(l, a) * cell_volume);
                meas.add(cell_volume);
            } else if (domain.contains(u)) {
                inner.add(cell_volume / (l * l));
            }
            int k = 1;
            while (k < d && ++idx[k] == counts[k]) idx[k++] = 0;
            if (k == d) break;
        }
        acc.interior = inner.value();
        acc.collar = coll.value();
        acc.collar_measure = meas.value();
    });
    ScaleIntegrals out;
    CompensatedAccumulator inner, coll, meas;
    for (const auto& s : slabs) {
        inner.add(s.interior);
        coll.add(s.collar);
        meas.add(s.collar_measure);
    }
    out.interior = inner.value();
    out.collar = coll.value();
    out.collar_measure = meas.value();
    return out;
}

ScaleBoundReport check_scale_bounds(const ScaleFunction& sf, std::span<const Point> points) {
    constexpr double eps = 1e-12;
    const double l0 = sf.l0();
    ScaleBoundReport r;
    for (const Point& u : points) {
        ++r.samples;
        const double dist = distance_to_complement(sf.domain(), u);
        const double l = scale_from_distance(dist, l0);
        if (l < l0 / 4.0 * (1.0 - eps)) ++r.lower_l0;
        if (l > 0.5) ++r.upper_half;
        if (l < 0.25 * std::min(dist, 1.0) * (1.0 - eps)) ++r.lower_distance;
        if (distance_to_boundary(sf.domain(), u) <= l) {
            ++r.collar_points;
            if (l > l0 / std::sqrt(3.0) * (1.0 + eps)) ++r.collar;
        }
    }
    return r;
}

std::vector<Point> sample_points(const Domain& domain, std::size_t count, double margin, std::uint64_t seed) {
    const auto [lo, hi] = sampling_box(domain, margin);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Point> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Point p(lo.size());
        for (Eigen::Index k = 0; k < lo.size(); ++k) p[k] = lo[k] + (hi[k] - lo[k]) * unit(rng);
        pts.push_back(std::move(p));
    }
    return pts;
}

void write_scale_csv(std::ostream& out, const ScaleFunction& sf, std::span<const Point> points) {
    const int d = sf.dimension();
    for (int k = 0; k < d; ++k) out << "u" << (k + 1) << ',';
    out << "l,dist,flags\n";
    char buf[64];
    for (const Point& u : points) {
        for (int k = 0; k < d; ++k) {
            std::snprintf(buf, sizeof buf, "%.17g,", u[k]);
            out << buf;
        }
        const double l = sf(u);
        const double dist = distance_to_complement(sf.domain(), u);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,", l, dist);
        out << buf;
        std::string flags = distance_to_boundary(sf.domain(), u) <= l ? "U2"
                            : sf.domain().contains(u)                  ? "U1"
                                                                       : "ext";
        if (sf.gradient(u).finite_difference) flags += "|fd";
        out << flags << '\n';
    }
}

} // namespace weyl
