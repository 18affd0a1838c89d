#pragma once

#include <cstddef>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "weyl/domain.hpp"

namespace weyl {

/// l(u) = 1/2 (1 + (d(u)^2 + l0^2)^{-1/2})^{-1} from the distance d(u) to the complement.
double scale_from_distance(double distance, double l0);

/// d l / d(distance).
double scale_derivative(double distance, double l0);

class ScaleFunction {
public:
    ScaleFunction(Domain domain, double l0);

    const Domain& domain() const { return domain_; }
    double l0() const { return l0_; }
    int dimension() const { return domain_.dimension(); }

    double operator()(const Point& u) const;

    struct Gradient {
        Point value;
        bool finite_difference = false;   // d(u) not differentiable at u
    };
    /// Chain rule through the distance gradient; symmetric differences with
    /// step 1e-6 * l0 where the distance has a kink.
    Gradient gradient(const Point& u) const;

private:
    Domain domain_;
    double l0_;
};

inline double scale(const ScaleFunction& sf, const Point& u) { return sf(u); }

/// Smooth bump c exp(-1/(1-|z|^2)) on the unit ball with \int phi^2 = 1.
class MotherBump {
public:
    explicit MotherBump(int dim);
    int dimension() const { return dim_; }
    double operator()(const Point& z) const;
    Point gradient(const Point& z) const;
    double value_at_origin() const { return c_ * std::exp(-1.0); }

private:
    int dim_;
    double c_;
};

struct JacobianFactor {
    double value;
    bool finite_difference;
};

/// |det D_u ((x-u)/l(u))| = l^-d |1 + (x-u).grad l / l|. Requires |x-u| < l(u).
JacobianFactor jacobian_factor(const ScaleFunction& sf, const Point& x, const Point& u);

/// phi_u(x) = phi((x-u)/l(u)) sqrt(J(x,u)) l(u)^{d/2}, supported in |x-u| < l(u).
class PartitionFunction {
public:
    PartitionFunction(const ScaleFunction& sf, Point center);

    const Point& center() const { return center_; }
    double scale() const { return scale_; }
    bool finite_difference() const { return fd_; }

    double operator()(const Point& x) const;
    /// Gradient in x; zero outside the support.
    Point gradient(const Point& x) const;

private:
    Point center_;
    double scale_;
    Point scale_gradient_;
    bool fd_;
    MotherBump bump_;
};

inline double partition_eval(const PartitionFunction& pf, const Point& x) { return pf(x); }

struct NormalizationResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    std::size_t finite_difference_points = 0;
};

/// \int phi_u(x)^2 l(u)^-d du by adaptive cubature over the support
/// {u : |x-u| < l(u)} (inside |u-x| < 2 l(x)). Throws InvariantViolation if
/// |value - 1| >= tol, ConvergenceError if the cubature does not settle.
NormalizationResult normalization_check(const ScaleFunction& sf, const Point& x, double tol);

struct ScaleIntegrals {
    double interior = 0.0;        // \int_{U1} l^-2, U1 = {u in Omega : dist(u, dOmega) > l(u)}
    double collar = 0.0;          // \int_{U2} l^a,  U2 = {u : dist(u, dOmega) <= l(u)}
    double collar_measure = 0.0;  // |U2|
};

/// Midpoint-rule evaluation on a grid of step l0/32 over the bounding box
/// enlarged by l0. Box and disk domains.
ScaleIntegrals scale_integrals(const ScaleFunction& sf, double a);

struct ScaleBoundReport {
    std::size_t samples = 0;
    std::size_t lower_l0 = 0;        // l < l0/4
    std::size_t upper_half = 0;      // l > 1/2
    std::size_t lower_distance = 0;  // l < min(d,1)/4
    std::size_t collar = 0;          // dist(u,dOmega) <= l but l > l0/sqrt(3)
    std::size_t collar_points = 0;   // how many samples met the boundary
    std::size_t violations() const { return lower_l0 + upper_half + lower_distance + collar; }
};

/// Check the four scale-function bounds at the given points.
ScaleBoundReport check_scale_bounds(const ScaleFunction& sf, std::span<const Point> points);

/// Uniform points in the bounding box enlarged by `margin` (fixed seed).
std::vector<Point> sample_points(const Domain& domain, std::size_t count, double margin, std::uint64_t seed);

/// Diagnostic CSV: u1..ud, l, dist, flags (U1 / U2 / ext, plus fd).
void write_scale_csv(std::ostream& out, const ScaleFunction& sf, std::span<const Point> points);

} // namespace weyl
