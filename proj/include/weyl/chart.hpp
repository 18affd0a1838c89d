#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "weyl/domain.hpp"

namespace weyl {

/// Local graph representation of a boundary near x0 = 0 with inner normal e_d:
/// the boundary is {x_d = f(x')} over D = {|x'| < radius}, f(0) = 0, grad f(0) = 0.
struct BoundaryChart {
    int dim = 2;
    double radius = 0.1;
    double alpha = 1.0;                             // Hoelder exponent of grad f
    std::function<double(const Point&)> f;          // on R^{d-1}
    std::function<Point(const Point&)> grad_f;

    /// f(x') = c |x'|^{1+alpha}.
    static BoundaryChart power_law(int dim, double c, double alpha, double radius);
    /// f = 0.
    static BoundaryChart flat(int dim, double radius);

    bool in_base(const Point& x_tangent) const { return x_tangent.norm() < radius; }
};

/// (x', x_d) -> (x', x_d - f(x')); Jacobian determinant 1.
Point straighten(const BoundaryChart& chart, const Point& x);
/// Inverse map (y', y_d) -> (y', y_d + f(y')).
Point unstraighten(const BoundaryChart& chart, const Point& y);

/// sup over D of |grad f|, sampled on a polar/linear grid.
double max_gradient(const BoundaryChart& chart, int samples = 2000);

/// \int_D phi2(y') (sqrt(1 + |grad f|^2) - 1) dy' for d = 2 or 3.
double surface_defect(const BoundaryChart& chart, const std::function<double(const Point&)>& phi2);

struct VolumeEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    double exact = 0.0;   // volume of the input box
};

/// Monte-Carlo volume of the image of the box [lo, hi] under `straighten`,
/// by hit-or-miss sampling of a bounding box of the image.
VolumeEstimate mc_image_volume(const BoundaryChart& chart, const Point& lo, const Point& hi,
                               std::size_t samples, std::uint64_t seed);

} // namespace weyl
