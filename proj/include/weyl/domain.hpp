#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace weyl {

using Point = Eigen::VectorXd;

/// Axis-aligned box [0, a_1] x ... x [0, a_d].
struct Box {
    std::vector<double> sides;
};

/// Ball of the given radius centred at the origin (disk for dim = 2).
struct Ball {
    int dim = 2;
    double radius = 1.0;
};

/// Half-space {x : x_d > 0}. Unbounded; used by the localization checks only.
struct HalfSpace {
    int dim = 2;
};

/// Simple planar polygon (either orientation).
struct Polygon {
    std::vector<Eigen::Vector2d> vertices;
};

using Shape = std::variant<Box, Ball, HalfSpace, Polygon>;

/// A bounded (or half-space) open set with the geometric data the
/// semiclassical formulas need.
class Domain {
public:
    static Domain box(std::vector<double> sides);
    static Domain square(double side) { return box({side, side}); }
    static Domain disk(double radius) { return ball(2, radius); }
    static Domain ball(int dim, double radius);
    static Domain half_space(int dim);
    static Domain polygon(std::vector<Eigen::Vector2d> vertices);

    const Shape& shape() const { return shape_; }
    int dimension() const { return dim_; }
    double volume() const { return volume_; }
    double surface() const { return surface_; }
    const std::string& id() const { return id_; }

    /// Membership in the open set; boundary points are not members.
    bool contains(const Point& x) const;

    /// Lower and upper corner of a box enclosing the domain (throws for the half-space).
    std::pair<Point, Point> bounding_box() const;

private:
    Domain(Shape shape, int dim, double volume, double surface, std::string id);

    Shape shape_;
    int dim_;
    double volume_;
    double surface_;
    std::string id_;
};

/// d(u) = inf{|x - u| : x not in Omega}; zero outside the domain.
double distance_to_complement(const Domain& domain, const Point& u);

/// Unsigned distance from u to the boundary.
double distance_to_boundary(const Domain& domain, const Point& u);

/// Gradient of distance_to_complement where it is classically differentiable.
/// Empty where the nearest boundary point is not unique (this includes the
/// centre of a ball) and on the boundary itself.
std::optional<Point> distance_gradient(const Domain& domain, const Point& u);

/// Parse `{"vertices": [[x,y], ...]}`.
Domain polygon_from_json(const std::string& text);
Domain polygon_from_file(const std::string& path);

/// Parse a CLI domain spec: `square:a`, `box:a,b[,c...]`, `disk:R`,
/// `ball:R` (3-D), `halfspace:d` or `polygon:file.json`.
Domain parse_domain_spec(const std::string& spec);

} // namespace weyl
