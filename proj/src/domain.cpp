#include "weyl/domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "weyl/constants.hpp"
#include "weyl/errors.hpp"

namespace weyl {
namespace {

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

double polygon_signed_area(const std::vector<Eigen::Vector2d>& v) {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& p = v[i];
        const auto& q = v[(i + 1) % v.size()];
        a += p.x() * q.y() - q.x() * p.y();
    }
    return 0.5 * a;
}

Eigen::Vector2d closest_on_segment(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                                   const Eigen::Vector2d& b) {
    const Eigen::Vector2d ab = b - a;
    const double len2 = ab.squaredNorm();
    double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return a + t * ab;
}

struct EdgeHit {
    double distance;
    Eigen::Vector2d point;
    bool tie;
};

EdgeHit nearest_edge_point(const Polygon& poly, const Eigen::Vector2d& p) {
    const auto& v = poly.vertices;
    EdgeHit best{std::numeric_limits<double>::infinity(), p, false};
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Eigen::Vector2d c = closest_on_segment(p, v[i], v[(i + 1) % v.size()]);
        const double dist = (p - c).norm();
        const double tol = 1e-12 * std::max(1.0, dist);
        if (dist < best.distance - tol) {
            best = {dist, c, false};
        } else if (std::abs(dist - best.distance) <= tol && (c - best.point).norm() > 1e-10) {
            best.tie = true;
        }
    }
    return best;
}

bool point_in_polygon(const Polygon& poly, const Eigen::Vector2d& p) {
    const auto& v = poly.vertices;
    bool inside = false;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        if ((v[i].y() > p.y()) != (v[j].y() > p.y())) {
            const double x_cross =
                v[j].x() + (p.y() - v[j].y()) * (v[i].x() - v[j].x()) / (v[i].y() - v[j].y());
            if (p.x() < x_cross) inside = !inside;
        }
    }
    return inside;
}

double parse_positive(const std::string& s, const std::string& spec) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw DomainError("invalid number '" + s + "' in domain spec '" + spec + "'");
    }
    if (used != s.size() || !(v > 0.0) || !std::isfinite(v))
        throw DomainError("expected a positive number, got '" + s + "' in '" + spec + "'");
    return v;
}

} // namespace

Domain::Domain(Shape shape, int dim, double volume, double surface, std::string id)
    : shape_(std::move(shape)), dim_(dim), volume_(volume), surface_(surface), id_(std::move(id)) {}

Domain Domain::box(std::vector<double> sides) {
    if (sides.empty()) throw DomainError("box: needs at least one side");
    for (double a : sides)
        if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("box: sides must be positive");
    const int d = static_cast<int>(sides.size());
    double volume = 1.0;
    for (double a : sides) volume *= a;
    double surface = 0.0;
    for (int i = 0; i < d; ++i) {
        double face = 1.0;
        for (int j = 0; j < d; ++j)
            if (j != i) face *= sides[j];
        surface += 2.0 * face;
    }
    std::string id;
    if (d == 2 && sides[0] == sides[1]) {
        id = "square:" + format_number(sides[0]);
    } else {
        id = "box:";
        for (int i = 0; i < d; ++i) id += (i ? "," : "") + format_number(sides[i]);
    }
    return Domain(Box{std::move(sides)}, d, volume, surface, std::move(id));
}

Domain Domain::ball(int dim, double radius) {
    if (dim < 1) throw DomainError("ball: dimension must be at least 1");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("ball: radius must be positive");
    const double omega = constants(dim).omega_d;
    const double volume = omega * std::pow(radius, dim);
    const double surface = dim * omega * std::pow(radius, dim - 1);
    const std::string id = (dim == 2 ? "disk:" : "ball:") + format_number(radius);
    return Domain(Ball{dim, radius}, dim, volume, surface, id);
}

Domain Domain::half_space(int dim) {
    if (dim < 1) throw DomainError("half_space: dimension must be at least 1");
    const double inf = std::numeric_limits<double>::infinity();
    return Domain(HalfSpace{dim}, dim, inf, inf, "halfspace:" + std::to_string(dim));
}

Domain Domain::polygon(std::vector<Eigen::Vector2d> vertices) {
    if (vertices.size() < 3) throw DomainError("polygon: needs at least three vertices");
    for (const auto& v : vertices)
        if (!v.allFinite()) throw DomainError("polygon: vertex coordinates must be finite");
    const double area = std::abs(polygon_signed_area(vertices));
    double perimeter = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        perimeter += (vertices[(i + 1) % vertices.size()] - vertices[i]).norm();
    if (!(area > 1e-14 * perimeter * perimeter)) throw DomainError("polygon: zero area");
    const std::string id = "polygon:" + std::to_string(vertices.size());
    return Domain(Polygon{std::move(vertices)}, 2, area, perimeter, id);
}

bool Domain::contains(const Point& x) const {
    if (x.size() != dim_) throw DomainError("point dimension does not match domain");
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Box>) {
                for (int i = 0; i < dim_; ++i)
                    if (!(x[i] > 0.0 && x[i] < s.sides[i])) return false;
                return true;
            } else if constexpr (std::is_same_v<T, Ball>) {
                return x.norm() < s.radius;
            } else if constexpr (std::is_same_v<T, HalfSpace>) {
                return x[dim_ - 1] > 0.0;
            } else {
                const Eigen::Vector2d p(x[0], x[1]);
                if (nearest_edge_point(s, p).distance <= 1e-13) return false;
                return point_in_polygon(s, p);
            }
        },
        shape_);
}

std::pair<Point, Point> Domain::bounding_box() const {
    return std::visit(
        [&](const auto& s) -> std::pair<Point, Point> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Box>) {
                return {Point::Zero(dim_), Eigen::Map<const Point>(s.sides.data(), dim_)};
            } else if constexpr (std::is_same_v<T, Ball>) {
                return {Point::Constant(dim_, -s.radius), Point::Constant(dim_, s.radius)};
            } else if constexpr (std::is_same_v<T, HalfSpace>) {
                throw DomainError("half-space has no bounding box");
            } else {
                Eigen::Vector2d lo = s.vertices.front(), hi = s.vertices.front();
                for (const auto& v : s.vertices) {
                    lo = lo.cwiseMin(v);
                    hi = hi.cwiseMax(v);
                }
                return {Point(lo), Point(hi)};
            }
        },
        shape_);
}

double distance_to_complement(const Domain& domain, const Point& u) {
    if (!domain.contains(u)) return 0.0;
    return distance_to_boundary(domain, u);
}

double distance_to_boundary(const Domain& domain, const Point& u) {
    const int d = domain.dimension();
    if (u.size() != d) throw DomainError("point dimension does not match domain");
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Box>) {
                bool inside = true;
                double inner = std::numeric_limits<double>::infinity();
                double outer2 = 0.0;
                for (int i = 0; i < d; ++i) {
                    const double lo = u[i], hi = s.sides[i] - u[i];
                    if (lo <= 0.0 || hi <= 0.0) inside = false;
                    inner = std::min({inner, lo, hi});
                    const double gap = std::max({0.0, -lo, -hi});
                    outer2 += gap * gap;
                }
                if (inside) return inner;
                // on a face or outside
                return std::sqrt(outer2);
            } else if constexpr (std::is_same_v<T, Ball>) {
                return std::abs(s.radius - u.norm());
            } else if constexpr (std::is_same_v<T, HalfSpace>) {
                return std::abs(u[d - 1]);
            } else {
                return nearest_edge_point(s, Eigen::Vector2d(u[0], u[1])).distance;
            }
        },
        domain.shape());
}

std::optional<Point> distance_gradient(const Domain& domain, const Point& u) {
    const int d = domain.dimension();
    if (!domain.contains(u)) {
        if (distance_to_boundary(domain, u) > 0.0) return Point::Zero(d);
        return std::nullopt;
    }
    return std::visit(
        [&](const auto& s) -> std::optional<Point> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Box>) {
                double best = std::numeric_limits<double>::infinity();
                int axis = -1;
                double sign = 0.0;
                bool tie = false;
                for (int i = 0; i < d; ++i) {
                    const double cand[2] = {u[i], s.sides[i] - u[i]};
                    for (int side = 0; side < 2; ++side) {
                        const double tol = 1e-12 * std::max(1.0, s.sides[i]);
                        if (cand[side] < best - tol) {
                            best = cand[side];
                            axis = i;
                            sign = side == 0 ? 1.0 : -1.0;
                            tie = false;
                        } else if (std::abs(cand[side] - best) <= tol) {
                            tie = true;
                        }
                    }
                }
                if (tie) return std::nullopt;
                Point g = Point::Zero(d);
                g[axis] = sign;
                return g;
            } else if constexpr (std::is_same_v<T, Ball>) {
                const double r = u.norm();
                if (r == 0.0) return std::nullopt;
                return Point(-u / r);
            } else if constexpr (std::is_same_v<T, HalfSpace>) {
                Point g = Point::Zero(d);
                g[d - 1] = 1.0;
                return g;
            } else {
                const Eigen::Vector2d p(u[0], u[1]);
                const EdgeHit hit = nearest_edge_point(s, p);
                if (hit.tie || hit.distance == 0.0) return std::nullopt;
                return Point((p - hit.point) / hit.distance);
            }
        },
        domain.shape());
}

Domain polygon_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("polygon JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
        throw DomainError("polygon JSON: expected {\"vertices\": [[x,y],...]}");
    std::vector<Eigen::Vector2d> vertices;
    for (const auto& v : j["vertices"]) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw DomainError("polygon JSON: each vertex must be [x, y]");
        vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    return Domain::polygon(std::move(vertices));
}

Domain polygon_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open polygon file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return polygon_from_json(ss.str());
}

Domain parse_domain_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw DomainError("domain spec must look like kind:args, got '" + spec + "'");
    const std::string kind = spec.substr(0, colon);
    const std::string args = spec.substr(colon + 1);
    if (kind == "square") return Domain::square(parse_positive(args, spec));
    if (kind == "disk") return Domain::disk(parse_positive(args, spec));
    if (kind == "ball") return Domain::ball(3, parse_positive(args, spec));
    if (kind == "box") {
        std::vector<double> sides;
        std::stringstream ss(args);
        std::string item;
        while (std::getline(ss, item, ',')) sides.push_back(parse_positive(item, spec));
        return Domain::box(std::move(sides));
    }
    if (kind == "halfspace") {
        const double d = parse_positive(args, spec);
        if (d != std::floor(d)) throw DomainError("halfspace dimension must be an integer");
        return Domain::half_space(static_cast<int>(d));
    }
    if (kind == "polygon") return polygon_from_file(args);
    throw DomainError("unknown domain kind '" + kind + "'");
}

} // namespace weyl
