#include "weyl/halfspace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>

#include "weyl/constants.hpp"
#include "weyl/errors.hpp"
#include "weyl/quadrature.hpp"
#include "weyl/special.hpp"

namespace weyl {
namespace {

constexpr int kMaxCachedDim = 32;

struct Normalization {
    double phase_space = 0.0;   // \int (1-|xi|^2)_+ dxi
    double bessel = 0.0;        // K_d
    double reduced = 0.0;       // c_d
};

void check_dim(int d) {
    if (d < 2) throw DomainError("half-space model needs d >= 2");
}

double bessel_order(int d) { return 0.5 * d + 1.0; }

const Normalization& normalization(int d) {
    check_dim(d);
    if (d > kMaxCachedDim) throw DomainError("half-space model: dimension too large");
    static std::array<Normalization, kMaxCachedDim + 1> table;
    static std::array<std::once_flag, kMaxCachedDim + 1> once;
    std::call_once(once[d], [d] {
        Normalization& n = table[d];
        n.phase_space = phase_space_integral(d, 1);
        // J_nu(2t)/t^nu -> 1/Gamma(nu+1) as t -> 0
        n.bessel = n.phase_space * gamma_fn(bessel_order(d) + 1.0);
        const double exponent = 0.5 * (d + 1);
        const auto base = integrate([exponent](double s) { return std::pow(1.0 - s * s, exponent); }, 0.0,
                                    1.0, {1e-15, 1e-14, 4000});
        n.reduced = n.phase_space / base.value;
    });
    return table[d];
}

// J_nu(2t) / t^nu, with the t -> 0 limit.
double scaled_bessel(double nu, double t) {
    if (t == 0.0) return 1.0 / gamma_fn(nu + 1.0);
    return bessel_j(nu, 2.0 * t) / std::pow(t, nu);
}

// Correction (2 pi)^-d cosine_integral, i.e. bulk - rho.
double correction(int d, double t) {
    return cosine_integral_bessel(d, t) / std::pow(2.0 * std::numbers::pi, d);
}

// Zeros of the correction in (0, T): t = j_{nu,k}/2.
std::vector<double> correction_zeros(int d, double T) {
    std::vector<double> zs = bessel_zeros_below(bessel_order(d), 2.0 * T);
    for (double& z : zs) z *= 0.5;
    return zs;
}

constexpr QuadOptions kSegmentQuad{1e-15, 1e-13, 400};

// Repeated pairwise averaging of a tail of partial sums.
double euler_average(std::span<const double> sums) {
    std::vector<double> level(sums.begin(), sums.end());
    while (level.size() > 1) {
        for (std::size_t i = 0; i + 1 < level.size(); ++i) level[i] = 0.5 * (level[i] + level[i + 1]);
        level.pop_back();
    }
    return level.front();
}

} // namespace

double density_bulk(int d) {
    return normalization(d).phase_space / std::pow(2.0 * std::numbers::pi, d);
}

double cosine_integral_bessel(int d, double t) {
    if (!(t >= 0.0)) throw DomainError("cosine_integral: t must be nonnegative");
    return normalization(d).bessel * scaled_bessel(bessel_order(d), t);
}

double cosine_integral_quadrature(int d, double t) {
    if (!(t >= 0.0)) throw DomainError("cosine_integral: t must be nonnegative");
    const double exponent = 0.5 * (d + 1);
    const auto r = integrate(
        [t, exponent](double s) { return std::cos(2.0 * s * t) * std::pow(1.0 - s * s, exponent); }, 0.0,
        1.0, {1e-14, 1e-13, 4000});
    return normalization(d).reduced * r.value;
}

double cosine_integral(int d, double t) {
    check_dim(d);
    if (!(t > 0.0)) throw DomainError("cosine_integral: t must be positive");
    const double closed = cosine_integral_bessel(d, t);
    const double quad = cosine_integral_quadrature(d, t);
    if (std::abs(closed - quad) > 1e-8) {
        char buf[200];
        std::snprintf(buf, sizeof buf, "cosine_integral(d=%d, t=%.6g): Bessel form %.15g vs quadrature %.15g", d,
                      t, closed, quad);
        throw ConsistencyError(buf);
    }
    return closed;
}

double density_profile(int d, double t) {
    check_dim(d);
    if (!(t >= 0.0)) throw DomainError("density_profile: t must be nonnegative");
    if (t == 0.0) return 0.0;
    const double nu = bessel_order(d);
    return density_bulk(d) * (1.0 - gamma_fn(nu + 1.0) * scaled_bessel(nu, t));
}

BoundaryCoefficient boundary_coefficient(int d, double T, double tol) {
    check_dim(d);
    if (!(T > 0.0)) throw DomainError("boundary_coefficient: horizon must be positive");
    const auto f = [d](double t) { return correction(d, t); };
    const std::vector<double> zeros = correction_zeros(d, T);

    BoundaryCoefficient out;
    CompensatedAccumulator acc;
    double left = 0.0;
    for (double z : zeros) {
        acc.add(integrate(f, left, z, kSegmentQuad).value);
        out.partial_sums.push_back(acc.value());
        left = z;
    }
    acc.add(integrate(f, left, T, kSegmentQuad).value);
    out.partial = acc.value();

    constexpr std::size_t kWindow = 8;
    if (out.partial_sums.size() < kWindow + 1)
        throw ConvergenceError("boundary_coefficient: horizon too short for acceleration", out.partial,
                               std::numeric_limits<double>::infinity());
    const auto& s = out.partial_sums;
    const std::size_t n = s.size();
    out.value = euler_average(std::span(s).subspan(n - kWindow, kWindow));
    const double previous = euler_average(std::span(s).subspan(n - kWindow - 1, kWindow));
    out.error_estimate = std::abs(out.value - previous);
    if (out.error_estimate > tol)
        throw ConvergenceError("boundary_coefficient: tolerance not reached", out.value, out.error_estimate);
    return out;
}

TailBound tail_bound_check(int d, std::span<const double> horizons, double tol) {
    check_dim(d);
    std::vector<double> hs(horizons.begin(), horizons.end());
    if (hs.empty()) hs = {100.0, 200.0, 400.0};
    std::sort(hs.begin(), hs.end());
    if (!(hs.front() > 0.0)) throw DomainError("tail_bound_check: horizons must be positive");

    // all evaluation points, including T/2 for the Richardson pairs
    std::vector<double> marks;
    for (double T : hs) {
        marks.push_back(0.5 * T);
        marks.push_back(T);
    }
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

    const auto g = [d](double t) { return t * std::abs(correction(d, t)); };
    std::vector<double> cuts = correction_zeros(d, marks.back());
    cuts.insert(cuts.end(), marks.begin(), marks.end());
    std::sort(cuts.begin(), cuts.end());

    std::vector<double> at_mark(marks.size());
    CompensatedAccumulator acc;
    double left = 0.0;
    std::size_t next_mark = 0;
    for (double c : cuts) {
        if (c > left) acc.add(integrate(g, left, c, kSegmentQuad).value);
        left = std::max(left, c);
        while (next_mark < marks.size() && marks[next_mark] <= left) at_mark[next_mark++] = acc.value();
    }
    auto value_at = [&](double T) {
        return at_mark[std::lower_bound(marks.begin(), marks.end(), T) - marks.begin()];
    };

    const double p = 0.5 * (d - 1);
    const double factor = std::pow(2.0, p);
    TailBound out;
    out.horizons = hs;
    for (double T : hs) {
        const double full = value_at(T);
        const double half = value_at(0.5 * T);
        out.raw.push_back(full);
        out.extrapolated.push_back((factor * full - half) / (factor - 1.0));
    }
    const auto [lo, hi] = std::minmax_element(out.extrapolated.begin(), out.extrapolated.end());
    out.stability = *hi - *lo;
    out.value = out.extrapolated.back();
    if (!std::isfinite(out.value) || out.stability > tol) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "tail_bound_check(d=%d): extrapolated values spread %.3g > %.3g", d,
                      out.stability, tol);
        throw InvariantViolation(buf);
    }
    return out;
}

double weighted_density_trace(int d, const std::function<double(double)>& w, double support, double h) {
    check_dim(d);
    if (!(h > 0.0) || !(support > 0.0)) throw DomainError("weighted_density_trace: h and support must be positive");
    const auto integrand = [&](double s) { return w(s) * density_profile(d, s / h); };
    // split at the zeros of the oscillating part
    std::vector<double> cuts = correction_zeros(d, support / h);
    for (double& c : cuts) c *= h;
    cuts.push_back(support);
    CompensatedAccumulator acc;
    double left = 0.0;
    for (double c : cuts) {
        acc.add(integrate(integrand, left, c, {1e-14, 1e-12, 400}).value);
        left = c;
    }
    return acc.value() * std::pow(h, -d);
}

void write_profile_csv(std::ostream& out, int d, std::span<const double> ts) {
    const double bulk = density_bulk(d);
    out << "t,rho,bulk\n";
    char buf[128];
    for (double t : ts) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t, density_profile(d, t), bulk);
        out << buf;
    }
}

} // namespace weyl
