#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace weyl {

// Half-space boundary layer. With t = x_d / h the scaled distance to the
// boundary plane, the local density of Tr(phi H^+ phi)_- is
//   rho(t) = (2 pi)^-d \int 2 sin^2(xi_d t) (|xi|^2 - 1)_- dxi
//          = L_d - (2 pi)^-d \int cos(2 xi_d t) (|xi|^2 - 1)_- dxi.

/// \int_{R^d} cos(2 xi_d t) (|xi|^2 - 1)_- dxi by the Bessel closed form
/// K_d J_{d/2+1}(2t) / t^{d/2+1}, K_d pinned by the t -> 0 limit. t >= 0.
double cosine_integral_bessel(int d, double t);

/// Same integral via c_d \int_0^1 cos(2 s t) (1 - s^2)^{(d+1)/2} ds.
double cosine_integral_quadrature(int d, double t);

/// Both evaluations; throws ConsistencyError if they differ by more than 1e-8.
/// Returns the Bessel-form value. Requires d >= 2, t > 0.
double cosine_integral(int d, double t);

/// rho(t); exactly 0 at t = 0, tends to L_d.
double density_profile(int d, double t);

/// Bulk value of the profile, (2 pi)^-d \int (1-|xi|^2)_+ dxi = L_d.
double density_bulk(int d);

struct BoundaryCoefficient {
    double value = 0.0;            // accelerated limit of the partial integrals
    double partial = 0.0;          // (2 pi)^-d \int_0^T cosine_integral dt
    double error_estimate = 0.0;
    std::vector<double> partial_sums;   // integral up to each zero of J_{d/2+1}(2t) below T
};

/// (2 pi)^-d \int_0^T cosine_integral(d, t) dt, integrated segment by segment
/// between zeros and summed with repeated averaging (Euler transform).
/// Converges to L_{d-1}/4. Throws ConvergenceError if the horizon is too short
/// to reach `tol`.
BoundaryCoefficient boundary_coefficient(int d, double T, double tol = 1e-4);

struct TailBound {
    double value = 0.0;                 // extrapolated \int_0^inf t |corr(t)| dt
    std::vector<double> horizons;
    std::vector<double> raw;            // \int_0^T t |corr| dt at each horizon
    std::vector<double> extrapolated;   // Richardson estimate from (T/2, T)
    double stability = 0.0;             // spread of the extrapolated values
};

/// Integrability of t * corr(t), corr = (2 pi)^-d cosine_integral. The tail
/// behaves like T^{-(d-1)/2}, which is removed by Richardson extrapolation.
/// Throws InvariantViolation when the extrapolated values are not Cauchy
/// within `tol`.
TailBound tail_bound_check(int d, std::span<const double> horizons = {}, double tol = 1e-3);

/// h^-d \int_0^inf w(s) rho(s/h) ds: the half-space trace density integrated
/// against the transverse marginal w(x_d) = \int phi^2(x', x_d) dx'.
/// `support` bounds the support of w.
double weighted_density_trace(int d, const std::function<double(double)>& w, double support, double h);

/// CSV `t,rho,bulk`.
void write_profile_csv(std::ostream& out, int d, std::span<const double> ts);

} // namespace weyl
