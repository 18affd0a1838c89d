#pragma once

#include <vector>

namespace weyl {

/// Gamma function via the Lanczos approximation (g = 7, 9 terms) with
/// reflection for x < 1/2. Relative accuracy ~1e-15 on the positive axis.
double gamma_fn(double x);
double log_gamma(double x);

/// Bessel function of the first kind J_nu(x) for nu >= 0, x >= 0.
/// Power series where it does not cancel, Miller backward recurrence
/// (normalised by the Neumann series) elsewhere.
double bessel_j(double nu, double x);

/// J_nu and J_{nu+1} from one recurrence sweep.
struct BesselPair {
    double j_nu;
    double j_nu1;
};
BesselPair bessel_j_pair(double nu, double x);

/// McMahon's large-k asymptotic for the k-th positive zero of J_nu.
double mcmahon_zero(double nu, int k);

/// The first `count` positive zeros of J_nu, ascending.
std::vector<double> bessel_zeros(double nu, int count);

/// All positive zeros of J_nu strictly below x_max, ascending.
std::vector<double> bessel_zeros_below(double nu, double x_max);

} // namespace weyl
