#include "weyl/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "weyl/errors.hpp"

namespace weyl {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_sum(double z) {
    double a = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (z + static_cast<double>(i));
    return a;
}

constexpr double kRescale = 1e250;
constexpr double kRescaleInv = 1e-250;

bool use_series(double nu, double x) {
    return x <= 4.0 || 0.25 * x * x <= nu + 1.0;
}

// Power series sum_k (-1)^k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)).
double bessel_series(double nu, double x) {
    const double half = 0.5 * x;
    double term = std::exp(nu * std::log(half) - log_gamma(nu + 1.0));
    if (term == 0.0) return 0.0;
    const double q = half * half;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= -q / (k * (k + nu));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// Miller's backward recurrence from a high order, normalised with
// (x/2)^nu0 = sum_k (nu0+2k) Gamma(nu0+k)/k! J_{nu0+2k}(x), nu0 = frac(nu).
BesselPair bessel_miller(double nu, double x) {
    const double nu0 = nu - std::floor(nu);
    const int n = static_cast<int>(std::floor(nu));
    const double scale = std::max(nu, x);
    int top = static_cast<int>(std::ceil(scale + 30.0 + 20.0 * std::cbrt(scale)));
    top += top % 2; // even, so that normalisation terms fall on even offsets

    // g_k = Gamma(nu0+k)/k! at k = top/2, recurred downwards
    int k = top / 2;
    double g = std::exp(log_gamma(nu0 + k) - log_gamma(k + 1.0));

    double f_next = 0.0;     // f_{m+1}
    double f = 1e-300;       // f_m, m = top
    double norm = 0.0;
    double at_n = 0.0, at_n1 = 0.0;
    const double two_over_x = 2.0 / x;
    for (int m = top; m >= 0; --m) {
        if (m == n) at_n = f;
        if (m == n + 1) at_n1 = f;
        if (m % 2 == 0) {
            const double weight = (k == 0) ? std::exp(log_gamma(nu0 + 1.0)) : (nu0 + 2.0 * k) * g;
            norm += weight * f;
            if (k > 1) g *= k / (nu0 + k - 1.0);
            if (k > 0) --k;
        }
        if (m == 0) break;
        const double f_prev = two_over_x * (nu0 + m) * f - f_next;
        f_next = f;
        f = f_prev;
        if (std::abs(f) > kRescale) {
            f *= kRescaleInv;
            f_next *= kRescaleInv;
            norm *= kRescaleInv;
            at_n *= kRescaleInv;
            at_n1 *= kRescaleInv;
        }
    }
    const double factor = (nu0 == 0.0 ? 1.0 : std::pow(0.5 * x, nu0)) / norm;
    return {at_n * factor, at_n1 * factor};
}

// Refine a bracketed simple zero of J_nu with Newton steps kept inside the bracket.
double refine_zero(double nu, double lo, double hi, double guess) {
    double f_lo = bessel_j(nu, lo);
    double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const BesselPair p = bessel_j_pair(nu, x);
        const double fx = p.j_nu;
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (f_lo > 0.0)) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
        }
        const double deriv = nu / x * p.j_nu - p.j_nu1;
        double next = x - fx / deriv;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - x);
        x = next;
        if (step < 1e-15 * x || hi - lo < 4e-16 * x) break;
    }
    return x;
}

// Scan from x = nu in steps shorter than any zero spacing; `accept` is
// consulted before a zero is stored, `full` after.
template <class Accept, class Full>
std::vector<double> scan_zeros(double nu, Accept accept, Full full) {
    if (nu < 0.0) throw DomainError("bessel zeros: order must be nonnegative");
    constexpr double kStep = 0.5;   // below the minimal zero spacing (> 2.4) for nu >= 0
    std::vector<double> zeros;
    double a = nu;                  // J_nu > 0 on (0, j_{nu,1}) and j_{nu,1} > nu
    double fa = (a == 0.0) ? 1.0 : bessel_j(nu, a);
    while (true) {
        const double b = a + kStep;
        const double fb = bessel_j(nu, b);
        if (fb == 0.0 || (fa > 0.0) != (fb > 0.0)) {
            const int k = static_cast<int>(zeros.size()) + 1;
            const double z = (fb == 0.0) ? b : refine_zero(nu, a, b, mcmahon_zero(nu, k));
            if (!accept(z)) break;
            zeros.push_back(z);
            if (full(zeros.size())) break;
            if (fb == 0.0) {
                // step off the exact zero
                a = b + 1e-9;
                fa = bessel_j(nu, a);
                continue;
            }
        }
        a = b;
        fa = fb;
    }
    return zeros;
}

} // namespace

double gamma_fn(double x) {
    if (x < 0.5) {
        // reflection
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    }
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    const double a = lanczos_sum(z);
    if (z < 140.0)
        return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
    return std::exp(0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t) * a;
}

double log_gamma(double x) {
    if (x <= 0.0) throw DomainError("log_gamma: argument must be positive");
    if (x < 0.5) return std::log(std::numbers::pi / std::abs(std::sin(std::numbers::pi * x))) - log_gamma(1.0 - x);
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

BesselPair bessel_j_pair(double nu, double x) {
    if (nu < 0.0 || x < 0.0) throw DomainError("bessel_j: requires nu >= 0 and x >= 0");
    if (x == 0.0) return {nu == 0.0 ? 1.0 : 0.0, 0.0};
    if (use_series(nu, x)) return {bessel_series(nu, x), bessel_series(nu + 1.0, x)};
    return bessel_miller(nu, x);
}

double bessel_j(double nu, double x) {
    if (nu < 0.0 || x < 0.0) throw DomainError("bessel_j: requires nu >= 0 and x >= 0");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    if (use_series(nu, x)) return bessel_series(nu, x);
    return bessel_miller(nu, x).j_nu;
}

double mcmahon_zero(double nu, int k) {
    const double beta = (k + 0.5 * nu - 0.25) * std::numbers::pi;
    const double mu = 4.0 * nu * nu;
    const double e = 8.0 * beta;
    return beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e) -
           32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * std::pow(e, 5));
}

std::vector<double> bessel_zeros(double nu, int count) {
    if (count < 1) throw DomainError("bessel_zeros: count must be positive");
    return scan_zeros(
        nu, [](double) { return true; },
        [count](std::size_t found) { return found >= static_cast<std::size_t>(count); });
}

std::vector<double> bessel_zeros_below(double nu, double x_max) {
    if (x_max <= nu) return {};
    return scan_zeros(
        nu, [x_max](double z) { return z < x_max; }, [](std::size_t) { return false; });
}

} // namespace weyl
