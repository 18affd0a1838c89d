#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "weyl/quadrature.hpp"
#include "weyl/special.hpp"

using namespace weyl;

TEST_CASE("gamma against std::tgamma") {
    for (double x : {0.1, 0.5, 1.0, 1.5, 2.5, 3.0, 7.25, 20.0, 60.5}) {
        CHECK(gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
        CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-12));
    }
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("Bessel J against std::cyl_bessel_j") {
    double worst = 0.0;
    for (double nu : {0.0, 0.5, 1.0, 2.0, 2.5, 3.0, 7.5, 20.0, 60.5, 150.0})
        for (double x : {0.0, 1e-3, 0.3, 1.0, 3.9, 4.1, 10.0, 25.0, 80.0, 200.0, 600.0})
            worst = std::max(worst, std::abs(bessel_j(nu, x) - std::cyl_bessel_j(nu, x)));
    CHECK(worst < 1e-12);
    CHECK(bessel_j(0.0, 0.0) == 1.0);
    CHECK(bessel_j(2.0, 0.0) == 0.0);
}

TEST_CASE("Bessel pair is consistent with single evaluations") {
    for (double x : {0.7, 5.0, 33.0}) {
        const BesselPair p = bessel_j_pair(1.5, x);
        CHECK(p.j_nu == doctest::Approx(bessel_j(1.5, x)).epsilon(1e-12));
        CHECK(p.j_nu1 == doctest::Approx(bessel_j(2.5, x)).epsilon(1e-12));
    }
}

// Sign-change bisection on std::cyl_bessel_j as an independent zero oracle.
double oracle_zero(double nu, double a, double b) {
    double fa = std::cyl_bessel_j(nu, a);
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = std::cyl_bessel_j(nu, m);
        if ((fm < 0) == (fa < 0)) { a = m; fa = fm; } else b = m;
    }
    return 0.5 * (a + b);
}

TEST_CASE("first zeros of J_0") {
    const auto z = bessel_zeros(0.0, 3);
    REQUIRE(z.size() == 3);
    CHECK(z[0] == doctest::Approx(2.404825557695773).epsilon(1e-12));
    CHECK(z[1] == doctest::Approx(5.520078110286311).epsilon(1e-12));
    CHECK(z[2] == doctest::Approx(8.653727912911012).epsilon(1e-12));
}

TEST_CASE("zeros agree with a bisection oracle and interlace") {
    for (double nu : {0.5, 1.0, 4.0, 12.0, 40.0}) {
        const auto z = bessel_zeros_below(nu, 120.0);
        const auto z1 = bessel_zeros_below(nu + 1.0, 120.0);
        REQUIRE(!z.empty());
        for (double zk : z) {
            CHECK(std::abs(std::cyl_bessel_j(nu, zk)) < 1e-12);
            CHECK(oracle_zero(nu, zk - 0.1, zk + 0.1) == doctest::Approx(zk).epsilon(1e-11));
        }
        // j_{nu,k} < j_{nu+1,k} < j_{nu,k+1}
        for (std::size_t k = 0; k + 1 < z.size() && k < z1.size(); ++k) {
            CHECK(z[k] < z1[k]);
            CHECK(z1[k] < z[k + 1]);
        }
        CHECK(z.front() > nu);
    }
}

TEST_CASE("zero count matches sign changes on a fine grid") {
    for (double nu : {0.0, 2.5, 17.0}) {
        int changes = 0;
        double prev = std::cyl_bessel_j(nu, 1e-6);
        for (double x = 0.01; x < 90.0; x += 0.01) {
            const double v = std::cyl_bessel_j(nu, x);
            if ((v < 0) != (prev < 0) && prev != 0.0) ++changes;
            prev = v;
        }
        CHECK(bessel_zeros_below(nu, 90.0).size() == static_cast<std::size_t>(changes));
    }
}

TEST_CASE("McMahon asymptotic is close for large k") {
    const auto z = bessel_zeros(1.0, 40);
    CHECK(mcmahon_zero(1.0, 40) == doctest::Approx(z.back()).epsilon(1e-8));
}

TEST_CASE("Gauss-Kronrod quadrature") {
    const auto r = integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
    const auto s = integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0);
    CHECK(s.value == doctest::Approx(2.0 / 3.0).epsilon(1e-11));
}

TEST_CASE("Gauss-Legendre is exact to degree 2n-1") {
    const GaussRule g = gauss_legendre(5);
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], 8);
    CHECK(s == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("compensated summation") {
    std::vector<double> t{1.0, 1e100, 1.0, -1e100};
    CHECK(compensated_sum(t) == 2.0);
    CompensatedAccumulator acc;
    for (int i = 0; i < 10; ++i) acc.add(0.1);
    CHECK(acc.value() == doctest::Approx(1.0).epsilon(1e-16));
}
