#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "weyl/constants.hpp"
#include "weyl/errors.hpp"
#include "weyl/functionals.hpp"

using namespace weyl;
constexpr double pi = std::numbers::pi;

TEST_CASE("counting function uses a strict threshold") {
    Spectrum s;
    s.eigenvalues = {1.0, 4.0, 4.0, 9.0};
    s.cutoff = 10.0;
    CHECK(counting_function(s, 0.5) == 1);       // threshold 4
    CHECK(counting_function(s, 0.49) == 3);
    CHECK(riesz_mean(s, 0.5) == doctest::Approx(0.75));
    CHECK_THROWS_AS(counting_function(s, 0.3), CompletenessError);
    CHECK_THROWS_AS(riesz_mean(s, 0.3), CompletenessError);
}

TEST_CASE("unit square at h = 1/5") {
    const Spectrum s = box_spectrum({1.0, 1.0}, 100.0);
    CHECK(counting_function(s, 0.2) == 1);
    CHECK(riesz_mean(s, 0.2) == doctest::Approx(1.0 - 2 * pi * pi / 25.0));
}

TEST_CASE("Riesz mean equals the integrated counting function") {
    // Tr(h^2 A - 1)_- = h^2 \int_0^{h^-2} N(E) dE, evaluated on the step function.
    const Spectrum s = disk_spectrum(1.0, 5000.0);
    for (double h : {0.2, 0.05, 0.015}) {
        const double top = 1.0 / (h * h);
        double integral = 0.0;
        for (std::size_t k = 0; k < s.size() && s.eigenvalues[k] < top; ++k) integral += top - s.eigenvalues[k];
        CHECK(riesz_mean(s, h) == doctest::Approx(h * h * integral).epsilon(1e-12));
    }
}

TEST_CASE("two-term prediction for the unit square") {
    const Domain sq = Domain::square(1.0);
    CHECK(weyl_prediction(sq, 0.01, 1) == doctest::Approx(1e4 / (8 * pi)).epsilon(1e-14));
    CHECK(weyl_prediction(sq, 0.01, 2) == doctest::Approx(376.6667).epsilon(1e-5));
    CHECK_THROWS_AS(weyl_prediction(sq, 0.01, 3), DomainError);
}

TEST_CASE("Berezin margin on the square at h^-2 = 50") {
    const Spectrum s = box_spectrum({1.0, 1.0}, 100.0);
    const double h = 1.0 / std::sqrt(50.0);
    CHECK(riesz_mean(s, h) == doctest::Approx(0.6313).epsilon(1e-4));
    std::vector<double> hs{h};
    const auto m = berezin_check(s, Domain::square(1.0), hs);
    CHECK(m[0].margin == doctest::Approx(1.3581).epsilon(1e-4));
}

TEST_CASE("Berezin violation is reported") {
    Spectrum fake;
    fake.eigenvalues = std::vector<double>(200, 1.0);   // far too many low eigenvalues
    fake.cutoff = 1e4;
    std::vector<double> hs{0.1};
    CHECK_THROWS_AS(berezin_check(fake, Domain::square(1.0), hs), InvariantViolation);
}

TEST_CASE("counting function is monotone and the margin positive on a sweep") {
    const Domain disk = Domain::disk(1.0);
    const auto grid = log_grid(0.2, 0.01, 15);
    const Spectrum s = exact_spectrum(disk, 1.01 / (0.01 * 0.01));
    const SweepResult r = sweep(disk, s, grid);
    REQUIRE(r.records.size() == 15);
    for (std::size_t i = 1; i < r.records.size(); ++i) CHECK(r.records[i].N >= r.records[i - 1].N);
    for (const auto& m : berezin_check(s, disk, grid)) CHECK(m.margin > 0.0);
    for (const auto& rec : r.records) {
        CHECK(rec.residual1 == doctest::Approx(rec.riesz - rec.weyl1));
        CHECK(rec.residual2 == doctest::Approx(rec.riesz - rec.weyl2));
    }
}

TEST_CASE("log grid and sweep ordering") {
    const auto g = log_grid(0.1, 0.001, 3);
    CHECK(g[0] == doctest::Approx(0.1));
    CHECK(g[1] == doctest::Approx(0.01));
    CHECK(g[2] == doctest::Approx(0.001));
    const Spectrum s = box_spectrum({1.0, 1.0}, 1e3);
    std::vector<double> bad{0.1, 0.2};
    CHECK_THROWS_AS(sweep(Domain::square(1.0), s, bad), DomainError);
}

TEST_CASE("second-term fit on a short square sweep") {
    const Domain sq = Domain::square(1.0);
    const auto grid = log_grid(0.1, 0.005, 12);
    const Spectrum s = exact_spectrum(sq, 1.01 / (0.005 * 0.005));
    const FitReport f = fit_second_term(sweep(sq, s, grid), sq);
    CHECK(f.predicted_second_coefficient == doctest::Approx(2.0 / (3.0 * pi)));
    CHECK(f.fitted_second_coefficient == doctest::Approx(2.0 / (3.0 * pi)).epsilon(0.1));
    CHECK(f.h_range.first == doctest::Approx(0.005));
    CHECK(f.h_range.second == doctest::Approx(0.1));
    const std::string js = fit_report_json(f);
    CHECK(js.find("fitted_remainder_exponent") != std::string::npos);
}

TEST_CASE("fit needs enough data") {
    const Domain sq = Domain::square(1.0);
    const Spectrum s = exact_spectrum(sq, 1e4);
    CHECK_THROWS_AS(fit_second_term(sweep(sq, s, log_grid(0.1, 0.05, 4)), sq), FitError);
    CHECK_THROWS_AS(fit_second_term(sweep(sq, s, log_grid(0.1, 0.05, 8)), sq), FitError);
}

TEST_CASE("sweep CSV") {
    const Domain sq = Domain::square(1.0);
    const Spectrum s = exact_spectrum(sq, 1e4);
    std::ostringstream out;
    write_sweep_csv(out, sweep(sq, s, log_grid(0.1, 0.02, 5)));
    CHECK(out.str().rfind("h,N,riesz,weyl1,weyl2,residual1,residual2\n", 0) == 0);
    CHECK(std::ranges::count(out.str(), '\n') == 6);
}
