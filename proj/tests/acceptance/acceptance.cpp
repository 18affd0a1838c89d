// Acceptance suite. Prints one PASS/FAIL line per criterion.
//   acceptance                 run all criteria
//   acceptance --criterion N   run criterion N only
// Exit status is nonzero when any selected criterion fails.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "weyl/chart.hpp"
#include "weyl/constants.hpp"
#include "weyl/fd.hpp"
#include "weyl/functionals.hpp"
#include "weyl/halfspace.hpp"
#include "weyl/localization.hpp"
#include "weyl/regression.hpp"
#include "weyl/spectrum.hpp"

using namespace weyl;

namespace {

constexpr double pi = std::numbers::pi;

// Pinned tolerances.
constexpr double kConstRelTol = 1e-10;
constexpr double kConstSeconds = 1.0;
constexpr double kHStart = 0.1, kHStop = 0.003;
constexpr int kHCount = 20;
constexpr double kSecondTermRel = 0.05;
constexpr double kSquareSeconds = 60.0;
constexpr double kDiskSeconds = 300.0;
constexpr double kExponentSlack = 0.2;
constexpr double kBerezinAsymptoticRel = 0.10;
constexpr double kBoundaryCoeffAbs = 1e-4;
constexpr double kHorizon = 200.0;
constexpr double kDualAbs = 1e-8;
constexpr double kBulkAbs = 1e-3;
constexpr double kTailStability = 1e-3;
constexpr double kNormalizationAbs = 1e-3;
constexpr std::size_t kNormalizationPoints = 100;
constexpr std::size_t kBoundSamples = 100000;
constexpr double kScalingSlopeAbs = 0.15;
constexpr double kLocalizationSeconds = 600.0;
constexpr std::size_t kMcSamples = 1000000;
constexpr double kMcSigmas = 3.0;
constexpr double kDefectSlopeAbs = 0.2;
constexpr std::size_t kFdMaxUnknowns = 2000;
constexpr int kFdThresholds = 20;
constexpr double kLShapeRel = 0.15;
constexpr double kFdSeconds = 120.0;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
        char buf[512];
        va_list ap;
        va_start(ap, fmt);
        std::vsnprintf(buf, sizeof buf, fmt, ap);
        va_end(ap);
        if (!detail.empty()) detail += "; ";
        detail += buf;
        if (!ok) {
            detail += " [x]";
            pass = false;
        }
    }
    void note(const char* fmt, ...) __attribute__((format(printf, 2, 3))) {
        char buf[512];
        va_list ap;
        va_start(ap, fmt);
        std::vsnprintf(buf, sizeof buf, fmt, ap);
        va_end(ap);
        if (!detail.empty()) detail += "; ";
        detail += buf;
    }
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<double> sweep_grid() { return log_grid(kHStart, kHStop, kHCount); }

double sweep_cutoff() { return 1.01 / (kHStop * kHStop); }

Outcome constants_cross_check() {
    Outcome o;
    Stopwatch sw;
    double worst = 0.0;
    for (int d = 1; d <= 6; ++d) {
        const Constants c = constants(d);
        const double scale = std::pow(2 * pi, d);
        worst = std::max(worst, std::abs(phase_space_integral(d, 0) / scale / c.C_d - 1.0));
        worst = std::max(worst, std::abs(phase_space_integral(d, 1) / scale / c.L_d - 1.0));
    }
    o.require(worst < kConstRelTol, "max rel dev %.2e (tol %.0e)", worst, kConstRelTol);
    o.require(sw.seconds() < kConstSeconds, "%.3fs (limit %.0fs)", sw.seconds(), kConstSeconds);
    return o;
}

Outcome two_term(const Domain& domain, double expected, double seconds_limit) {
    Outcome o;
    Stopwatch sw;
    const auto grid = sweep_grid();
    const Spectrum s = exact_spectrum(domain, sweep_cutoff());
    const FitReport f = fit_second_term(sweep(domain, s, grid), domain);
    const double rel = std::abs(f.fitted_second_coefficient / expected - 1.0);
    o.note("%zu eigenvalues", s.size());
    o.require(rel < kSecondTermRel, "fitted %.6f vs %.6f, rel %.4f (tol %.2f)", f.fitted_second_coefficient,
              expected, rel, kSecondTermRel);
    o.require(sw.seconds() < seconds_limit, "%.2fs (limit %.0fs)", sw.seconds(), seconds_limit);
    return o;
}

Outcome remainder_order() {
    Outcome o;
    const Domain disk = Domain::disk(1.0);
    const Spectrum s = exact_spectrum(disk, sweep_cutoff());
    const FitReport f = fit_second_term(sweep(disk, s, sweep_grid()), disk);
    const int d = 2;
    const double bound = -d + 1 + 1.0 / 3.0 - kExponentSlack;
    o.require(f.fitted_remainder_exponent >= bound, "exponent %.4f >= %.4f", f.fitted_remainder_exponent, bound);
    return o;
}

Outcome berezin() {
    Outcome o;
    const auto grid = sweep_grid();
    for (const Domain& dom : {Domain::square(1.0), Domain::disk(1.0), Domain::box({1.0, 2.0})}) {
        const Spectrum s = exact_spectrum(dom, sweep_cutoff());
        double min_margin = std::numeric_limits<double>::infinity();
        bool positive = true;
        std::vector<BerezinMargin> margins;
        for (double h : grid) {
            const double m = weyl_prediction(dom, h, 1) - riesz_mean(s, h);
            positive = positive && m > 0.0;
            min_margin = std::min(min_margin, m);
            margins.push_back({h, m});
        }
        o.require(positive, "%s min margin %.4g", dom.id().c_str(), min_margin);
        const int d = dom.dimension();
        const double target = 0.25 * constants(d - 1).L_d * dom.surface();
        const double scaled = margins.back().margin * std::pow(margins.back().h, d - 1);
        const double rel = std::abs(scaled / target - 1.0);
        o.require(rel < kBerezinAsymptoticRel, "%s margin*h^(d-1) %.5f vs %.5f (rel %.3f)", dom.id().c_str(), scaled,
                  target, rel);
    }
    return o;
}

Outcome halfspace_identity() {
    Outcome o;
    const double b2 = boundary_coefficient(2, kHorizon).value;
    const double b3 = boundary_coefficient(3, kHorizon).value;
    const double t2 = 1.0 / (6 * pi), t3 = 1.0 / (64 * pi);
    o.require(std::abs(b2 - t2) < kBoundaryCoeffAbs, "d=2: %.8f vs 1/(6pi)=%.8f", b2, t2);
    o.require(std::abs(b3 - t3) < kBoundaryCoeffAbs, "d=3: %.8f vs 1/(64pi)=%.8f", b3, t3);
    double worst = 0.0;
    int pairs = 0;
    for (int d : {2, 3, 4})
        for (double t : {0.05, 0.9, 3.3, 17.0, 120.0}) {
            worst = std::max(worst, std::abs(cosine_integral_bessel(d, t) - cosine_integral_quadrature(d, t)));
            ++pairs;
        }
    o.require(worst < kDualAbs, "dual evaluation max diff %.2e over %d pairs", worst, pairs);
    return o;
}

Outcome halfspace_density() {
    Outcome o;
    const double r0 = density_profile(2, 0.0);
    o.require(r0 == 0.0, "rho(0) = %g", r0);
    const double dev = std::abs(density_profile(2, 100.0) - constants(2).L_d);
    o.require(dev < kBulkAbs, "|rho(100) - L_2| = %.2e", dev);
    const std::vector<double> horizons{100.0, 200.0, 400.0};
    for (int d : {2, 3}) {
        const TailBound tb = tail_bound_check(d, horizons, kTailStability);
        o.require(std::isfinite(tb.value) && tb.stability < kTailStability, "d=%d tail %.6f stability %.2e", d,
                  tb.value, tb.stability);
    }
    return o;
}

double slope(const std::vector<double>& l0s, const std::vector<double>& values) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < l0s.size(); ++i) {
        x.push_back(std::log(l0s[i]));
        y.push_back(std::log(values[i]));
    }
    return fit_line(x, y).slope;
}

Outcome localization() {
    Outcome o;
    Stopwatch sw;
    const Domain domains[] = {Domain::square(1.0), Domain::disk(1.0), Domain::half_space(2)};
    for (const Domain& dom : domains)
        for (double l0 : {0.1, 0.05}) {
            const ScaleFunction sf(dom, l0);
            const auto pts = sample_points(dom, kNormalizationPoints, l0, 1000 + static_cast<int>(1 / l0));
            double worst = 0.0;
            std::size_t near_boundary = 0;
            for (const Point& x : pts) {
                if (distance_to_boundary(dom, x) < l0) ++near_boundary;
                worst = std::max(worst, std::abs(normalization_check(sf, x, kNormalizationAbs).value - 1.0));
            }
            o.require(worst < kNormalizationAbs && near_boundary > 0, "%s l0=%g norm dev %.1e (%zu near boundary)",
                      dom.id().c_str(), l0, worst, near_boundary);
            const ScaleBoundReport r = check_scale_bounds(sf, sample_points(dom, kBoundSamples, 0.2, 77));
            o.require(r.violations() == 0, "%s l0=%g bound violations %zu/%zu", dom.id().c_str(), l0,
                      r.violations(), r.samples);
        }

    const std::vector<double> l0s{0.2, 0.1, 0.05, 0.025};
    const int d = 2;
    for (const Domain& dom : {Domain::disk(1.0), Domain::square(1.0)}) {
        std::vector<double> u1, u2a, u20;
        for (double l0 : l0s) {
            const ScaleFunction sf(dom, l0);
            const ScaleIntegrals a = scale_integrals(sf, -d);
            u1.push_back(a.interior);
            u2a.push_back(a.collar);
            u20.push_back(scale_integrals(sf, 0.0).collar);
        }
        const double s1 = slope(l0s, u1), s2 = slope(l0s, u2a), s3 = slope(l0s, u20);
        if (dom.id() == "disk:1") {
            o.require(std::abs(s1 + 1.0) < kScalingSlopeAbs, "disk U1 slope %.3f", s1);
            o.require(std::abs(s2 - (1.0 - d)) < kScalingSlopeAbs, "disk U2(a=-2) slope %.3f", s2);
            o.require(std::abs(s3 - 1.0) < kScalingSlopeAbs, "disk U2(a=0) slope %.3f", s3);
        } else {
            o.note("square slopes (info) U1 %.3f U2(a=-2) %.3f U2(a=0) %.3f", s1, s2, s3);
        }
    }
    o.require(sw.seconds() < kLocalizationSeconds, "%.1fs (limit %.0fs)", sw.seconds(), kLocalizationSeconds);
    return o;
}

Outcome straightening() {
    Outcome o;
    {
        const BoundaryChart c = BoundaryChart::power_law(2, 1.0, 0.5, 0.3);
        Point lo(2), hi(2);
        lo << -0.2, -0.1;
        hi << 0.25, 0.15;
        const VolumeEstimate v = mc_image_volume(c, lo, hi, kMcSamples, 2024);
        o.require(std::abs(v.estimate - v.exact) < kMcSigmas * v.std_error, "d=2 MC volume %.6f vs %.6f (se %.1e)",
                  v.estimate, v.exact, v.std_error);
    }
    {
        const BoundaryChart c = BoundaryChart::power_law(3, 2.0, 1.0, 0.3);
        Point lo(3), hi(3);
        lo << -0.15, -0.1, -0.1;
        hi << 0.1, 0.15, 0.1;
        const VolumeEstimate v = mc_image_volume(c, lo, hi, kMcSamples, 2025);
        o.require(std::abs(v.estimate - v.exact) < kMcSigmas * v.std_error, "d=3 MC volume %.6f vs %.6f (se %.1e)",
                  v.estimate, v.exact, v.std_error);
    }
    const std::vector<double> radii{0.2, 0.1, 0.05};
    for (int d : {2, 3})
        for (double alpha : {0.5, 1.0}) {
            std::vector<double> defects;
            for (double l : radii) {
                const BoundaryChart c = BoundaryChart::power_law(d, 1.0, alpha, l);
                defects.push_back(surface_defect(c, [l](const Point& y) {
                    const double r = y.norm() / l;
                    return r < 1.0 ? std::exp(-2.0 / (1.0 - r * r)) : 0.0;
                }));
            }
            const double s = slope(radii, defects);
            const double expect = d - 1 + 2 * alpha;
            o.require(std::abs(s - expect) < kDefectSlopeAbs, "d=%d alpha=%.1f defect slope %.3f vs %.1f", d, alpha, s,
                      expect);
        }
    return o;
}

Outcome fd_equivalence() {
    Outcome o;
    Stopwatch sw;
    const Domain lshape = Domain::polygon({{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}});
    std::mt19937_64 rng(31337);
    std::size_t mismatches = 0, checks = 0;
    for (const auto& [dom, step] : {std::pair{Domain::square(1.0), 1.0 / 40}, std::pair{lshape, 1.0 / 48},
                                     std::pair{Domain::disk(1.0), 1.0 / 24}}) {
        const GridOperator op = assemble(dom, step);
        if (op.size() > kFdMaxUnknowns) {
            o.require(false, "%s grid has %zu unknowns", dom.id().c_str(), op.size());
            continue;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(op.matrix), Eigen::EigenvaluesOnly);
        const Eigen::VectorXd ev = es.eigenvalues();
        std::uniform_real_distribution<double> thr(0.0, ev.maxCoeff());
        for (int k = 0; k < kFdThresholds; ++k) {
            const double t = thr(rng);
            ++checks;
            if (count_below(op, t).count != static_cast<std::size_t>((ev.array() < t).count())) ++mismatches;
        }
    }
    o.require(mismatches == 0, "inertia vs dense mismatches %zu/%zu", mismatches, checks);

    const double lambda = 200.0;
    const std::size_t n = count_below(assemble(lshape, 1.0 / 64), lambda).count;
    const double weyl = constants(2).C_d * 0.75 * lambda;
    const double rel = std::abs(n / weyl - 1.0);
    o.require(rel < kLShapeRel, "L-shape N(200)=%zu vs C_2*0.75*200=%.3f (rel %.3f, tol %.2f)", n, weyl, rel,
              kLShapeRel);
    o.require(sw.seconds() < kFdSeconds, "%.2fs (limit %.0fs)", sw.seconds(), kFdSeconds);
    return o;
}

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {"constants cross-check", constants_cross_check},
        {"two-term Weyl, unit square",
         [] { return two_term(Domain::square(1.0), 0.25 * constants(1).L_d * 4.0, kSquareSeconds); }},
        {"two-term Weyl, unit disk",
         [] { return two_term(Domain::disk(1.0), 0.25 * constants(1).L_d * 2 * pi, kDiskSeconds); }},
        {"remainder order, unit disk", remainder_order},
        {"Berezin-Li-Yau margins", berezin},
        {"half-space boundary coefficient", halfspace_identity},
        {"half-space density", halfspace_density},
        {"localization identities", localization},
        {"boundary straightening", straightening},
        {"finite-difference oracle equivalence", fd_equivalence},
    };

    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    if (only < 0 || only > static_cast<int>(criteria.size())) {
        std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
        return 2;
    }

    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        if (only != 0 && static_cast<int>(k + 1) != only) continue;
        Outcome out;
        try {
            out = criteria[k].run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %2zu %s: %s\n", out.pass ? "PASS" : "FAIL", k + 1, criteria[k].name, out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
