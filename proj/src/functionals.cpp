#include "weyl/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "weyl/constants.hpp"
#include "weyl/errors.hpp"
#include "weyl/parallel.hpp"
#include "weyl/quadrature.hpp"
#include "weyl/regression.hpp"

namespace weyl {
namespace {

double threshold_for(const Spectrum& spectrum, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("h must be positive and finite");
    const double threshold = 1.0 / (h * h);
    if (threshold > spectrum.cutoff) throw CompletenessError(threshold, spectrum.cutoff);
    return threshold;
}

std::size_t count_strictly_below(const Spectrum& spectrum, double threshold) {
    const auto& ev = spectrum.eigenvalues;
    return static_cast<std::size_t>(std::lower_bound(ev.begin(), ev.end(), threshold) - ev.begin());
}

} // namespace

std::size_t counting_function(const Spectrum& spectrum, double h) {
    return count_strictly_below(spectrum, threshold_for(spectrum, h));
}

double riesz_mean(const Spectrum& spectrum, double h) {
    const double threshold = threshold_for(spectrum, h);
    const std::size_t n = count_strictly_below(spectrum, threshold);
    const double h2 = h * h;
    CompensatedAccumulator acc;
    for (std::size_t k = 0; k < n; ++k) acc.add(1.0 - h2 * spectrum.eigenvalues[k]);
    return acc.value();
}

double weyl_prediction(const Domain& domain, double h, int terms) {
    if (!(h > 0.0)) throw DomainError("weyl_prediction: h must be positive");
    if (terms != 1 && terms != 2) throw DomainError("weyl_prediction: terms must be 1 or 2");
    const int d = domain.dimension();
    const double bulk = constants(d).L_d * domain.volume() * std::pow(h, -d);
    if (terms == 1) return bulk;
    if (d < 2) throw DomainError("weyl_prediction: the boundary term needs d >= 2");
    return bulk - 0.25 * constants(d - 1).L_d * domain.surface() * std::pow(h, 1 - d);
}

std::vector<BerezinMargin> berezin_check(const Spectrum& spectrum, const Domain& domain,
                                         std::span<const double> h_list) {
    std::vector<BerezinMargin> out;
    out.reserve(h_list.size());
    for (double h : h_list) {
        const double margin = weyl_prediction(domain, h, 1) - riesz_mean(spectrum, h);
        if (margin < 0.0) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "Berezin-Li-Yau bound violated at h=%.17g (margin %.6g)", h,
                          margin);
            throw InvariantViolation(buf);
        }
        out.push_back({h, margin});
    }
    return out;
}

SweepResult sweep(const Domain& domain, const Spectrum& spectrum, std::span<const double> h_grid) {
    for (std::size_t i = 1; i < h_grid.size(); ++i)
        if (!(h_grid[i] < h_grid[i - 1])) throw DomainError("sweep: h grid must be strictly decreasing");
    SweepResult result;
    result.domain_id = domain.id();
    result.dimension = domain.dimension();
    result.surface = domain.surface();
    result.records.resize(h_grid.size());
    parallel_for(h_grid.size(), [&](std::size_t i) {
        const double h = h_grid[i];
        SweepRecord& r = result.records[i];
        r.h = h;
        r.N = counting_function(spectrum, h);
        r.riesz = riesz_mean(spectrum, h);
        r.weyl1 = weyl_prediction(domain, h, 1);
        r.weyl2 = domain.dimension() >= 2 ? weyl_prediction(domain, h, 2) : r.weyl1;
        r.residual1 = r.riesz - r.weyl1;
        r.residual2 = r.riesz - r.weyl2;
    });
    return result;
}

FitReport fit_second_term(const SweepResult& sweep, const Domain& domain) {
    const auto& recs = sweep.records;
    const int d = domain.dimension();
    if (d < 2) throw DomainError("fit_second_term: needs d >= 2");
    if (recs.size() < 5) throw FitError("fit_second_term: need at least 5 records, got " + std::to_string(recs.size()));
    double h_min = recs.front().h, h_max = recs.front().h;
    for (const auto& r : recs) {
        h_min = std::min(h_min, r.h);
        h_max = std::max(h_max, r.h);
    }
    if (h_max < 10.0 * h_min) throw FitError("fit_second_term: h samples must span at least one decade");

    std::vector<double> x, y, w;
    for (const auto& r : recs) {
        x.push_back(-std::pow(r.h, 1 - d));
        y.push_back(r.residual1);
        w.push_back(std::pow(r.h, d - 1));
    }
    const LineFit coeff = fit_line(x, y, w);

    // remainder exponent: drop the three largest h (pre-asymptotic)
    std::vector<const SweepRecord*> by_h;
    for (const auto& r : recs) by_h.push_back(&r);
    std::sort(by_h.begin(), by_h.end(), [](auto a, auto b) { return a->h > b->h; });
    std::vector<double> hs, rs;
    for (std::size_t i = 3; i < by_h.size(); ++i) {
        const SweepRecord& r = *by_h[i];
        if (std::abs(r.residual2) > 1e-9 * r.weyl1) {
            hs.push_back(r.h);
            rs.push_back(r.residual2);
        }
    }
    if (hs.size() < 2)
        throw FitError("fit_second_term: only " + std::to_string(hs.size()) +
                       " records with |residual2| above the floor for the exponent fit");

    FitReport report;
    report.fitted_second_coefficient = coeff.slope;
    report.predicted_second_coefficient = 0.25 * constants(d - 1).L_d * domain.surface();
    report.fitted_remainder_exponent = loglog_slope(hs, rs);
    report.h_range = {h_min, h_max};
    report.residual_norm = coeff.residual_norm;
    return report;
}

std::vector<double> log_grid(double start, double stop, int count) {
    if (!(start > 0.0) || !(stop > 0.0)) throw DomainError("log_grid: endpoints must be positive");
    if (count < 1) throw DomainError("log_grid: count must be positive");
    if (count == 1) return {start};
    std::vector<double> grid(count);
    const double la = std::log(start), lb = std::log(stop);
    for (int i = 0; i < count; ++i) grid[i] = std::exp(la + (lb - la) * i / (count - 1));
    grid.front() = start;
    grid.back() = stop;
    return grid;
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
    out << "h,N,riesz,weyl1,weyl2,residual1,residual2\n";
    char buf[256];
    for (const auto& r : sweep.records) {
        std::snprintf(buf, sizeof buf, "%.17g,%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.h, r.N, r.riesz,
                      r.weyl1, r.weyl2, r.residual1, r.residual2);
        out << buf;
    }
}

std::string fit_report_json(const FitReport& report) {
    nlohmann::ordered_json j;
    j["fitted_second_coefficient"] = report.fitted_second_coefficient;
    j["predicted_second_coefficient"] = report.predicted_second_coefficient;
    j["fitted_remainder_exponent"] = report.fitted_remainder_exponent;
    j["h_range"] = {report.h_range.first, report.h_range.second};
    j["residual_norm"] = report.residual_norm;
    return j.dump(2);
}

} // namespace weyl
