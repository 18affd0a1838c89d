#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weyl/domain.hpp"
#include "weyl/spectrum.hpp"

namespace weyl {

/// N(h) = #{lambda < h^-2}. Throws CompletenessError if h^-2 > cutoff.
std::size_t counting_function(const Spectrum& spectrum, double h);

/// Tr(-h^2 Delta - 1)_- = sum_{lambda < h^-2} (1 - h^2 lambda).
double riesz_mean(const Spectrum& spectrum, double h);

/// L_d |Omega| h^-d, minus 1/4 L_{d-1} |dOmega| h^{-d+1} when terms == 2.
double weyl_prediction(const Domain& domain, double h, int terms);

struct BerezinMargin {
    double h;
    double margin;   // L_d |Omega| h^-d - Tr(H)_-
};

/// Margins of the Berezin-Li-Yau bound at each h. Throws InvariantViolation
/// naming the first h with a negative margin.
std::vector<BerezinMargin> berezin_check(const Spectrum& spectrum, const Domain& domain,
                                         std::span<const double> h_list);

struct SweepRecord {
    double h;
    std::size_t N;
    double riesz;
    double weyl1;
    double weyl2;
    double residual1;   // riesz - weyl1
    double residual2;   // riesz - weyl2
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::string domain_id;
    int dimension = 0;
    double surface = 0.0;
};

/// One record per h; `h_grid` must be strictly decreasing.
SweepResult sweep(const Domain& domain, const Spectrum& spectrum, std::span<const double> h_grid);

struct FitReport {
    double fitted_second_coefficient = 0.0;
    double predicted_second_coefficient = 0.0;   // +1/4 L_{d-1} |dOmega|
    double fitted_remainder_exponent = 0.0;
    std::pair<double, double> h_range{0.0, 0.0};
    double residual_norm = 0.0;
};

/// Weighted (w = h^{d-1}) least squares of residual1 against -h^{-d+1} with an
/// intercept, and the log-log slope of |residual2| vs h over all but the three
/// largest h.
FitReport fit_second_term(const SweepResult& sweep, const Domain& domain);

/// `count` log-spaced values from start to stop inclusive.
std::vector<double> log_grid(double start, double stop, int count);

void write_sweep_csv(std::ostream& out, const SweepResult& sweep);
std::string fit_report_json(const FitReport& report);

} // namespace weyl
