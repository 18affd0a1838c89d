// weylcli: batch front-end for sweeps, fits, half-space checks, localization
// diagnostics and finite-difference spectra.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "weyl/constants.hpp"
#include "weyl/domain.hpp"
#include "weyl/errors.hpp"
#include "weyl/fd.hpp"
#include "weyl/functionals.hpp"
#include "weyl/halfspace.hpp"
#include "weyl/localization.hpp"
#include "weyl/parallel.hpp"
#include "weyl/spectrum.hpp"

namespace {

using nlohmann::ordered_json;
using namespace weyl;

class ConfigError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "config"; }
};

int exit_code(const Error& e) {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DomainError*>(&e)) return 2;
    if (dynamic_cast<const InvariantViolation*>(&e)) return 3;
    return 4;
}

void report_error(const std::string& kind, const std::string& message, ordered_json extra = {}) {
    ordered_json j;
    j["error"] = kind;
    j["message"] = message;
    for (auto& [k, v] : extra.items()) j[k] = v;
    std::cerr << j.dump() << '\n';
}

std::vector<double> parse_h_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 4 || parts[0] != "log")
        throw ConfigError("--h expects log:START:STOP:COUNT, got '" + spec + "'");
    double start = 0, stop = 0;
    int count = 0;
    try {
        std::size_t pos = 0;
        start = std::stod(parts[1], &pos);
        if (pos != parts[1].size()) throw std::invalid_argument(parts[1]);
        stop = std::stod(parts[2], &pos);
        if (pos != parts[2].size()) throw std::invalid_argument(parts[2]);
        count = std::stoi(parts[3], &pos);
        if (pos != parts[3].size()) throw std::invalid_argument(parts[3]);
    } catch (const std::logic_error&) {
        throw ConfigError("--h: cannot parse '" + spec + "'");
    }
    if (!(start > 0.0) || !(stop > 0.0) || !(start > stop) || count < 2 || !std::isfinite(start))
        throw ConfigError("--h: grid must be positive and strictly decreasing with COUNT >= 2");
    return log_grid(start, stop, count);
}

Domain parse_domain(const std::string& spec) {
    try {
        return parse_domain_spec(spec);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

// Exact spectrum for box/disk/ball, finite differences for polygons.
Spectrum spectrum_for(const Domain& domain, double cutoff, double fd_step) {
    if (std::holds_alternative<Polygon>(domain.shape())) {
        FdConfig cfg;
        cfg.budget = kDefaultEigenvalueBudget;
        return fd_spectrum(domain, fd_step, cutoff, cfg);
    }
    return exact_spectrum(domain, cutoff);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    return out;
}

// Writes to the file if a path is given, else to stdout.
template <class Writer>
void emit(const std::string& path, Writer&& write) {
    if (path.empty()) {
        write(std::cout);
    } else {
        auto out = open_out(path);
        write(out);
    }
}

struct Options {
    double tol = -1.0;   // negative: per-command default
    int threads = 0;

    int d = 2;
    std::string domain;
    std::string h;
    std::string out;
    std::string spectrum_out;
    double fd_step = 1.0 / 64;
    std::string check = "boundary-coefficient";
    double T = 200.0;
    std::vector<double> ts;
    double l0 = 0.1;
    std::size_t samples = 1000;
    std::size_t norm_points = 20;
    double step = 1.0 / 32;
    double threshold = 100.0;
};

double tol_or(const Options& o, double fallback) { return o.tol > 0.0 ? o.tol : fallback; }

int run_constants(const Options& o) {
    const Constants c = constants(o.d);
    ordered_json j;
    j["d"] = c.d;
    j["omega_d"] = c.omega_d;
    j["C_d"] = c.C_d;
    j["L_d"] = c.L_d;
    emit(o.out, [&](std::ostream& s) { s << j.dump(2) << '\n'; });
    return 0;
}

SweepResult run_sweep_core(const Options& o, Domain& domain_out, Spectrum& spectrum_out) {
    if (o.domain.empty()) throw ConfigError("--domain is required");
    domain_out = parse_domain(o.domain);
    const std::vector<double> grid = parse_h_grid(o.h);
    const double cutoff = 1.01 / (grid.back() * grid.back());
    spectrum_out = spectrum_for(domain_out, cutoff, o.fd_step);
    return sweep(domain_out, spectrum_out, grid);
}

int run_sweep(const Options& o) {
    Domain domain = Domain::square(1.0);
    Spectrum spectrum;
    const SweepResult result = run_sweep_core(o, domain, spectrum);

    if (!o.spectrum_out.empty()) {
        emit(o.spectrum_out, [&](std::ostream& s) { write_spectrum_csv(s, spectrum); });
        emit(o.spectrum_out + ".json", [&](std::ostream& s) { s << spectrum_sidecar_json(spectrum) << '\n'; });
    }
    emit(o.out, [&](std::ostream& s) { write_sweep_csv(s, result); });

    // FD spectra carry discretization bias; the Berezin bound is only asserted on exact ones.
    if (spectrum.provenance != Provenance::FiniteDifference) {
        std::vector<double> hs;
        for (const auto& r : result.records) hs.push_back(r.h);
        berezin_check(spectrum, domain, hs);
    }
    if (!o.out.empty()) {
        ordered_json j;
        j["domain"] = domain.id();
        j["rows"] = result.records.size();
        j["cutoff"] = spectrum.cutoff;
        j["eigenvalues"] = spectrum.size();
        j["provenance"] = spectrum.provenance_label();
        std::cout << j.dump() << '\n';
    }
    return 0;
}

int run_fit(const Options& o) {
    Domain domain = Domain::square(1.0);
    Spectrum spectrum;
    const SweepResult result = run_sweep_core(o, domain, spectrum);
    const FitReport report = fit_second_term(result, domain);
    emit(o.out, [&](std::ostream& s) { s << fit_report_json(report) << '\n'; });
    return 0;
}

int run_halfspace(const Options& o) {
    ordered_json j;
    j["d"] = o.d;
    j["check"] = o.check;
    if (o.check == "boundary-coefficient") {
        const double tol = tol_or(o, 1e-4);
        const BoundaryCoefficient bc = boundary_coefficient(o.d, o.T, tol);
        j["T"] = o.T;
        j["value"] = bc.value;
        j["partial"] = bc.partial;
        j["achieved_tolerance"] = bc.error_estimate;
        j["reference"] = constants(o.d - 1).L_d / 4.0;
    } else if (o.check == "tail-bound") {
        const double tol = tol_or(o, 1e-3);
        const TailBound tb = tail_bound_check(o.d, {}, tol);
        j["value"] = tb.value;
        j["horizons"] = tb.horizons;
        j["raw"] = tb.raw;
        j["extrapolated"] = tb.extrapolated;
        j["stability"] = tb.stability;
    } else if (o.check == "cosine") {
        const std::vector<double> ts = o.ts.empty() ? std::vector<double>{0.5, 1, 2, 5, 10} : o.ts;
        ordered_json rows = ordered_json::array();
        for (double t : ts) {
            ordered_json r;
            r["t"] = t;
            r["bessel"] = cosine_integral_bessel(o.d, t);
            r["quadrature"] = cosine_integral_quadrature(o.d, t);
            r["difference"] = std::abs(r["bessel"].get<double>() - r["quadrature"].get<double>());
            cosine_integral(o.d, t);   // raises on disagreement
            rows.push_back(r);
        }
        j["values"] = rows;
    } else if (o.check == "profile") {
        std::vector<double> ts;
        const int n = static_cast<int>(std::ceil(o.T / 0.1));
        for (int i = 0; i <= n; ++i) ts.push_back(i * o.T / n);
        emit(o.out, [&](std::ostream& s) { write_profile_csv(s, o.d, ts); });
        return 0;
    } else {
        throw ConfigError("--check must be boundary-coefficient, tail-bound, cosine or profile");
    }
    emit(o.out, [&](std::ostream& s) { s << j.dump(2) << '\n'; });
    return 0;
}

int run_localize(const Options& o) {
    if (o.domain.empty()) throw ConfigError("--domain is required");
    if (!(o.l0 > 0.0 && o.l0 <= 1.0)) throw ConfigError("--l0 must lie in (0, 1]");
    const Domain domain = parse_domain(o.domain);
    const ScaleFunction sf(domain, o.l0);
    const auto points = sample_points(domain, o.samples, o.l0, 20240601);
    const ScaleBoundReport bounds = check_scale_bounds(sf, points);
    emit(o.out, [&](std::ostream& s) { write_scale_csv(s, sf, points); });

    const double tol = tol_or(o, 1e-3);
    const auto norm_pts = sample_points(domain, o.norm_points, o.l0, 20240602);
    double worst = 0.0;
    for (const Point& x : norm_pts) worst = std::max(worst, std::abs(normalization_check(sf, x, tol).value - 1.0));

    ordered_json j;
    j["domain"] = domain.id();
    j["l0"] = o.l0;
    j["samples"] = bounds.samples;
    j["collar_points"] = bounds.collar_points;
    j["violations"] = {{"lower_l0", bounds.lower_l0},
                       {"upper_half", bounds.upper_half},
                       {"lower_distance", bounds.lower_distance},
                       {"collar", bounds.collar}};
    j["normalization_points"] = norm_pts.size();
    j["normalization_max_deviation"] = worst;
    std::cout << j.dump(2) << '\n';
    if (bounds.violations() > 0)
        throw InvariantViolation("scale-function bounds violated at " + std::to_string(bounds.violations()) + " points");
    return 0;
}

int run_fd(const Options& o) {
    if (o.domain.empty()) throw ConfigError("--domain is required");
    const Domain domain = parse_domain(o.domain);
    const Spectrum s = fd_spectrum(domain, o.step, o.threshold);
    emit(o.out, [&](std::ostream& out) { write_spectrum_csv(out, s); });
    if (!o.out.empty()) emit(o.out + ".json", [&](std::ostream& out) { out << spectrum_sidecar_json(s) << '\n'; });
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semiclassical spectral asymptotics toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_help_flag("--help", "Print this help message and exit");
    Options o;
    app.add_option("--tol", o.tol, "Tolerance override for the selected check")->check(CLI::PositiveNumber);
    app.add_option("--threads", o.threads, "Worker thread cap (0 = all cores)")->check(CLI::NonNegativeNumber);

    auto* c_const = app.add_subcommand("constants", "omega_d, C_d and L_d as JSON");
    c_const->add_option("--d", o.d, "Dimension")->check(CLI::Range(1, 64));
    c_const->add_option("--out", o.out);

    auto* c_sweep = app.add_subcommand("sweep", "Counting function, Riesz mean and Weyl residuals over an h-grid");
    auto* c_fit = app.add_subcommand("fit", "Fit the second Weyl coefficient and the remainder exponent");
    for (auto* c : {c_sweep, c_fit}) {
        c->add_option("--domain", o.domain, "square:a | box:a,b | disk:R | ball:R | polygon:file.json")->required();
        c->add_option("--h", o.h, "log:START:STOP:COUNT")->required();
        c->add_option("--out", o.out);
        c->add_option("--fd-step", o.fd_step, "Grid step for polygon domains")->check(CLI::PositiveNumber);
    }
    c_sweep->add_option("--spectrum-out", o.spectrum_out, "Spectrum CSV (sidecar JSON alongside)");

    auto* c_half = app.add_subcommand("halfspace", "Half-space boundary-layer checks");
    c_half->add_option("--d", o.d)->check(CLI::Range(2, 32));
    c_half->add_option("--check", o.check, "boundary-coefficient | tail-bound | cosine | profile");
    c_half->add_option("--T", o.T, "Integration horizon / profile extent")->check(CLI::PositiveNumber);
    c_half->add_option("--t", o.ts, "Evaluation points for --check cosine");
    c_half->add_option("--out", o.out);

    auto* c_loc = app.add_subcommand("localize", "Scale-function bounds and partition normalization");
    c_loc->add_option("--domain", o.domain)->required();
    c_loc->add_option("--l0", o.l0);
    c_loc->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
    c_loc->add_option("--norm-points", o.norm_points);
    c_loc->add_option("--out", o.out, "Per-sample CSV (u, l, dist, flags)");

    auto* c_fd = app.add_subcommand("fd", "Finite-difference Dirichlet spectrum below a threshold");
    c_fd->add_option("--domain", o.domain)->required();
    c_fd->add_option("--step", o.step)->check(CLI::PositiveNumber);
    c_fd->add_option("--threshold", o.threshold)->check(CLI::PositiveNumber);
    c_fd->add_option("--out", o.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("config", e.what());
        return 2;
    }

    set_max_threads(o.threads);
    try {
        if (c_const->parsed()) return run_constants(o);
        if (c_sweep->parsed()) return run_sweep(o);
        if (c_fit->parsed()) return run_fit(o);
        if (c_half->parsed()) return run_halfspace(o);
        if (c_loc->parsed()) return run_localize(o);
        if (c_fd->parsed()) return run_fd(o);
    } catch (const CompletenessError& e) {
        report_error(e.kind(), e.what(), {{"threshold", e.threshold}, {"cutoff", e.cutoff}});
        return exit_code(e);
    } catch (const ConvergenceError& e) {
        report_error(e.kind(), e.what(), {{"estimate", e.estimate}, {"achieved", e.achieved}});
        return exit_code(e);
    } catch (const Error& e) {
        report_error(e.kind(), e.what());
        return exit_code(e);
    } catch (const std::exception& e) {
        report_error("internal", e.what());
        return 4;
    }
    return 2;
}
