#include "weyl/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include <json.hpp>

#include "weyl/constants.hpp"
#include "weyl/errors.hpp"
#include "weyl/parallel.hpp"
#include "weyl/special.hpp"

namespace weyl {
namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

void check_cutoff(double cutoff) {
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw DomainError("spectrum cutoff must be positive and finite");
}

// Weyl-law estimate used to refuse hopeless requests before allocating.
void precheck_budget(int d, double volume, double cutoff, std::size_t budget) {
    const double estimate = constants(d).C_d * volume * std::pow(cutoff, 0.5 * d);
    if (estimate > 2.0 * static_cast<double>(budget) + 1000.0)
        throw ResourceError("eigenvalue count ~" + std::to_string(static_cast<long long>(estimate)) +
                            " exceeds budget " + std::to_string(budget));
}

class BudgetCounter {
public:
    explicit BudgetCounter(std::size_t budget) : budget_(budget) {}
    void add(std::size_t n) {
        if (count_.fetch_add(n) + n > budget_)
            throw ResourceError("eigenvalue count exceeds budget " + std::to_string(budget_));
    }

private:
    std::size_t budget_;
    std::atomic<std::size_t> count_{0};
};

// Depth-first lattice walk over dimensions [axis, d) with partial sum s of (m_j/a_j)^2.
void enumerate_box(const std::vector<double>& inv_sq, const std::vector<double>& tail_min,
                   std::size_t axis, double partial, double limit, std::vector<double>& out) {
    const std::size_t d = inv_sq.size();
    for (long long m = 1;; ++m) {
        const double s = partial + static_cast<double>(m * m) * inv_sq[axis];
        if (s + tail_min[axis + 1] >= limit) break;
        if (axis + 1 == d) {
            out.push_back(kPi2 * s);
        } else {
            enumerate_box(inv_sq, tail_min, axis + 1, s, limit, out);
        }
    }
}

std::vector<double> merge_sorted(std::vector<std::vector<double>>& parts) {
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    std::vector<double> all;
    all.reserve(total);
    for (auto& p : parts) {
        all.insert(all.end(), p.begin(), p.end());
        std::vector<double>().swap(p);
    }
    std::sort(all.begin(), all.end());
    return all;
}

// Squares of Bessel zeros for orders offset + n, n = 0, 1, ..., each with
// multiplicity mult(n).
template <class Mult>
std::vector<double> bessel_spectrum(double offset, double radius, double cutoff, std::size_t budget,
                                    Mult mult) {
    const double x_max = radius * std::sqrt(cutoff);
    // j_{nu,1} > nu, so no order beyond x_max contributes
    const std::size_t orders = offset < x_max ? static_cast<std::size_t>(std::ceil(x_max - offset)) : 0;
    std::vector<std::vector<double>> parts(orders);
    BudgetCounter counter(budget);
    parallel_for(orders, [&](std::size_t n) {
        const double nu = offset + static_cast<double>(n);
        std::vector<double>& local = parts[n];
        for (double z : bessel_zeros_below(nu, x_max)) {
            const double lambda = (z / radius) * (z / radius);
            if (lambda >= cutoff) continue;
            const std::size_t k = mult(n);
            counter.add(k);
            local.insert(local.end(), k, lambda);
        }
    });
    return merge_sorted(parts);
}

} // namespace

std::string Spectrum::provenance_label() const {
    switch (provenance) {
    case Provenance::ExactBox: return "exact-box";
    case Provenance::ExactBessel: return "exact-bessel";
    case Provenance::FiniteDifference: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "finite-difference(%.17g)", grid_step);
        return buf;
    }
    }
    return "unknown";
}

Spectrum Spectrum::restricted(double new_cutoff) const {
    if (new_cutoff > cutoff) throw CompletenessError(new_cutoff, cutoff);
    Spectrum out = *this;
    out.cutoff = new_cutoff;
    out.eigenvalues.erase(std::lower_bound(out.eigenvalues.begin(), out.eigenvalues.end(), new_cutoff),
                          out.eigenvalues.end());
    return out;
}

Spectrum Spectrum::scaled(double factor) const {
    if (!(factor > 0.0)) throw DomainError("spectrum scale factor must be positive");
    Spectrum out = *this;
    out.cutoff *= factor;
    for (double& v : out.eigenvalues) v *= factor;
    return out;
}

Spectrum box_spectrum(const std::vector<double>& sides, double cutoff, std::size_t budget) {
    check_cutoff(cutoff);
    const Domain box = Domain::box(sides);  // validates the sides
    precheck_budget(box.dimension(), box.volume(), cutoff, budget);

    const std::size_t d = sides.size();
    std::vector<double> inv_sq(d);
    for (std::size_t i = 0; i < d; ++i) inv_sq[i] = 1.0 / (sides[i] * sides[i]);
    // tail_min[i] = sum_{j >= i} 1/a_j^2, the least the remaining axes can add
    std::vector<double> tail_min(d + 1, 0.0);
    for (std::size_t i = d; i-- > 0;) tail_min[i] = tail_min[i + 1] + inv_sq[i];
    const double limit = cutoff / kPi2;

    const double lead_max = std::sqrt(std::max(0.0, limit - tail_min[1]) / inv_sq[0]);
    const std::size_t leads = static_cast<std::size_t>(std::ceil(lead_max)) + 1;
    std::vector<std::vector<double>> parts(leads);
    BudgetCounter counter(budget);
    parallel_for(leads, [&](std::size_t idx) {
        const double m = static_cast<double>(idx + 1);
        const double s = m * m * inv_sq[0];
        if (s + tail_min[1] >= limit) return;
        std::vector<double>& local = parts[idx];
        if (d == 1) {
            local.push_back(kPi2 * s);
        } else {
            enumerate_box(inv_sq, tail_min, 1, s, limit, local);
        }
        counter.add(local.size());
    });

    Spectrum out;
    out.eigenvalues = merge_sorted(parts);
    // rounding guard on the strict upper bound
    out.eigenvalues.erase(std::lower_bound(out.eigenvalues.begin(), out.eigenvalues.end(), cutoff),
                          out.eigenvalues.end());
    out.cutoff = cutoff;
    out.provenance = Provenance::ExactBox;
    return out;
}

Spectrum disk_spectrum(double radius, double cutoff, std::size_t budget) {
    check_cutoff(cutoff);
    if (!(radius > 0.0)) throw DomainError("disk radius must be positive");
    precheck_budget(2, std::numbers::pi * radius * radius, cutoff, budget);
    Spectrum out;
    out.eigenvalues = bessel_spectrum(0.0, radius, cutoff, budget,
                                      [](std::size_t n) -> std::size_t { return n == 0 ? 1 : 2; });
    out.cutoff = cutoff;
    out.provenance = Provenance::ExactBessel;
    return out;
}

Spectrum ball_spectrum(double radius, double cutoff, std::size_t budget) {
    check_cutoff(cutoff);
    if (!(radius > 0.0)) throw DomainError("ball radius must be positive");
    precheck_budget(3, 4.0 / 3.0 * std::numbers::pi * radius * radius * radius, cutoff, budget);
    Spectrum out;
    out.eigenvalues = bessel_spectrum(0.5, radius, cutoff, budget,
                                      [](std::size_t l) -> std::size_t { return 2 * l + 1; });
    out.cutoff = cutoff;
    out.provenance = Provenance::ExactBessel;
    return out;
}

Spectrum exact_spectrum(const Domain& domain, double cutoff, std::size_t budget) {
    return std::visit(
        [&](const auto& s) -> Spectrum {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Box>) {
                return box_spectrum(s.sides, cutoff, budget);
            } else if constexpr (std::is_same_v<T, Ball>) {
                if (s.dim == 2) return disk_spectrum(s.radius, cutoff, budget);
                if (s.dim == 3) return ball_spectrum(s.radius, cutoff, budget);
                throw DomainError("exact spectra exist for disks and 3-D balls only");
            } else {
                throw DomainError("no exact spectrum for domain " + domain.id());
            }
        },
        domain.shape());
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
    out << "lambda\n";
    char buf[40];
    for (double v : spectrum.eigenvalues) {
        std::snprintf(buf, sizeof buf, "%.17g\n", v);
        out << buf;
    }
}

std::string spectrum_sidecar_json(const Spectrum& spectrum) {
    nlohmann::ordered_json j;
    j["provenance"] = spectrum.provenance_label();
    j["cutoff"] = spectrum.cutoff;
    j["count"] = spectrum.size();
    return j.dump(2);
}

} // namespace weyl
