#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "weyl/domain.hpp"

namespace weyl {

enum class Provenance { ExactBox, ExactBessel, FiniteDifference };

/// Sorted Dirichlet eigenvalues (with multiplicity) in (0, cutoff).
/// For the exact provenances the list is complete below the cutoff.
struct Spectrum {
    std::vector<double> eigenvalues;
    double cutoff = 0.0;
    Provenance provenance = Provenance::ExactBox;
    double grid_step = 0.0;   // finite-difference only

    std::size_t size() const { return eigenvalues.size(); }
    bool empty() const { return eigenvalues.empty(); }

    /// "exact-box", "exact-bessel" or "finite-difference(<step>)".
    std::string provenance_label() const;

    /// The same spectrum with cutoff lowered to `new_cutoff` (<= cutoff).
    Spectrum restricted(double new_cutoff) const;

    /// Every eigenvalue multiplied by `factor` (> 0), cutoff included.
    Spectrum scaled(double factor) const;
};

/// Default cap on the number of stored eigenvalues.
inline constexpr std::size_t kDefaultEigenvalueBudget = 100'000'000;

/// pi^2 sum (m_i / a_i)^2 < cutoff over m_i >= 1, by exhaustive bounded lattice search.
Spectrum box_spectrum(const std::vector<double>& sides, double cutoff,
                      std::size_t budget = kDefaultEigenvalueBudget);

/// j_{nu,k}^2 / R^2 < cutoff, multiplicity 2 for nu >= 1.
Spectrum disk_spectrum(double radius, double cutoff,
                       std::size_t budget = kDefaultEigenvalueBudget);

/// j_{l+1/2,k}^2 / R^2 < cutoff with multiplicity 2l+1 (3-D ball).
Spectrum ball_spectrum(double radius, double cutoff,
                       std::size_t budget = kDefaultEigenvalueBudget);

/// Exact spectrum for a box, disk or 3-D ball domain.
Spectrum exact_spectrum(const Domain& domain, double cutoff,
                        std::size_t budget = kDefaultEigenvalueBudget);

/// CSV with header `lambda`, one eigenvalue per row.
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);
/// JSON sidecar: provenance, cutoff, count.
std::string spectrum_sidecar_json(const Spectrum& spectrum);

} // namespace weyl
