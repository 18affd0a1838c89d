#pragma once

#include <Eigen/SparseCore>
#include <cstddef>
#include <vector>

#include "weyl/domain.hpp"
#include "weyl/spectrum.hpp"

namespace weyl {

/// Fixed numerical constants of the finite-difference solver.
struct FdConfig {
    double pivot_tolerance = 1e-12;   // relative to ||A||: smaller |D_ii| counts as breakdown
    double perturbation = 1e-10;      // relative to ||A||: threshold nudge on breakdown
    int max_retries = 8;
    std::size_t slice_size = 64;      // eigenvalues per slice
    std::size_t budget = 100'000;     // cap on eigenvalues_below
    int max_iterations = 400;         // subspace iterations per slice
    double residual_tolerance = 1e-10;
};

/// 5-point Dirichlet Laplacian on the lattice step * Z^2 restricted to a planar domain.
struct GridOperator {
    Domain domain;
    double step = 0.0;
    std::vector<Eigen::Vector2i> nodes;      // lattice indices, lexicographic in (i, j)
    Eigen::SparseMatrix<double> matrix;      // lower and upper parts stored

    std::size_t size() const { return nodes.size(); }
    /// Gershgorin bound 8 / step^2 on the spectral radius.
    double norm_bound() const { return 8.0 / (step * step); }
    Eigen::Vector2d position(std::size_t row) const { return step * nodes[row].cast<double>(); }
};

/// Interior nodes are lattice points strictly inside the domain (farther than
/// 1e-9 * step from the boundary). Throws DomainError on an empty interior.
GridOperator assemble(const Domain& domain, double step);

struct InertiaCount {
    std::size_t count = 0;
    double shift_used = 0.0;   // threshold actually factorized
    int retries = 0;
};

/// Number of eigenvalues of the grid matrix strictly below `threshold`, from the
/// signs of D in the sparse LDL^T factorization of A - threshold I.
InertiaCount count_below(const GridOperator& op, double threshold, const FdConfig& config = {});

/// All eigenvalues below `threshold` in ascending order, by slicing with
/// count_below and shift-invert subspace iteration inside each slice.
/// Throws ResourceError when the count exceeds config.budget.
std::vector<double> eigenvalues_below(const GridOperator& op, double threshold,
                                      const FdConfig& config = {});

/// eigenvalues_below packaged as a Spectrum with finite-difference provenance.
Spectrum fd_spectrum(const Domain& domain, double step, double threshold, const FdConfig& config = {});

} // namespace weyl
