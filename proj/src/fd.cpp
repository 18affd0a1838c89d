#include "weyl/fd.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "weyl/errors.hpp"
#include "weyl/parallel.hpp"

namespace weyl {
namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Factor = Eigen::SimplicialLDLT<SpMat, Eigen::Lower, Eigen::AMDOrdering<int>>;

// Holds a symbolic analysis so repeated shifts only refactorize.
class ShiftedSolver {
public:
    ShiftedSolver(const GridOperator& op, const FdConfig& cfg) : op_(op), cfg_(cfg) {
        ldlt_.analyzePattern(op.matrix);
    }

    // Factorize A - sigma I, nudging sigma upward on pivot breakdown.
    InertiaCount factorize(double sigma) {
        const double norm = op_.norm_bound();
        InertiaCount out;
        for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
            const double s = sigma + attempt * cfg_.perturbation * norm;
            ldlt_.setShift(-s);
            ldlt_.factorize(op_.matrix);
            if (ldlt_.info() != Eigen::Success) continue;
            const auto& dvec = ldlt_.vectorD();
            if ((dvec.array().abs() < cfg_.pivot_tolerance * norm).any()) continue;
            out.count = static_cast<std::size_t>((dvec.array() < 0.0).count());
            out.shift_used = s;
            out.retries = attempt;
            return out;
        }
        throw ConvergenceError("count_below: factorization broke down near threshold", sigma,
                               cfg_.max_retries * cfg_.perturbation * norm);
    }

    Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const { return ldlt_.solve(rhs); }

private:
    const GridOperator& op_;
    const FdConfig& cfg_;
    Factor ldlt_;
};

struct Slice {
    double lo, hi;            // eigenvalues in [lo, hi)
    std::size_t below_lo;     // count strictly below lo
    std::size_t count;
};

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& y) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
    return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

// k-th smallest eigenvalue (1-based overall index) by bisection on inertia counts.
double bisect_eigenvalue(ShiftedSolver& solver, std::size_t index, double lo, double hi) {
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (solver.factorize(mid).count >= index) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> solve_slice(const GridOperator& op, const FdConfig& cfg, const Slice& slice,
                                std::uint64_t seed) {
    ShiftedSolver solver(op, cfg);
    const auto n = static_cast<Eigen::Index>(op.size());
    const auto m = static_cast<Eigen::Index>(slice.count);
    const Eigen::Index p = std::min<Eigen::Index>(n, m + std::max<Eigen::Index>(8, m / 2));
    const double sigma = 0.5 * (slice.lo + slice.hi);
    solver.factorize(sigma);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd x(n, p);
    for (Eigen::Index j = 0; j < p; ++j)
        for (Eigen::Index i = 0; i < n; ++i) x(i, j) = gauss(rng);
    x = orthonormalize(x);

    std::vector<double> found;
    for (int it = 0; it < cfg.max_iterations; ++it) {
        const Eigen::MatrixXd q = orthonormalize(solver.solve(x));
        const Eigen::MatrixXd aq = op.matrix * q;
        const Eigen::MatrixXd h = q.transpose() * aq;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (h + h.transpose()));
        const Eigen::VectorXd& theta = es.eigenvalues();
        x = q * es.eigenvectors();
        const Eigen::MatrixXd resid = aq * es.eigenvectors() - x * theta.asDiagonal();

        found.clear();
        bool converged = true;
        for (Eigen::Index k = 0; k < p; ++k) {
            if (theta[k] < slice.lo || theta[k] >= slice.hi) continue;
            found.push_back(theta[k]);
            if (resid.col(k).norm() > cfg.residual_tolerance * std::max(1.0, theta[k])) converged = false;
        }
        if (converged && found.size() == slice.count) return found;
    }

    // Iteration stalled (tight cluster at the slice edge): fall back to bisection.
    found.clear();
    for (std::size_t k = 1; k <= slice.count; ++k)
        found.push_back(bisect_eigenvalue(solver, slice.below_lo + k, slice.lo, slice.hi));
    return found;
}

} // namespace

GridOperator assemble(const Domain& domain, double step) {
    if (domain.dimension() != 2) throw DomainError("assemble: finite differences are planar only");
    if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("assemble: step must be positive");
    const auto [lo, hi] = domain.bounding_box();
    const long i0 = static_cast<long>(std::ceil(lo[0] / step)), i1 = static_cast<long>(std::floor(hi[0] / step));
    const long j0 = static_cast<long>(std::ceil(lo[1] / step)), j1 = static_cast<long>(std::floor(hi[1] / step));
    if ((i1 - i0 + 1) * (j1 - j0 + 1) > 50'000'000L) throw ResourceError("assemble: grid too large");

    GridOperator op{domain, step, {}, {}};
    std::map<std::pair<long, long>, int> index;
    Point x(2);
    for (long i = i0; i <= i1; ++i)
        for (long j = j0; j <= j1; ++j) {
            x << i * step, j * step;
            if (!domain.contains(x) || distance_to_boundary(domain, x) <= 1e-9 * step) continue;
            index.emplace(std::make_pair(i, j), static_cast<int>(op.nodes.size()));
            op.nodes.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    if (op.nodes.empty()) throw DomainError("assemble: no interior grid nodes at this step");

    const double s = 1.0 / (step * step);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(5 * op.nodes.size());
    for (std::size_t r = 0; r < op.nodes.size(); ++r) {
        const long i = op.nodes[r].x(), j = op.nodes[r].y();
        trip.emplace_back(r, r, 4.0 * s);
        for (auto [di, dj] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) {
            auto it = index.find({i + di, j + dj});
            if (it != index.end()) trip.emplace_back(r, it->second, -s);
        }
    }
    op.matrix.resize(op.nodes.size(), op.nodes.size());
    op.matrix.setFromTriplets(trip.begin(), trip.end());
    op.matrix.makeCompressed();
    return op;
}

InertiaCount count_below(const GridOperator& op, double threshold, const FdConfig& config) {
    if (!std::isfinite(threshold)) throw DomainError("count_below: threshold must be finite");
    // Gershgorin: spectrum lies in (0, ||A||]
    if (threshold <= 0.0) return {0, threshold, 0};
    if (threshold > op.norm_bound()) return {op.size(), threshold, 0};
    ShiftedSolver solver(op, config);
    return solver.factorize(threshold);
}

std::vector<double> eigenvalues_below(const GridOperator& op, double threshold, const FdConfig& config) {
    const InertiaCount total = count_below(op, threshold, config);
    if (total.count > config.budget)
        throw ResourceError("eigenvalues_below: " + std::to_string(total.count) +
                            " eigenvalues exceed the budget of " + std::to_string(config.budget));
    if (total.count == 0) return {};

    // Bisect [0, threshold) until every slice holds at most slice_size eigenvalues.
    std::vector<Slice> done;
    std::vector<Slice> todo{{0.0, total.shift_used, 0, total.count}};
    ShiftedSolver counter(op, config);
    while (!todo.empty()) {
        Slice s = todo.back();
        todo.pop_back();
        if (s.count == 0) continue;
        if (s.count <= config.slice_size || s.hi - s.lo < 1e-12 * s.hi) {
            done.push_back(s);
            continue;
        }
        const InertiaCount mid = counter.factorize(0.5 * (s.lo + s.hi));
        todo.push_back({mid.shift_used, s.hi, mid.count, s.below_lo + s.count - mid.count});
        todo.push_back({s.lo, mid.shift_used, s.below_lo, mid.count - s.below_lo});
    }
    std::sort(done.begin(), done.end(), [](const Slice& a, const Slice& b) { return a.lo < b.lo; });

    std::vector<std::vector<double>> parts(done.size());
    parallel_for(done.size(), [&](std::size_t k) { parts[k] = solve_slice(op, config, done[k], 0x5eed + k); });

    std::vector<double> out;
    out.reserve(total.count);
    for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
    std::sort(out.begin(), out.end());
    return out;
}

Spectrum fd_spectrum(const Domain& domain, double step, double threshold, const FdConfig& config) {
    const GridOperator op = assemble(domain, step);
    Spectrum s;
    s.eigenvalues = eigenvalues_below(op, threshold, config);
    s.cutoff = threshold;
    s.provenance = Provenance::FiniteDifference;
    s.grid_step = step;
    return s;
}

} // namespace weyl
