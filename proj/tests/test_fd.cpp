#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "weyl/constants.hpp"
#include "weyl/errors.hpp"
#include "weyl/fd.hpp"

using namespace weyl;
constexpr double pi = std::numbers::pi;

Eigen::VectorXd dense_spectrum(const GridOperator& op) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(op.matrix), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

Domain l_shape() {
    return Domain::polygon({{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}});
}

TEST_CASE("unit square at step 1/4") {
    const GridOperator op = assemble(Domain::square(1.0), 0.25);
    REQUIRE(op.size() == 9);
    std::vector<double> ref;
    for (int k = 1; k <= 3; ++k)
        for (int m = 1; m <= 3; ++m) ref.push_back(16 * (4 - 2 * std::cos(k * pi / 4) - 2 * std::cos(m * pi / 4)));
    std::sort(ref.begin(), ref.end());
    const auto got = eigenvalues_below(op, 1000.0);
    REQUIRE(got.size() == 9);
    for (int i = 0; i < 9; ++i) CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-10));
    CHECK(got[0] == doctest::Approx(18.745166004060955));
}

TEST_CASE("matrix is symmetric with lexicographic node order") {
    const GridOperator op = assemble(l_shape(), 1.0 / 16);
    const Eigen::MatrixXd a(op.matrix);
    CHECK((a - a.transpose()).norm() == 0.0);
    for (std::size_t r = 1; r < op.size(); ++r) {
        const auto& p = op.nodes[r - 1];
        const auto& q = op.nodes[r];
        CHECK((p.x() < q.x() || (p.x() == q.x() && p.y() < q.y())));
    }
    for (std::size_t r = 0; r < op.size(); ++r) CHECK(l_shape().contains(Point(op.position(r))));
}

TEST_CASE("smallest eigenvalue tends to 2 pi^2") {
    std::vector<double> lam;
    for (double s : {1.0 / 32, 1.0 / 64, 1.0 / 128}) lam.push_back(eigenvalues_below(assemble(Domain::square(1.0), s), 25.0).at(0));
    // O(step^2) error: Richardson with ratio 4
    const double r1 = (4 * lam[1] - lam[0]) / 3, r2 = (4 * lam[2] - lam[1]) / 3;
    CHECK(std::abs(r2 - 2 * pi * pi) < 1e-4);
    CHECK(std::abs(r2 - 2 * pi * pi) < std::abs(r1 - 2 * pi * pi) + 1e-12);
    CHECK(lam[2] < 2 * pi * pi);
}

TEST_CASE("inertia counts equal dense counts") {
    std::mt19937_64 rng(5);
    for (const auto& [dom, step] : {std::pair{Domain::square(1.0), 1.0 / 32}, std::pair{l_shape(), 1.0 / 40},
                                     std::pair{Domain::disk(1.0), 1.0 / 16}}) {
        const GridOperator op = assemble(dom, step);
        REQUIRE(op.size() <= 2000);
        const Eigen::VectorXd ev = dense_spectrum(op);
        std::uniform_real_distribution<double> thr(0.0, 1.05 * ev.maxCoeff());
        std::size_t prev = 0;
        std::vector<double> ts;
        for (int k = 0; k < 20; ++k) ts.push_back(thr(rng));
        std::sort(ts.begin(), ts.end());
        for (double t : ts) {
            const std::size_t dense = (ev.array() < t).count();
            const InertiaCount c = count_below(op, t);
            CHECK(c.count == dense);
            CHECK(c.count >= prev);
            prev = c.count;
        }
        CHECK(count_below(op, 1.0).count == 0);
        CHECK(count_below(op, 1e9).count == op.size());
    }
}

TEST_CASE("eigenvalues_below matches the dense solve element-wise") {
    const GridOperator op = assemble(Domain::square(1.0), 1.0 / 32);
    const Eigen::VectorXd ev = dense_spectrum(op);
    const auto got = eigenvalues_below(op, 100.0);
    REQUIRE(got.size() == static_cast<std::size_t>((ev.array() < 100.0).count()));
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - ev[i]) < 1e-8 * ev[i]);

    // many slices
    FdConfig cfg;
    cfg.slice_size = 8;
    const auto many = eigenvalues_below(op, 1500.0, cfg);
    REQUIRE(many.size() == static_cast<std::size_t>((ev.array() < 1500.0).count()));
    for (std::size_t i = 0; i < many.size(); ++i) CHECK(std::abs(many[i] - ev[i]) < 1e-8 * ev[i]);
    CHECK(eigenvalues_below(op, 5.0).empty());
}

TEST_CASE("L-shape spectrum against the dense solve") {
    const GridOperator op = assemble(l_shape(), 1.0 / 32);
    const Eigen::VectorXd ev = dense_spectrum(op);
    const auto got = eigenvalues_below(op, 400.0);
    REQUIRE(got.size() == static_cast<std::size_t>((ev.array() < 400.0).count()));
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - ev[i]) < 1e-8 * ev[i]);
}

TEST_CASE("discrete Berezin bound on the L-shape") {
    const Spectrum s = fd_spectrum(l_shape(), 1.0 / 128, 400.0);
    const double l2 = constants(2).L_d;
    for (double lam : {100.0, 200.0, 400.0}) {
        double riesz = 0.0;
        for (double e : s.eigenvalues)
            if (e < lam) riesz += 1.0 - e / lam;
        CHECK(riesz < l2 * 0.75 * lam);
    }
    CHECK(s.provenance_label() == "finite-difference(0.0078125)");
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(assemble(Domain::square(1.0), 2.0), DomainError);
    CHECK_THROWS_AS(assemble(Domain::box({1.0, 1.0, 1.0}), 0.1), DomainError);
    CHECK_THROWS_AS(Domain::polygon({{0, 0}, {1, 0}, {2, 0}}), DomainError);
    FdConfig cfg;
    cfg.budget = 5;
    CHECK_THROWS_AS(eigenvalues_below(assemble(Domain::square(1.0), 1.0 / 16), 500.0, cfg), ResourceError);
}
