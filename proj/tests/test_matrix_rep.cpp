#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finsec/matrix_rep.hpp"

#include <cmath>
#include <random>
#include <thread>

using namespace finsec;

namespace {

InfiniteMatrixRep fourier_rep(const std::string& name,
                              const QuadratureRule& rule = QuadratureRule::default_rule()) {
    const OrthonormalBasis fourier(BasisFamily::Fourier);
    return InfiniteMatrixRep::from_operator(
        CompositionOperator(diffeo_from_name(name), fourier, fourier), rule);
}

} // namespace

TEST_CASE("identity map represents as the identity matrix") {
    const InfiniteMatrixRep rep = fourier_rep("identity");
    for (int i = 1; i <= 12; ++i) {
        for (int j = 1; j <= 12; ++j) {
            CHECK(std::abs(rep.entry(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-10);
        }
    }
}

TEST_CASE("constants map to constants for every catalog operator") {
    for (const std::string& name : diffeo_catalog_names()) {
        const InfiniteMatrixRep rep = fourier_rep(name);
        CHECK(std::abs(rep.entry(1, 1) - 1.0) <= 1e-10);
    }
}

TEST_CASE("entries agree with a 10x refined quadrature oracle") {
    const InfiniteMatrixRep rep = fourier_rep("poly-quadratic");
    const InfiniteMatrixRep oracle =
        fourier_rep("poly-quadratic", QuadratureRule::default_rule().refined(10));
    CHECK(std::abs(rep.entry(2, 2) - oracle.entry(2, 2)) <= 1e-9);
    const DenseMatrix got = rep.section(4, 4);
    const DenseMatrix want = oracle.section(4, 4);
    CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("sections of exact fixtures") {
    const InfiniteMatrixRep id = identity_rep();
    CHECK((id.section(3, 3) - DenseMatrix::Identity(3, 3)).norm() == 0.0);
    CHECK(id.section(1, 1)(0, 0) == 1.0);

    const InfiniteMatrixRep banded = shift_banded_rep(0.5);
    const DenseMatrix b = banded.section(3, 2);
    CHECK(b(0, 0) == 1.0);
    CHECK(b(1, 0) == 0.5);
    CHECK(b(2, 1) == 0.5);
    CHECK(b(0, 1) == 0.0);

    CHECK(harmonic_diagonal_rep().entry(4, 4) == 0.25);
}

TEST_CASE("entry validation") {
    const InfiniteMatrixRep id = identity_rep();
    CHECK_THROWS_AS(id.entry(0, 1), IndexOutOfRange);
    CHECK_THROWS_AS(id.entry(1, -2), IndexOutOfRange);
    CHECK_THROWS_AS(id.section(0, 3), IndexOutOfRange);

    const InfiniteMatrixRep bad = InfiniteMatrixRep::from_formula(
        "poison", [](int i, int j) { return i + j == 4 ? std::nan("") : 0.0; });
    CHECK_THROWS_AS(bad.entry(2, 2), NonFiniteValue);
}

TEST_CASE("cached entries are bit-identical to fresh computation") {
    const InfiniteMatrixRep warm = fourier_rep("poly-quadratic");
    const InfiniteMatrixRep cold = fourier_rep("poly-quadratic");

    // Populate the caches in different orders.
    (void)warm.section(6, 6);
    for (int j = 6; j >= 1; --j) {
        for (int i = 6; i >= 1; --i) {
            CHECK(warm.entry(i, j) == cold.entry(i, j));
        }
    }
    // Re-reads return the identical value.
    CHECK(warm.entry(3, 5) == warm.entry(3, 5));
}

TEST_CASE("concurrent reads and insertions stay consistent") {
    const InfiniteMatrixRep shared = fourier_rep("exp-warp");
    std::vector<std::thread> workers;
    for (int t = 0; t < 8; ++t) {
        workers.emplace_back([&shared, t]() {
            std::mt19937_64 rng(1000 + t);
            for (int k = 0; k < 400; ++k) {
                const int i = 1 + static_cast<int>(rng() % 20);
                const int j = 1 + static_cast<int>(rng() % 20);
                (void)shared.entry(i, j);
            }
        });
    }
    for (std::thread& w : workers) w.join();

    const InfiniteMatrixRep fresh = fourier_rep("exp-warp");
    for (int i = 1; i <= 20; ++i) {
        for (int j = 1; j <= 20; ++j) {
            CHECK(shared.entry(i, j) == fresh.entry(i, j));
        }
    }
}

TEST_CASE("schur report on exact fixtures") {
    const SchurReport id = identity_rep().schur_test(8);
    CHECK(id.alpha_hat == 1.0);
    CHECK(id.beta_hat == 1.0);
    CHECK(id.bound == 1.0);
    CHECK(id.truncation == 8);

    const SchurReport twice = scaled_identity_rep(2.0).schur_test(8);
    CHECK(twice.bound == 2.0);
}

TEST_CASE("truncated Schur bound dominates the section spectral norm") {
    const InfiniteMatrixRep rep = fourier_rep("poly-quadratic");
    const SchurReport report = rep.schur_test(32);
    CHECK(std::isfinite(report.bound));
    CHECK(report.bound >= sigma_max(rep.section(32, 32)) - 1e-8);
}

TEST_CASE("column tails of the identity fixture") {
    const InfiniteMatrixRep id = identity_rep();
    CHECK(id.column_tail(3, 4, 100) == 0.0);
    CHECK(id.column_tail(3, 1, 100) == 1.0);
    CHECK_THROWS_AS(id.column_tail(0, 1, 4), IndexOutOfRange);
    CHECK_THROWS_AS(id.column_tail(1, 5, 4), IndexOutOfRange);
}

TEST_CASE("column tails of a smooth operator decay to zero") {
    const InfiniteMatrixRep rep = fourier_rep("poly-quadratic");
    double prev = rep.column_tail(2, 1, 256);
    CHECK(prev > 1e-3); // the column has real mass
    for (int m = 2; m <= 256; m *= 2) {
        const double tail = rep.column_tail(2, m, 256);
        CHECK(tail < prev);
        prev = tail;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("section singular values are monotone in the row count") {
    const InfiniteMatrixRep rep = fourier_rep("poly-quadratic");
    const int n = 6;
    double prev_max = 0.0;
    double prev_min = 0.0;
    for (int m = 6; m <= 96; m *= 2) {
        const DenseMatrix block = rep.section(m, n);
        const double smax = sigma_max(block);
        const double smin = sigma_min(block);
        CHECK(smax >= prev_max - 1e-12);
        CHECK(smin >= prev_min - 1e-12);
        prev_max = smax;
        prev_min = smin;
    }
}

TEST_CASE("section spectral norms respect the analytic operator bound") {
    for (const std::string& name : diffeo_catalog_names()) {
        const OrthonormalBasis fourier(BasisFamily::Fourier);
        const CompositionOperator op(diffeo_from_name(name), fourier, fourier);
        const InfiniteMatrixRep rep =
            InfiniteMatrixRep::from_operator(op, QuadratureRule::default_rule());
        const double bound = op.norm_bounds().upper;
        for (int m = 4; m <= 64; m *= 2) {
            for (int n = 4; n <= 64; n *= 2) {
                CHECK(sigma_max(rep.section(m, n)) <= bound + 1e-6);
            }
        }
    }
}
