#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finsec/finite_section.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "test_util.hpp"

using namespace finsec;

namespace {

const OrthonormalBasis kFourier(BasisFamily::Fourier);

InfiniteMatrixRep poly_rep() {
    return InfiniteMatrixRep::from_operator(
        CompositionOperator(poly_quadratic_map(), kFourier, kFourier),
        QuadratureRule::default_rule());
}

RealFunction sin_cubed() {
    return [](double s) {
        const double v = std::sin(M_PI * s);
        return v * v * v;
    };
}

} // namespace

TEST_CASE("coefficient sources") {
    Vector v(3);
    v << 1.0, 2.0, 3.0;
    const CoefficientSource fixed = CoefficientSource::from_vector(v);
    CHECK(fixed.head(2)(1) == 2.0);
    CHECK_THROWS_AS(fixed.head(4), DimensionMismatch);

    const CoefficientSource formula =
        CoefficientSource::from_formula([](int k) { return 1.0 / k; });
    CHECK(formula.head(4)(3) == 0.25);

    const QuadratureRule rule = QuadratureRule::default_rule();
    const CoefficientSource fn = CoefficientSource::from_function(
        [](double s) { return kFourier.eval(3, s); }, kFourier, rule);
    const Vector head = fn.head(4);
    CHECK(std::abs(head(2) - 1.0) <= 1e-12);
    CHECK(std::abs(head(0)) <= 1e-12);
}

TEST_CASE("overdetermined solve on exact fixtures") {
    const CoefficientSource e2 =
        CoefficientSource::from_formula([](int k) { return k == 2 ? 1.0 : 0.0; });
    const SectionSolution sol = solve_overdetermined(identity_rep(), e2, 6, 3);
    CHECK(sol.method == SectionMethod::Overdetermined);
    CHECK(sol.m == 6);
    CHECK(sol.n == 3);
    CHECK((sol.coeffs - Vector{{0.0, 1.0, 0.0}}).norm() <= 1e-14);
    CHECK(sol.residual_norm <= 1e-14);

    // diag(1, 1/2, 1/3, ...) with y = ones: x_k = k on the first n
    // components, the remaining rows contribute a residual of sqrt(4) = 2.
    const CoefficientSource ones =
        CoefficientSource::from_formula([](int) { return 1.0; });
    const SectionSolution diag = solve_overdetermined(harmonic_diagonal_rep(), ones, 8, 4);
    CHECK((diag.coeffs - Vector{{1.0, 2.0, 3.0, 4.0}}).norm() <= 1e-12);
    CHECK(diag.residual_norm == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("underdetermined solve on exact fixtures") {
    const CoefficientSource e1 =
        CoefficientSource::from_formula([](int k) { return k == 1 ? 1.0 : 0.0; });
    const SectionSolution sol = solve_underdetermined(identity_rep(), e1, 2, 5);
    CHECK((sol.coeffs - Vector{{1.0, 0.0, 0.0, 0.0, 0.0}}).norm() <= 1e-14);
    CHECK(sol.residual_norm <= 1e-14);

    const InfiniteMatrixRep ones_row =
        InfiniteMatrixRep::from_formula("ones-row", [](int, int) { return 1.0; });
    const CoefficientSource two = CoefficientSource::from_vector(Vector{{2.0}});
    const SectionSolution sym = solve_underdetermined(ones_row, two, 1, 2);
    CHECK((sym.coeffs - Vector{{1.0, 1.0}}).norm() <= 1e-13);
    CHECK(sym.solution_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK(sym.residual_norm <= 1e-8 * (1.0 + 2.0));
}

TEST_CASE("manufactured problems are recovered through the operator") {
    const InfiniteMatrixRep rep = poly_rep();
    const auto& op = rep.source_operator();
    REQUIRE(op.has_value());
    const QuadratureRule rule = QuadratureRule::default_rule();
    const RealFunction f_true = [](double s) { return kFourier.eval(2, s); };
    const CoefficientSource y = forward_apply(*op, f_true, rule);

    const Vector x32 = coefficients(f_true, kFourier, 32, rule);
    const SectionSolution over = solve_overdetermined(rep, y, 64, 32);
    CHECK((over.coeffs - x32).norm() <= 1e-6);

    // The minimum-norm solution is the projection of the manufactured
    // solution onto the row span, so it satisfies the exact relation
    // |x - u|^2 = |x|^2 - |u|^2 and improves as rows are added; it does
    // not reproduce x itself at finite m.
    const Vector x64 = coefficients(f_true, kFourier, 64, rule);
    const SectionSolution under = solve_underdetermined(rep, y, 32, 64);
    const double gap2 = (x64 - under.coeffs).squaredNorm();
    const double pyth = x64.squaredNorm() - under.coeffs.squaredNorm();
    CHECK(std::abs(gap2 - pyth) <= 1e-9 * std::max(1.0, gap2));
    const SectionSolution coarse = solve_underdetermined(rep, y, 8, 64);
    CHECK((under.coeffs - x64).norm() < (coarse.coeffs - x64).norm());
}

TEST_CASE("solver dimension and rank errors") {
    const CoefficientSource ones =
        CoefficientSource::from_formula([](int) { return 1.0; });
    CHECK_THROWS_AS(solve_overdetermined(identity_rep(), ones, 3, 5), DimensionMismatch);
    CHECK_THROWS_AS(solve_underdetermined(identity_rep(), ones, 5, 3), DimensionMismatch);

    const InfiniteMatrixRep broken = diagonal_rep(
        "broken-diag", [](int k) { return k == 2 ? 0.0 : 1.0; });
    CHECK_THROWS_AS(solve_overdetermined(broken, ones, 6, 3), RankDeficient);
    CHECK_THROWS_AS(solve_underdetermined(broken, ones, 3, 6), RankDeficient);
}

TEST_CASE("padded distance zero-pads the shorter vector") {
    Vector a(2);
    a << 3.0, 4.0;
    Vector b(4);
    b << 3.0, 4.0, 0.0, 2.0;
    CHECK(padded_distance(a, b) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(padded_distance(b, a) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(padded_distance(a, a) == 0.0);
}

TEST_CASE("schedules") {
    const Schedule over = default_schedule(SectionMethod::Overdetermined);
    REQUIRE(over.size() == 5);
    CHECK(over.front() == std::pair{8, 4});
    CHECK(over.back() == std::pair{128, 64});

    const Schedule under = ratio_schedule(SectionMethod::Underdetermined, {2, 4}, 3);
    CHECK(under.front() == std::pair{2, 6});

    const CoefficientSource ones =
        CoefficientSource::from_formula([](int) { return 1.0; });
    CHECK_THROWS_AS(
        converge_over(identity_rep(), ones, {{4, 8}}, Vector::Zero(16)), ConfigError);
    CHECK_THROWS_AS(
        converge_under(identity_rep(), ones, {{8, 4}}, Vector::Zero(16)), ConfigError);
    CHECK_THROWS_AS(converge_over(identity_rep(), ones, {}, Vector::Zero(16)), ConfigError);
}

TEST_CASE("identity sweeps recover truncated coefficient vectors exactly") {
    Vector y = Vector::Zero(16);
    y << 0.8, -0.4, 0.2, -0.1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0;
    const CoefficientSource src = CoefficientSource::from_vector(y);
    Vector reference = Vector::Zero(256);
    reference.head(16) = y;

    for (const auto& recs :
         {converge_over(identity_rep(), src, default_schedule(SectionMethod::Overdetermined),
                        reference),
          converge_under(identity_rep(), src,
                         default_schedule(SectionMethod::Underdetermined), reference)}) {
        for (const ConvergenceRecord& rec : recs) {
            CHECK_FALSE(rec.failed);
            CHECK(rec.error_to_reference <= 1e-10);
        }
    }
}

TEST_CASE("diagonal sweeps show strict decrease and norm growth") {
    // diag(1, 1/2, 1/3, ...) with geometric y: x_k = k * 2^{-(k-1)}.
    const CoefficientSource y =
        CoefficientSource::from_formula([](int k) { return std::pow(0.5, k - 1); });
    Vector reference(16);
    for (int k = 1; k <= 16; ++k) reference(k - 1) = k * std::pow(0.5, k - 1);

    const std::vector<ConvergenceRecord> over = converge_over(
        harmonic_diagonal_rep(), y, ratio_schedule(SectionMethod::Overdetermined, {2, 4, 8}),
        reference);
    CHECK(over[0].error_to_reference > over[1].error_to_reference);
    CHECK(over[1].error_to_reference > over[2].error_to_reference);

    const std::vector<ConvergenceRecord> under = converge_under(
        harmonic_diagonal_rep(), y, ratio_schedule(SectionMethod::Underdetermined, {2, 4, 8}),
        reference);
    CHECK(under[0].solution_norm <= under[1].solution_norm + 1e-10);
    CHECK(under[1].solution_norm <= under[2].solution_norm + 1e-10);
}

TEST_CASE("manufactured smooth sweeps converge by an order of magnitude") {
    const InfiniteMatrixRep rep = poly_rep();
    const QuadratureRule rule = QuadratureRule::default_rule();
    const CoefficientSource y = forward_apply(*rep.source_operator(), sin_cubed(), rule);
    const Vector reference = coefficients(sin_cubed(), kFourier, 128, rule);

    const std::vector<ConvergenceRecord> over = converge_over(
        rep, y, ratio_schedule(SectionMethod::Overdetermined, {4, 8, 16, 32}), reference);
    for (std::size_t r = 1; r < over.size(); ++r) {
        CHECK(over[r].error_to_reference < over[r - 1].error_to_reference);
    }
    CHECK(over.back().error_to_reference < over.front().error_to_reference / 10.0);

    const std::vector<ConvergenceRecord> under = converge_under(
        rep, y, ratio_schedule(SectionMethod::Underdetermined, {4, 8, 16, 32}), reference);
    for (std::size_t r = 1; r < under.size(); ++r) {
        CHECK(under[r].error_to_reference < under[r - 1].error_to_reference);
    }
    CHECK(under.back().error_to_reference < under.front().error_to_reference / 10.0);
}

TEST_CASE("failed schedule rows are recorded, not fatal") {
    const InfiniteMatrixRep broken = diagonal_rep(
        "broken-diag", [](int k) { return k == 3 ? 0.0 : 1.0 / k; });
    const CoefficientSource ones =
        CoefficientSource::from_formula([](int) { return 1.0; });
    const std::vector<ConvergenceRecord> recs = converge_over(
        broken, ones, ratio_schedule(SectionMethod::Overdetermined, {2, 4, 8}),
        Vector::Zero(16));
    REQUIRE(recs.size() == 3);
    CHECK_FALSE(recs[0].failed); // n = 2 never touches the zero column
    CHECK(recs[1].failed);
    CHECK(recs[2].failed);
    CHECK(std::isnan(recs[1].error_to_reference));
    CHECK(!recs[1].message.empty());
}

TEST_CASE("overdetermined residual is nondecreasing in the row count") {
    const InfiniteMatrixRep rep = poly_rep();
    const CoefficientSource y =
        CoefficientSource::from_formula([](int k) { return 1.0 / (k * k); });
    double prev = -1.0;
    for (int m = 4; m <= 64; m *= 2) {
        const SectionSolution sol = solve_overdetermined(rep, y, m, 4);
        CHECK(sol.residual_norm >= prev - 1e-10);
        prev = sol.residual_norm;
    }
}

TEST_CASE("minimum-norm solution norm is nondecreasing in the row count") {
    const InfiniteMatrixRep rep = poly_rep();
    const QuadratureRule rule = QuadratureRule::default_rule();
    const CoefficientSource y = forward_apply(*rep.source_operator(), sin_cubed(), rule);
    double prev = 0.0;
    for (int m = 4; m <= 32; m *= 2) {
        const SectionSolution sol = solve_underdetermined(rep, y, m, 64);
        CHECK(sol.solution_norm >= prev - 1e-10);
        prev = sol.solution_norm;
    }
}

TEST_CASE("section-level minimum-norm Pythagoras") {
    const InfiniteMatrixRep rep = poly_rep();
    const CoefficientSource y =
        CoefficientSource::from_formula([](int k) { return 1.0 / k; });
    const int m = 6;
    const int n = 14;
    const SectionSolution sol = solve_underdetermined(rep, y, m, n);
    const DenseMatrix ns = nullspace(rep.section(m, n));
    REQUIRE(ns.cols() == n - m);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const Vector u =
            sol.coeffs + ns * testutil::random_vector(rng, static_cast<int>(ns.cols()));
        const double diff = (u - sol.coeffs).squaredNorm();
        const double split = u.squaredNorm() - sol.coeffs.squaredNorm();
        CHECK(std::abs(diff - split) <= 1e-9 * std::max(1.0, diff));
    }
}

TEST_CASE("both methods agree on well-conditioned square corners") {
    const InfiniteMatrixRep rep = poly_rep();
    const CoefficientSource y =
        CoefficientSource::from_formula([](int k) { return 1.0 / k; });
    for (int n = 2; n <= 16; n *= 2) {
        if (sigma_min(rep.section(n, n)) <= 1e-6) continue;
        const SectionSolution over = solve_overdetermined(rep, y, n, n);
        const SectionSolution under = solve_underdetermined(rep, y, n, n);
        CHECK((over.coeffs - under.coeffs).norm() <= 1e-8);
    }
}

TEST_CASE("solutions at fixed n form a Cauchy-like sequence in m") {
    const InfiniteMatrixRep rep = poly_rep();
    const QuadratureRule rule = QuadratureRule::default_rule();
    const CoefficientSource y = forward_apply(*rep.source_operator(), sin_cubed(), rule);
    const int n = 4;
    const int big_m = 16 * n;
    const Vector anchor = solve_overdetermined(rep, y, big_m, n).coeffs;
    double prev = std::numeric_limits<double>::infinity();
    for (int m = n; m < big_m; m *= 2) {
        const double gap = (solve_overdetermined(rep, y, m, n).coeffs - anchor).norm();
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-6);
}
