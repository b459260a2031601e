#include "finsec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "finsec/csv.hpp"
#include "finsec/det_theorem.hpp"
#include "finsec/finite_section.hpp"

namespace finsec {

namespace {

using Rng = std::mt19937_64;

DenseMatrix random_matrix(Rng& rng, int rows, int cols) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DenseMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            a(i, j) = dist(rng);
        }
    }
    return a;
}

Vector random_vector(Rng& rng, int size) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vector v(size);
    for (int i = 0; i < size; ++i) {
        v(i) = dist(rng);
    }
    return v;
}

int random_int(Rng& rng, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    return dist(rng);
}

std::vector<InfiniteMatrixRep> catalog_reps(const QuadratureRule& rule) {
    const OrthonormalBasis fourier(BasisFamily::Fourier);
    std::vector<InfiniteMatrixRep> reps;
    for (const std::string& name : diffeo_catalog_names()) {
        reps.push_back(InfiniteMatrixRep::from_operator(
            CompositionOperator(diffeo_from_name(name), fourier, fourier), rule));
    }
    return reps;
}

} // namespace

std::vector<CheckRow> verify_det_theorem(int trials, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<CheckRow> rows;

    // Minor-sum identity on random 6 x 3 instances.
    {
        double worst = 0.0;
        for (int t = 0; t < trials; ++t) {
            const DenseMatrix c = random_matrix(rng, 6, 3);
            const MinorSumResult r = minor_sum_identity(c);
            const double defect =
                std::abs(r.det_gram - r.minor_sum) / std::max(1.0, std::abs(r.det_gram));
            worst = std::max(worst, defect);
        }
        rows.push_back(CheckRow{"det-theorem", "minor-sum-identity", trials, worst,
                                worst <= 1e-9});
    }

    // Inequality chain lhs <= mid <= rhs on random (A 5x3, B 5x5) pairs.
    {
        const int chain_trials = 10 * trials;
        double worst = -std::numeric_limits<double>::infinity();
        for (int t = 0; t < chain_trials; ++t) {
            const DenseMatrix a = random_matrix(rng, 5, 3);
            const DenseMatrix b = random_matrix(rng, 5, 5);
            const DetCheckResult r = check_det_inequality(a, b);
            const double scale = std::max(1.0, std::abs(r.rhs));
            worst = std::max(worst, (r.lhs - r.mid) / scale);
            worst = std::max(worst, (r.mid - r.rhs) / scale);
        }
        rows.push_back(CheckRow{"det-theorem", "inequality-chain", chain_trials, worst,
                                worst <= 1e-9});
    }

    return rows;
}

std::vector<CheckRow> verify_pythagoras(int trials, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<CheckRow> rows;

    // Lemma-style least-squares identity: |Aw-b|^2 = |A(w-w0)|^2 + |Aw0-b|^2.
    {
        double worst = 0.0;
        for (int t = 0; t < trials; ++t) {
            const int n = random_int(rng, 1, 16);
            const int m = random_int(rng, n, 32);
            const DenseMatrix a = random_matrix(rng, m, n);
            if (sigma_min(a) < 1e-8 * sigma_max(a)) continue;
            const Vector b = random_vector(rng, m);
            const Vector w0 = least_squares(a, b);
            const Vector w = 2.0 * random_vector(rng, n);
            const double total = (a * w - b).squaredNorm();
            const double split = (a * (w - w0)).squaredNorm() + (a * w0 - b).squaredNorm();
            worst = std::max(worst, std::abs(total - split) / std::max(1.0, total));
        }
        rows.push_back(CheckRow{"pythagoras", "least-squares", trials, worst, worst <= 1e-9});
    }

    // Minimum-norm identity: for feasible u, |u-u0|^2 = |u|^2 - |u0|^2.
    {
        double worst = 0.0;
        for (int t = 0; t < trials; ++t) {
            const int m = random_int(rng, 1, 16);
            const int n = random_int(rng, m, 32);
            const DenseMatrix a = random_matrix(rng, m, n);
            if (sigma_min(a) < 1e-8 * sigma_max(a)) continue;
            const Vector b = random_vector(rng, m);
            const Vector u0 = min_norm_solve(a, b);
            const DenseMatrix ns = nullspace(a);
            Vector u = u0;
            if (ns.cols() > 0) {
                u += ns * random_vector(rng, static_cast<int>(ns.cols()));
            }
            const double diff = (u - u0).squaredNorm();
            const double split = u.squaredNorm() - u0.squaredNorm();
            worst = std::max(worst, std::abs(diff - split) / std::max(1.0, diff));
        }
        rows.push_back(CheckRow{"pythagoras", "min-norm", trials, worst, worst <= 1e-9});
    }

    return rows;
}

std::vector<CheckRow> verify_schur(int truncation, const QuadratureRule& rule) {
    std::vector<CheckRow> rows;
    for (const InfiniteMatrixRep& rep : catalog_reps(rule)) {
        const SchurReport report = rep.schur_test(truncation);
        const double smax = sigma_max(rep.section(truncation, truncation));
        const double defect = smax - report.bound;
        rows.push_back(CheckRow{"schur", rep.source_name(), truncation, defect,
                                std::isfinite(report.bound) && defect <= 1e-8});
    }
    return rows;
}

std::vector<CheckRow> verify_norm_bounds(int max_size, const QuadratureRule& rule) {
    const OrthonormalBasis fourier(BasisFamily::Fourier);
    std::vector<CheckRow> rows;
    for (const std::string& name : diffeo_catalog_names()) {
        const Diffeomorphism tau = diffeo_from_name(name);
        const CompositionOperator op(tau, fourier, fourier);
        const InfiniteMatrixRep rep = InfiniteMatrixRep::from_operator(op, rule);
        const double bound = op.norm_bounds().upper;
        double worst = -std::numeric_limits<double>::infinity();
        long count = 0;
        for (int m = 1; m <= max_size; m *= 2) {
            for (int n = 1; n <= max_size; n *= 2) {
                worst = std::max(worst, sigma_max(rep.section(m, n)) - bound);
                ++count;
            }
        }
        rows.push_back(CheckRow{"norm-bounds", name, count, worst, worst <= 1e-6});
    }
    return rows;
}

std::vector<CheckRow> verify_all(int trials, std::uint64_t seed,
                                 const QuadratureRule& rule) {
    std::vector<CheckRow> rows = verify_det_theorem(trials, seed);
    std::vector<CheckRow> more = verify_pythagoras(std::max(trials, 200), seed + 1);
    rows.insert(rows.end(), more.begin(), more.end());
    more = verify_schur(32, rule);
    rows.insert(rows.end(), more.begin(), more.end());
    more = verify_norm_bounds(64, rule);
    rows.insert(rows.end(), more.begin(), more.end());
    return rows;
}

std::string verify_csv(const std::vector<CheckRow>& rows) {
    std::string out = "suite,check,trials,worst,pass\n";
    for (const CheckRow& row : rows) {
        out += row.suite;
        out += ',';
        out += row.check;
        out += ',';
        out += std::to_string(row.trials);
        out += ',';
        out += format_double(row.worst);
        out += ',';
        out += row.pass ? "1" : "0";
        out += '\n';
    }
    return out;
}

bool all_pass(const std::vector<CheckRow>& rows) {
    return std::all_of(rows.begin(), rows.end(),
                       [](const CheckRow& row) { return row.pass; });
}

} // namespace finsec
