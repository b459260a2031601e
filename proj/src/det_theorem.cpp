#include "finsec/det_theorem.hpp"

#include <cmath>
#include <numeric>
#include <vector>

namespace finsec {

namespace {

// Direct formulas for n <= 3, LU factorization above.
double small_det(const DenseMatrix& a) {
    switch (a.rows()) {
        case 1:
            return a(0, 0);
        case 2:
            return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
        case 3:
            return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                   a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                   a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
        default:
            return a.determinant();
    }
}

long long binomial_checked(int m, int n) {
    long long result = 1;
    for (int k = 1; k <= n; ++k) {
        result = result * (m - n + k) / k;
        if (result > kMinorBudget) return kMinorBudget + 1;
    }
    return result;
}

// Sum of squared n x n minors over all n-row subsets of c.
double squared_minor_sum(const DenseMatrix& c) {
    const int m = static_cast<int>(c.rows());
    const int n = static_cast<int>(c.cols());
    std::vector<int> rows(n);
    std::iota(rows.begin(), rows.end(), 0);

    DenseMatrix minor(n, n);
    double sum = 0.0;
    while (true) {
        for (int r = 0; r < n; ++r) {
            minor.row(r) = c.row(rows[r]);
        }
        const double d = small_det(minor);
        sum += d * d;

        // next combination in lexicographic order
        int k = n - 1;
        while (k >= 0 && rows[k] == m - n + k) --k;
        if (k < 0) break;
        ++rows[k];
        for (int r = k + 1; r < n; ++r) rows[r] = rows[r - 1] + 1;
    }
    return sum;
}

} // namespace

DetCheckResult check_det_inequality(const DenseMatrix& a, const DenseMatrix& b) {
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());
    if (n < 1 || m < n) {
        throw DimensionMismatch("check_det_inequality requires A with m >= n >= 1");
    }
    if (b.rows() != m || b.cols() != m) {
        throw DimensionMismatch("check_det_inequality requires B to be m x m");
    }
    if (binomial_checked(m, n) > kMinorBudget) {
        throw TooManyMinors("binomial(" + std::to_string(m) + ", " + std::to_string(n) +
                            ") exceeds the minor enumeration budget");
    }

    const DenseMatrix ba = b * a;
    const double lhs = small_det(DenseMatrix(ba.transpose() * ba));
    const double det_gram = small_det(DenseMatrix(a.transpose() * a));

    const Vector d = singular_values(b);
    double factor = 1.0;
    for (int k = 0; k < n; ++k) {
        factor *= d(k) * d(k);
    }
    const double mid = factor * det_gram;
    const double rhs = std::pow(d(0), 2.0 * n) * det_gram;

    DetCheckResult result{};
    result.lhs = lhs;
    result.mid = mid;
    result.rhs = rhs;
    result.minor_sum_a = squared_minor_sum(a);
    result.minor_sum_ba = squared_minor_sum(ba);
    return result;
}

MinorSumResult minor_sum_identity(const DenseMatrix& c) {
    const int m = static_cast<int>(c.rows());
    const int n = static_cast<int>(c.cols());
    if (n < 1 || m < n) {
        throw DimensionMismatch("minor_sum_identity requires m >= n >= 1");
    }
    if (binomial_checked(m, n) > kMinorBudget) {
        throw TooManyMinors("binomial(" + std::to_string(m) + ", " + std::to_string(n) +
                            ") exceeds the minor enumeration budget");
    }
    MinorSumResult result{};
    result.det_gram = small_det(DenseMatrix(c.transpose() * c));
    result.minor_sum = squared_minor_sum(c);
    return result;
}

} // namespace finsec
