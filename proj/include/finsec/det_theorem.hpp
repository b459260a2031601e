#pragma once

#include "finsec/linalg.hpp"

namespace finsec {

// Quantities of the determinant inequality
//   det(A^T B^T B A) <= d_1^2 ... d_n^2 det(A^T A) <= |B|_2^{2n} det(A^T A)
// for A (m x n, m >= n) and B (m x m) with singular values d_1 >= ... >= d_m,
// together with the brute-force minor sums that drive its proof:
// minor_sum_a   = sum of squared n x n minors of A    (= det(A^T A)),
// minor_sum_ba  = sum of squared n x n minors of B*A  (= lhs).
struct DetCheckResult {
    double lhs;
    double mid;
    double rhs;
    double minor_sum_a;
    double minor_sum_ba;
};

DetCheckResult check_det_inequality(const DenseMatrix& a, const DenseMatrix& b);

struct MinorSumResult {
    double det_gram;  // det(C^T C)
    double minor_sum; // sum over n-row subsets of squared minor determinants
};

// Enumeration bound: binomial(m, n) minors at most.
inline constexpr long long kMinorBudget = 1'000'000;

MinorSumResult minor_sum_identity(const DenseMatrix& c);

} // namespace finsec
