#pragma once

#include <Eigen/Dense>

#include "finsec/errors.hpp"

namespace finsec {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Relative singular-value cutoff below which a matrix is treated as rank
// deficient.
inline constexpr double kDefaultRankTol = 1e-12;

// Singular values of a, sorted nonincreasing.
Vector singular_values(const DenseMatrix& a);

double sigma_max(const DenseMatrix& a);
double sigma_min(const DenseMatrix& a);

// Thin SVD, a = u * sigma.asDiagonal() * v.transpose().
struct SvdFactors {
    DenseMatrix u;
    Vector sigma;
    DenseMatrix v;
};
SvdFactors svd_factors(const DenseMatrix& a);

// Unique least-squares minimizer of |a*w - b| for a tall full-column-rank
// matrix, computed by Householder QR. Throws RankDeficient when
// sigma_min < rank_tol * sigma_max.
Vector least_squares(const DenseMatrix& a, const Vector& b,
                     double rank_tol = kDefaultRankTol);

// Minimum-Euclidean-norm solution of a*u = b for a wide full-row-rank
// matrix: u = a^T z with (a a^T) z = b.
Vector min_norm_solve(const DenseMatrix& a, const Vector& b,
                      double rank_tol = kDefaultRankTol);

// Orthonormal basis of the nullspace of a (columns), empty when a has full
// column rank.
DenseMatrix nullspace(const DenseMatrix& a, double rank_tol = kDefaultRankTol);

} // namespace finsec
