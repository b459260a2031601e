#include "finsec/linalg.hpp"

#include <Eigen/SVD>

namespace finsec {

namespace {

void require_finite(const DenseMatrix& a, const char* what) {
    if (!a.allFinite()) {
        throw NonFiniteValue(std::string(what) + " contains a non-finite entry");
    }
}

void require_nonempty(const DenseMatrix& a, const char* what) {
    if (a.rows() < 1 || a.cols() < 1) {
        throw DimensionMismatch(std::string(what) + " must have at least one row and column");
    }
}

// Rank gate shared by the two solvers: reject when the smallest singular
// value falls below rank_tol relative to the largest.
void require_full_rank(const DenseMatrix& a, double rank_tol, const char* context) {
    const Vector sv = singular_values(a);
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    if (smax <= 0.0 || smin < rank_tol * smax) {
        throw RankDeficient(std::string(context) + ": sigma_min/sigma_max = " +
                            std::to_string(smax > 0.0 ? smin / smax : 0.0));
    }
}

} // namespace

Vector singular_values(const DenseMatrix& a) {
    require_nonempty(a, "matrix");
    require_finite(a, "matrix");
    Eigen::JacobiSVD<DenseMatrix> svd(a);
    return svd.singularValues();
}

double sigma_max(const DenseMatrix& a) {
    return singular_values(a)(0);
}

double sigma_min(const DenseMatrix& a) {
    const Vector sv = singular_values(a);
    return sv(sv.size() - 1);
}

SvdFactors svd_factors(const DenseMatrix& a) {
    require_nonempty(a, "matrix");
    require_finite(a, "matrix");
    Eigen::JacobiSVD<DenseMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return SvdFactors{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Vector least_squares(const DenseMatrix& a, const Vector& b, double rank_tol) {
    require_nonempty(a, "least_squares matrix");
    if (a.rows() < a.cols()) {
        throw DimensionMismatch("least_squares requires rows >= cols");
    }
    if (b.size() != a.rows()) {
        throw DimensionMismatch("least_squares right-hand side has wrong length");
    }
    require_finite(a, "least_squares matrix");
    require_finite(b, "least_squares right-hand side");
    require_full_rank(a, rank_tol, "least_squares");
    return a.colPivHouseholderQr().solve(b);
}

Vector min_norm_solve(const DenseMatrix& a, const Vector& b, double rank_tol) {
    require_nonempty(a, "min_norm_solve matrix");
    if (a.rows() > a.cols()) {
        throw DimensionMismatch("min_norm_solve requires rows <= cols");
    }
    if (b.size() != a.rows()) {
        throw DimensionMismatch("min_norm_solve right-hand side has wrong length");
    }
    require_finite(a, "min_norm_solve matrix");
    require_finite(b, "min_norm_solve right-hand side");
    require_full_rank(a, rank_tol, "min_norm_solve");

    // u = A^T z with (A A^T) z = b; A A^T is SPD once the rank gate passed.
    const DenseMatrix gram = a * a.transpose();
    Eigen::LLT<DenseMatrix> llt(gram);
    if (llt.info() != Eigen::Success) {
        throw RankDeficient("min_norm_solve: A A^T is numerically singular");
    }
    const Vector z = llt.solve(b);
    return a.transpose() * z;
}

DenseMatrix nullspace(const DenseMatrix& a, double rank_tol) {
    require_nonempty(a, "matrix");
    require_finite(a, "matrix");
    Eigen::JacobiSVD<DenseMatrix> svd(a, Eigen::ComputeFullV);
    const Vector sv = svd.singularValues();
    const double cutoff = sv.size() > 0 && sv(0) > 0.0 ? rank_tol * sv(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) > cutoff) ++rank;
    }
    return svd.matrixV().rightCols(a.cols() - rank);
}

} // namespace finsec
