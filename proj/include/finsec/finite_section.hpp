#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "finsec/matrix_rep.hpp"

namespace finsec {

enum class SectionMethod { Overdetermined, Underdetermined };

std::string method_name(SectionMethod method);

// Right-hand side coefficients y_1, y_2, ... supplied either as an
// explicit vector or as a function expanded against a basis on demand.
class CoefficientSource {
public:
    static CoefficientSource from_vector(Vector values);
    static CoefficientSource from_function(RealFunction f, OrthonormalBasis basis,
                                           QuadratureRule rule);
    // Infinite sequence given by a closed-form k -> y_k, k >= 1.
    static CoefficientSource from_formula(std::function<double(int)> formula);

    // First m coefficients. Throws DimensionMismatch when an explicit
    // vector is too short.
    Vector head(int m) const;

private:
    CoefficientSource() = default;

    struct State;
    std::shared_ptr<State> state_;
};

// y = T f_true as a coefficient source (the forward-apply construction of
// manufactured problems).
CoefficientSource forward_apply(const CompositionOperator& op, RealFunction f_true,
                                const QuadratureRule& rule);

struct SectionSolution {
    Vector coeffs;
    int m;
    int n;
    double residual_norm;
    double solution_norm;
    SectionMethod method;
};

// Least-squares solution of the m x n upper-left section, m >= n.
SectionSolution solve_overdetermined(const InfiniteMatrixRep& rep,
                                     const CoefficientSource& y, int m, int n,
                                     double rank_tol = kDefaultRankTol);

// Minimum-norm solution of the m x n upper-left section, n >= m.
SectionSolution solve_underdetermined(const InfiniteMatrixRep& rep,
                                      const CoefficientSource& y, int m, int n,
                                      double rank_tol = kDefaultRankTol);

struct ConvergenceRecord {
    int m;
    int n;
    double error_to_reference;
    double residual_norm;
    double solution_norm;
    double sigma_min;
    bool failed;
    std::string message;
};

using Schedule = std::vector<std::pair<int, int>>;

// (ratio*s, s) rows for the overdetermined method, (s, ratio*s) for the
// underdetermined one.
Schedule ratio_schedule(SectionMethod method, const std::vector<int>& sizes, int ratio = 2);

// Doubling sizes first..last with the default ratio-2 shape.
Schedule default_schedule(SectionMethod method, int first = 4, int last = 64);

// |pad(a) - pad(b)| with zero padding to the longer length.
double padded_distance(const Vector& a, const Vector& b);

// One record per schedule row; a row whose solve fails is recorded with
// failed = true and NaN metrics instead of aborting the sweep.
std::vector<ConvergenceRecord> converge_over(const InfiniteMatrixRep& rep,
                                             const CoefficientSource& y,
                                             const Schedule& schedule,
                                             const Vector& reference,
                                             double rank_tol = kDefaultRankTol);
std::vector<ConvergenceRecord> converge_under(const InfiniteMatrixRep& rep,
                                              const CoefficientSource& y,
                                              const Schedule& schedule,
                                              const Vector& reference,
                                              double rank_tol = kDefaultRankTol);

} // namespace finsec
