#include "finsec/finite_section.hpp"

#include <cmath>
#include <limits>
#include <mutex>

namespace finsec {

std::string method_name(SectionMethod method) {
    return method == SectionMethod::Overdetermined ? "over" : "under";
}

struct CoefficientSource::State {
    bool from_vector = false;
    Vector fixed;

    std::function<double(int)> formula;

    RealFunction f;
    std::optional<OrthonormalBasis> basis;
    std::optional<QuadratureRule> rule;
    std::vector<double> computed; // prefix cache for the function path
    std::mutex mutex;
};

CoefficientSource CoefficientSource::from_vector(Vector values) {
    CoefficientSource src;
    src.state_ = std::make_shared<State>();
    src.state_->from_vector = true;
    src.state_->fixed = std::move(values);
    return src;
}

CoefficientSource CoefficientSource::from_function(RealFunction f, OrthonormalBasis basis,
                                                   QuadratureRule rule) {
    CoefficientSource src;
    src.state_ = std::make_shared<State>();
    src.state_->f = std::move(f);
    src.state_->basis = basis;
    src.state_->rule = std::move(rule);
    return src;
}

CoefficientSource CoefficientSource::from_formula(std::function<double(int)> formula) {
    CoefficientSource src;
    src.state_ = std::make_shared<State>();
    src.state_->formula = std::move(formula);
    return src;
}

Vector CoefficientSource::head(int m) const {
    if (m < 1) {
        throw IndexOutOfRange("coefficient count must be >= 1");
    }
    State& st = *state_;
    if (st.from_vector) {
        if (st.fixed.size() < m) {
            throw DimensionMismatch("right-hand side provides " +
                                    std::to_string(st.fixed.size()) +
                                    " coefficients, need " + std::to_string(m));
        }
        return st.fixed.head(m);
    }
    if (st.formula) {
        Vector out(m);
        for (int k = 1; k <= m; ++k) out(k - 1) = st.formula(k);
        return out;
    }
    std::lock_guard lock(st.mutex);
    while (static_cast<int>(st.computed.size()) < m) {
        const int k = static_cast<int>(st.computed.size()) + 1;
        st.computed.push_back(inner_product(
            st.f, [&st, k](double s) { return st.basis->eval(k, s); }, *st.rule));
    }
    Vector out(m);
    for (int k = 0; k < m; ++k) out(k) = st.computed[k];
    return out;
}

CoefficientSource forward_apply(const CompositionOperator& op, RealFunction f_true,
                                const QuadratureRule& rule) {
    return CoefficientSource::from_function(op.applied(std::move(f_true)),
                                            op.basis_out(), rule);
}

SectionSolution solve_overdetermined(const InfiniteMatrixRep& rep,
                                     const CoefficientSource& y, int m, int n,
                                     double rank_tol) {
    if (n < 1 || m < n) {
        throw DimensionMismatch("overdetermined solve requires m >= n >= 1");
    }
    const DenseMatrix a = rep.section(m, n);
    const Vector b = y.head(m);
    Vector x = least_squares(a, b, rank_tol);
    const double residual = (a * x - b).norm();
    const double norm = x.norm();
    return SectionSolution{std::move(x), m, n, residual, norm,
                           SectionMethod::Overdetermined};
}

SectionSolution solve_underdetermined(const InfiniteMatrixRep& rep,
                                      const CoefficientSource& y, int m, int n,
                                      double rank_tol) {
    if (m < 1 || n < m) {
        throw DimensionMismatch("underdetermined solve requires n >= m >= 1");
    }
    const DenseMatrix a = rep.section(m, n);
    const Vector b = y.head(m);
    Vector x = min_norm_solve(a, b, rank_tol);
    const double residual = (a * x - b).norm();
    const double norm = x.norm();
    return SectionSolution{std::move(x), m, n, residual, norm,
                           SectionMethod::Underdetermined};
}

Schedule ratio_schedule(SectionMethod method, const std::vector<int>& sizes, int ratio) {
    if (ratio < 1) {
        throw ConfigError("schedule ratio must be >= 1");
    }
    Schedule schedule;
    schedule.reserve(sizes.size());
    for (const int s : sizes) {
        if (s < 1) {
            throw ConfigError("schedule sizes must be >= 1");
        }
        if (method == SectionMethod::Overdetermined) {
            schedule.emplace_back(ratio * s, s);
        } else {
            schedule.emplace_back(s, ratio * s);
        }
    }
    return schedule;
}

Schedule default_schedule(SectionMethod method, int first, int last) {
    std::vector<int> sizes;
    for (int s = first; s <= last; s *= 2) sizes.push_back(s);
    return ratio_schedule(method, sizes);
}

double padded_distance(const Vector& a, const Vector& b) {
    const Eigen::Index len = std::max(a.size(), b.size());
    double sum = 0.0;
    for (Eigen::Index k = 0; k < len; ++k) {
        const double av = k < a.size() ? a(k) : 0.0;
        const double bv = k < b.size() ? b(k) : 0.0;
        const double d = av - bv;
        sum += d * d;
    }
    return std::sqrt(sum);
}

namespace {

std::vector<ConvergenceRecord> run_sweep(const InfiniteMatrixRep& rep,
                                         const CoefficientSource& y,
                                         const Schedule& schedule,
                                         const Vector& reference, SectionMethod method,
                                         double rank_tol) {
    if (schedule.empty()) {
        throw ConfigError("schedule must be nonempty");
    }
    std::vector<ConvergenceRecord> records;
    records.reserve(schedule.size());
    for (const auto& [m, n] : schedule) {
        ConvergenceRecord rec{};
        rec.m = m;
        rec.n = n;
        try {
            rec.sigma_min = sigma_min(rep.section(m, n));
            const SectionSolution sol =
                method == SectionMethod::Overdetermined
                    ? solve_overdetermined(rep, y, m, n, rank_tol)
                    : solve_underdetermined(rep, y, m, n, rank_tol);
            rec.error_to_reference = padded_distance(sol.coeffs, reference);
            rec.residual_norm = sol.residual_norm;
            rec.solution_norm = sol.solution_norm;
            rec.failed = false;
        } catch (const Error& e) {
            rec.error_to_reference = std::numeric_limits<double>::quiet_NaN();
            rec.residual_norm = std::numeric_limits<double>::quiet_NaN();
            rec.solution_norm = std::numeric_limits<double>::quiet_NaN();
            rec.failed = true;
            rec.message = e.what();
        }
        records.push_back(std::move(rec));
    }
    return records;
}

void require_ordering(const Schedule& schedule, SectionMethod method) {
    for (const auto& [m, n] : schedule) {
        if (method == SectionMethod::Overdetermined && m < n) {
            throw ConfigError("overdetermined schedule rows need m >= n; got " +
                              std::to_string(m) + " x " + std::to_string(n));
        }
        if (method == SectionMethod::Underdetermined && n < m) {
            throw ConfigError("underdetermined schedule rows need n >= m; got " +
                              std::to_string(m) + " x " + std::to_string(n));
        }
    }
}

} // namespace

std::vector<ConvergenceRecord> converge_over(const InfiniteMatrixRep& rep,
                                             const CoefficientSource& y,
                                             const Schedule& schedule,
                                             const Vector& reference, double rank_tol) {
    require_ordering(schedule, SectionMethod::Overdetermined);
    return run_sweep(rep, y, schedule, reference, SectionMethod::Overdetermined, rank_tol);
}

std::vector<ConvergenceRecord> converge_under(const InfiniteMatrixRep& rep,
                                              const CoefficientSource& y,
                                              const Schedule& schedule,
                                              const Vector& reference, double rank_tol) {
    require_ordering(schedule, SectionMethod::Underdetermined);
    return run_sweep(rep, y, schedule, reference, SectionMethod::Underdetermined, rank_tol);
}

} // namespace finsec
