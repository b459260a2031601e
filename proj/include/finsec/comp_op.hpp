#pragma once

#include "finsec/basis.hpp"
#include "finsec/diffeomorphism.hpp"

namespace finsec {

struct NormBounds {
    double upper;         // analytic bound for |T|,    sqrt(beta)
    double inverse_upper; // analytic bound for |T^-1|, sqrt(1/alpha)
};

// Composition operator T f = f o tau^{-1} from L2[0,1] (basis_in) to
// L2[0,1] (basis_out). Immutable; evaluation is thread-safe.
class CompositionOperator {
public:
    CompositionOperator(Diffeomorphism tau, OrthonormalBasis basis_in,
                        OrthonormalBasis basis_out);

    const Diffeomorphism& tau() const { return tau_; }
    const OrthonormalBasis& basis_in() const { return basis_in_; }
    const OrthonormalBasis& basis_out() const { return basis_out_; }

    // (T f)(t) = f(tau^{-1}(t)).
    double apply(const RealFunction& f, double t) const;

    // T f as a callable function of t.
    RealFunction applied(RealFunction f) const;

    NormBounds norm_bounds() const;

    // The operator of the inverse map (swapped bases).
    CompositionOperator inverse_op() const;

private:
    Diffeomorphism tau_;
    OrthonormalBasis basis_in_;
    OrthonormalBasis basis_out_;
};

} // namespace finsec
