#include "finsec/comp_op.hpp"

#include <cmath>
#include <utility>

namespace finsec {

CompositionOperator::CompositionOperator(Diffeomorphism tau, OrthonormalBasis basis_in,
                                         OrthonormalBasis basis_out)
    : tau_(std::move(tau)), basis_in_(basis_in), basis_out_(basis_out) {}

double CompositionOperator::apply(const RealFunction& f, double t) const {
    return f(tau_.inverse(t));
}

RealFunction CompositionOperator::applied(RealFunction f) const {
    const Diffeomorphism tau = tau_;
    return [tau, f = std::move(f)](double t) { return f(tau.inverse(t)); };
}

NormBounds CompositionOperator::norm_bounds() const {
    return NormBounds{std::sqrt(tau_.beta()), std::sqrt(1.0 / tau_.alpha())};
}

CompositionOperator CompositionOperator::inverse_op() const {
    return CompositionOperator(tau_.inverted(), basis_out_, basis_in_);
}

} // namespace finsec
