#pragma once

#include <string>
#include <vector>

#include "finsec/quadrature.hpp"

namespace finsec {

namespace detail {
// Solve fwd(s) = t on [0,1] for a strictly increasing fwd by safeguarded
// Newton with bisection fallback. Throws InverseNotConverged.
double invert_monotone(const RealFunction& fwd, const RealFunction& deriv,
                       double t, double tol, int max_iter);
} // namespace detail

// Orientation-preserving diffeomorphism tau of [0,1] with derivative
// bounds 0 < alpha <= tau'(s) <= beta. Construction validates the
// endpoint, bound and derivative-consistency invariants and throws
// ConfigError on violation.
class Diffeomorphism {
public:
    Diffeomorphism(std::string name, RealFunction forward, RealFunction derivative,
                   double alpha, double beta);

    const std::string& name() const { return name_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

    double operator()(double s) const { return forward_(s); }
    double derivative(double s) const { return derivative_(s); }

    // tau^{-1}(t) to 1e-14 by safeguarded Newton iteration.
    double inverse(double t) const;

    // The inverse map as a Diffeomorphism (bounds 1/beta, 1/alpha).
    Diffeomorphism inverted() const;

private:
    std::string name_;
    RealFunction forward_;
    RealFunction derivative_;
    double alpha_;
    double beta_;
};

// Catalog maps. Each entry carries closed-form derivative and exact
// alpha, beta.
Diffeomorphism identity_map();
Diffeomorphism poly_quadratic_map();                 // (s + s^2)/2
Diffeomorphism exp_warp_map(double gamma);           // (e^{gamma s}-1)/(e^gamma-1)

// Lookup by catalog name: "identity", "poly-quadratic",
// "exp-warp[:gamma]". Throws ConfigError for unknown names.
Diffeomorphism diffeo_from_name(const std::string& spec);
std::vector<std::string> diffeo_catalog_names();

} // namespace finsec
