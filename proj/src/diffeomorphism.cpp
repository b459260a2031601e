#include "finsec/diffeomorphism.hpp"

#include <cmath>
#include <utility>

namespace finsec {

namespace detail {

double invert_monotone(const RealFunction& fwd, const RealFunction& deriv,
                       double t, double tol, int max_iter) {
    double lo = 0.0;
    double hi = 1.0;
    double s = t; // tau is close to the identity on [0,1], start at t
    for (int iter = 0; iter < max_iter; ++iter) {
        const double r = fwd(s) - t;
        if (std::abs(r) <= tol) {
            return s < 0.0 ? 0.0 : (s > 1.0 ? 1.0 : s);
        }
        if (r > 0.0) {
            hi = s;
        } else {
            lo = s;
        }
        if (hi - lo <= 1e-16) {
            // The bracket is a point but the residual is not: the value t
            // is skipped by the (claimed monotone) forward map.
            break;
        }
        const double d = deriv(s);
        double next = (d > 0.0) ? s - r / d : lo - 1.0;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi); // Newton left the bracket, bisect
        }
        s = next;
    }
    throw InverseNotConverged("inverse iteration did not reach tolerance at t = " +
                              std::to_string(t));
}

} // namespace detail

namespace {

constexpr int kValidationGrid = 1024;

void validate_diffeo(const std::string& name, const RealFunction& fwd,
                     const RealFunction& deriv, double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta >= alpha)) {
        throw ConfigError("diffeomorphism '" + name +
                          "': need 0 < alpha <= beta, got alpha = " + std::to_string(alpha) +
                          ", beta = " + std::to_string(beta));
    }
    if (std::abs(fwd(0.0)) > 1e-12 || std::abs(fwd(1.0) - 1.0) > 1e-12) {
        throw ConfigError("diffeomorphism '" + name + "' must fix 0 and 1");
    }
    const double fd_step = 1e-5;
    for (int i = 0; i < kValidationGrid; ++i) {
        const double s = static_cast<double>(i) / (kValidationGrid - 1);
        const double d = deriv(s);
        if (!std::isfinite(d) || d < alpha - 1e-12 || d > beta + 1e-12) {
            throw ConfigError("diffeomorphism '" + name + "': derivative " +
                              std::to_string(d) + " at s = " + std::to_string(s) +
                              " violates bounds [" + std::to_string(alpha) + ", " +
                              std::to_string(beta) + "]");
        }
        // Centered finite-difference consistency, shifted into the domain
        // near the endpoints.
        const double c = std::min(std::max(s, fd_step), 1.0 - fd_step);
        const double fd = (fwd(c + fd_step) - fwd(c - fd_step)) / (2.0 * fd_step);
        if (std::abs(fd - deriv(c)) > 1e-6) {
            throw ConfigError("diffeomorphism '" + name +
                              "': derivative disagrees with finite differences at s = " +
                              std::to_string(c));
        }
    }
}

} // namespace

Diffeomorphism::Diffeomorphism(std::string name, RealFunction forward,
                               RealFunction derivative, double alpha, double beta)
    : name_(std::move(name)),
      forward_(std::move(forward)),
      derivative_(std::move(derivative)),
      alpha_(alpha),
      beta_(beta) {
    validate_diffeo(name_, forward_, derivative_, alpha_, beta_);
}

double Diffeomorphism::inverse(double t) const {
    if (t < -1e-12 || t > 1.0 + 1e-12) {
        throw IndexOutOfRange("inverse argument outside [0,1]: " + std::to_string(t));
    }
    t = std::min(std::max(t, 0.0), 1.0);
    return detail::invert_monotone(forward_, derivative_, t, 1e-14, 200);
}

Diffeomorphism Diffeomorphism::inverted() const {
    const Diffeomorphism self = *this;
    return Diffeomorphism(
        name_ + "-inverse",
        [self](double t) { return self.inverse(t); },
        [self](double t) { return 1.0 / self.derivative(self.inverse(t)); },
        1.0 / beta_, 1.0 / alpha_);
}

Diffeomorphism identity_map() {
    return Diffeomorphism(
        "identity", [](double s) { return s; }, [](double) { return 1.0; }, 1.0, 1.0);
}

Diffeomorphism poly_quadratic_map() {
    // tau' = (1 + 2s)/2, monotone in s: bounds attained at the endpoints.
    return Diffeomorphism(
        "poly-quadratic",
        [](double s) { return 0.5 * (s + s * s); },
        [](double s) { return 0.5 * (1.0 + 2.0 * s); },
        0.5, 1.5);
}

Diffeomorphism exp_warp_map(double gamma) {
    if (std::abs(gamma) < 1e-8) {
        throw ConfigError("exp-warp: |gamma| must be >= 1e-8 (use identity instead)");
    }
    const double denom = std::expm1(gamma);
    // tau' = gamma e^{gamma s}/(e^gamma - 1) is monotone in s, so the
    // derivative bounds sit at the endpoints.
    const double d0 = gamma / denom;
    const double d1 = gamma * std::exp(gamma) / denom;
    return Diffeomorphism(
        "exp-warp",
        [gamma, denom](double s) { return std::expm1(gamma * s) / denom; },
        [gamma, denom](double s) { return gamma * std::exp(gamma * s) / denom; },
        std::min(d0, d1), std::max(d0, d1));
}

Diffeomorphism diffeo_from_name(const std::string& spec) {
    std::string name = spec;
    std::string param;
    if (const auto colon = spec.find(':'); colon != std::string::npos) {
        name = spec.substr(0, colon);
        param = spec.substr(colon + 1);
    }
    if (name == "identity") {
        return identity_map();
    }
    if (name == "poly-quadratic") {
        return poly_quadratic_map();
    }
    if (name == "exp-warp") {
        double gamma = 1.0;
        if (!param.empty()) {
            try {
                gamma = std::stod(param);
            } catch (const std::exception&) {
                throw ConfigError("exp-warp: bad gamma '" + param + "'");
            }
        }
        return exp_warp_map(gamma);
    }
    throw ConfigError("unknown diffeomorphism '" + spec + "'");
}

std::vector<std::string> diffeo_catalog_names() {
    return {"identity", "poly-quadratic", "exp-warp"};
}

} // namespace finsec
