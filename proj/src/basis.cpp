#include "finsec/basis.hpp"

#include <cmath>

namespace finsec {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double clamp_unit(double s) {
    // Tolerate roundoff from upstream root finding, reject real domain
    // violations.
    if (s < 0.0) {
        if (s < -1e-12) {
            throw IndexOutOfRange("basis evaluation point outside [0,1]: " + std::to_string(s));
        }
        return 0.0;
    }
    if (s > 1.0) {
        if (s > 1.0 + 1e-12) {
            throw IndexOutOfRange("basis evaluation point outside [0,1]: " + std::to_string(s));
        }
        return 1.0;
    }
    return s;
}

double legendre_poly(int degree, double x) {
    if (degree == 0) return 1.0;
    double pm = 1.0;
    double p = x;
    for (int j = 1; j < degree; ++j) {
        const double next = ((2.0 * j + 1.0) * x * p - j * pm) / (j + 1.0);
        pm = p;
        p = next;
    }
    return p;
}

} // namespace

std::string OrthonormalBasis::name() const {
    return family_ == BasisFamily::Fourier ? "fourier" : "legendre";
}

double OrthonormalBasis::eval(int k, double s) const {
    if (k < 1) {
        throw IndexOutOfRange("basis index must be >= 1, got " + std::to_string(k));
    }
    s = clamp_unit(s);
    if (family_ == BasisFamily::Fourier) {
        if (k == 1) return 1.0;
        const double freq = 2.0 * M_PI * (k / 2);
        return (k % 2 == 0) ? kSqrt2 * std::cos(freq * s) : kSqrt2 * std::sin(freq * s);
    }
    return std::sqrt(2.0 * k - 1.0) * legendre_poly(k - 1, 2.0 * s - 1.0);
}

double eval_basis(const OrthonormalBasis& basis, int k, double s) {
    return basis.eval(k, s);
}

OrthonormalBasis basis_from_name(const std::string& name) {
    if (name == "fourier") return OrthonormalBasis(BasisFamily::Fourier);
    if (name == "legendre") return OrthonormalBasis(BasisFamily::Legendre);
    throw ConfigError("unknown basis '" + name + "' (expected fourier or legendre)");
}

Vector coefficients(const RealFunction& f, const OrthonormalBasis& basis,
                    int count, const QuadratureRule& rule) {
    if (count < 1) {
        throw IndexOutOfRange("coefficient count must be >= 1");
    }
    Vector out(count);
    for (int k = 1; k <= count; ++k) {
        out(k - 1) = inner_product(
            f, [&basis, k](double s) { return basis.eval(k, s); }, rule);
    }
    return out;
}

} // namespace finsec
