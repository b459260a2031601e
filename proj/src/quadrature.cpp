#include "finsec/quadrature.hpp"

#include <cmath>
#include <limits>

namespace finsec {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) {
        throw ConfigError("gauss_legendre: node count must be >= 1");
    }
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);

    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-like initial guess for the i-th root of P_n.
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Recurrence for P_n(z); p2 trails by one degree.
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            const double dz = -p1 / pp;
            z += dz;
            if (std::abs(dz) < std::numeric_limits<double>::epsilon()) break;
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

QuadratureRule::QuadratureRule(int panels, int nodes_per_panel)
    : panels_(panels), nodes_per_panel_(nodes_per_panel) {
    if (panels < 1 || nodes_per_panel < 1) {
        throw ConfigError("QuadratureRule: panels and nodes per panel must be >= 1");
    }
    std::vector<double> x, w;
    gauss_legendre(nodes_per_panel, x, w);

    const double h = 1.0 / panels;
    nodes_.reserve(static_cast<std::size_t>(panels) * nodes_per_panel);
    weights_.reserve(static_cast<std::size_t>(panels) * nodes_per_panel);
    for (int p = 0; p < panels; ++p) {
        const double a = p * h;
        for (int q = 0; q < nodes_per_panel; ++q) {
            nodes_.push_back(a + (x[q] + 1.0) * 0.5 * h);
            weights_.push_back(w[q] * 0.5 * h);
        }
    }
}

QuadratureRule QuadratureRule::default_rule() {
    return QuadratureRule(64, 16);
}

QuadratureRule QuadratureRule::refined(int factor) const {
    if (factor < 1) {
        throw ConfigError("QuadratureRule::refined: factor must be >= 1");
    }
    return QuadratureRule(panels_ * factor, nodes_per_panel_);
}

double QuadratureRule::integrate(const RealFunction& f) const {
    double sum = 0.0;
    for (std::size_t q = 0; q < nodes_.size(); ++q) {
        const double v = f(nodes_[q]);
        if (!std::isfinite(v)) {
            throw NonFiniteValue("integrand is non-finite at node " + std::to_string(nodes_[q]));
        }
        sum += weights_[q] * v;
    }
    return sum;
}

double inner_product(const RealFunction& f, const RealFunction& g,
                     const QuadratureRule& rule) {
    double sum = 0.0;
    const auto& nodes = rule.nodes();
    const auto& weights = rule.weights();
    for (std::size_t q = 0; q < nodes.size(); ++q) {
        const double fv = f(nodes[q]);
        const double gv = g(nodes[q]);
        if (!std::isfinite(fv) || !std::isfinite(gv)) {
            throw NonFiniteValue("inner_product integrand is non-finite at node " +
                                 std::to_string(nodes[q]));
        }
        sum += weights[q] * fv * gv;
    }
    return sum;
}

QuadEstimate inner_product_estimated(const RealFunction& f, const RealFunction& g,
                                     const QuadratureRule& rule) {
    const double coarse = inner_product(f, g, rule);
    const double fine = inner_product(f, g, rule.refined(2));
    return QuadEstimate{coarse, std::abs(fine - coarse)};
}

} // namespace finsec
