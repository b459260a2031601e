#pragma once

#include <functional>
#include <vector>

#include "finsec/errors.hpp"

namespace finsec {

using RealFunction = std::function<double(double)>;

// Gauss-Legendre nodes and weights on [-1, 1] for an n-point rule.
// Computed by Newton iteration on the Legendre polynomial roots.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Composite Gauss-Legendre rule on [0, 1]: `panels` equal panels with
// `nodes_per_panel` Gauss points each. Immutable after construction.
class QuadratureRule {
public:
    QuadratureRule(int panels, int nodes_per_panel);

    // 64 panels x 16 nodes.
    static QuadratureRule default_rule();

    // Same nodes per panel, `factor` times as many panels.
    QuadratureRule refined(int factor) const;

    int panels() const { return panels_; }
    int nodes_per_panel() const { return nodes_per_panel_; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    // Sum of w_q * f(node_q). Throws NonFiniteValue if f is non-finite at
    // a node.
    double integrate(const RealFunction& f) const;

private:
    int panels_;
    int nodes_per_panel_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

// Quadrature value of integral f*g over [0,1].
double inner_product(const RealFunction& f, const RealFunction& g,
                     const QuadratureRule& rule);

// Value under `rule` together with an error estimate obtained by doubling
// the panel count.
struct QuadEstimate {
    double value;
    double error_estimate;
};
QuadEstimate inner_product_estimated(const RealFunction& f, const RealFunction& g,
                                     const QuadratureRule& rule);

} // namespace finsec
