#pragma once

#include <string>

#include "finsec/linalg.hpp"
#include "finsec/quadrature.hpp"

namespace finsec {

enum class BasisFamily { Fourier, Legendre };

// Countable orthonormal basis of L2[0,1] with pointwise evaluation.
//
// Fourier:  phi_1 = 1, phi_{2k} = sqrt(2) cos(2 pi k s),
//           phi_{2k+1} = sqrt(2) sin(2 pi k s).
// Legendre: phi_k = sqrt(2k-1) * P_{k-1}(2s - 1) with P_j the Legendre
//           polynomial on [-1,1].
class OrthonormalBasis {
public:
    explicit OrthonormalBasis(BasisFamily family) : family_(family) {}

    BasisFamily family() const { return family_; }
    std::string name() const;

    // phi_k(s), k >= 1, s in [0,1]. Throws IndexOutOfRange.
    double eval(int k, double s) const;

private:
    BasisFamily family_;
};

double eval_basis(const OrthonormalBasis& basis, int k, double s);

OrthonormalBasis basis_from_name(const std::string& name);

// First `count` generalized Fourier coefficients (f, phi_k) of f.
Vector coefficients(const RealFunction& f, const OrthonormalBasis& basis,
                    int count, const QuadratureRule& rule);

} // namespace finsec
