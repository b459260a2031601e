#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "finsec/quadrature.hpp"

namespace finsec {

// Outcome of one verification check: `worst` is the check's worst-case
// defect metric (signed; negative means margin to spare).
struct CheckRow {
    std::string suite;
    std::string check;
    long trials;
    double worst;
    bool pass;
};

// Determinant inequality chain and minor-sum identity on random trials.
// Runs `trials` minor-sum instances and 10 * `trials` inequality trials.
std::vector<CheckRow> verify_det_theorem(int trials, std::uint64_t seed);

// Least-squares and minimum-norm Pythagoras identities on random
// full-rank instances.
std::vector<CheckRow> verify_pythagoras(int trials, std::uint64_t seed);

// Truncated Schur bound dominates the section spectral norm for every
// catalog operator.
std::vector<CheckRow> verify_schur(int truncation, const QuadratureRule& rule);

// Section spectral norms against the analytic sqrt(beta) bound for every
// catalog operator.
std::vector<CheckRow> verify_norm_bounds(int max_size, const QuadratureRule& rule);

std::vector<CheckRow> verify_all(int trials, std::uint64_t seed,
                                 const QuadratureRule& rule);

std::string verify_csv(const std::vector<CheckRow>& rows);
bool all_pass(const std::vector<CheckRow>& rows);

} // namespace finsec
