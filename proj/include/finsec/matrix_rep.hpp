#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "finsec/comp_op.hpp"
#include "finsec/linalg.hpp"

namespace finsec {

// Truncated Schur-test sums. alpha_hat and beta_hat are maxima of column
// and row absolute sums over the leading truncation x truncation block;
// no claim is made about the exact infinite sums.
struct SchurReport {
    double alpha_hat;
    double beta_hat;
    double bound; // sqrt(alpha_hat * beta_hat)
    int truncation;
};

// Infinite matrix representation c_ij = (T phi_j, psi_i) of a bounded
// operator, realized as a lazy entry oracle with a monotonically growing
// cache. Entries are deterministic; the cache allows concurrent reads and
// concurrent insertion of distinct entries.
class InfiniteMatrixRep {
public:
    static InfiniteMatrixRep from_operator(const CompositionOperator& op,
                                           const QuadratureRule& rule);
    static InfiniteMatrixRep from_formula(std::string name,
                                          std::function<double(int, int)> entry);

    // c_ij, 1-based. Throws IndexOutOfRange for i or j < 1.
    double entry(int i, int j) const;

    // Upper-left m x n block.
    DenseMatrix section(int m, int n) const;

    SchurReport schur_test(int truncation) const;

    // sqrt(sum of c_ij^2 for i = from_row..to_row): the tail energy of
    // column j.
    double column_tail(int j, int from_row, int to_row) const;

    const std::string& source_name() const { return name_; }
    const std::optional<CompositionOperator>& source_operator() const { return op_; }

private:
    InfiniteMatrixRep() = default;

    double compute_entry(int i, int j) const;
    const std::vector<double>& basis_in_at_nodes(int j) const;
    const std::vector<double>& basis_out_at_nodes(int i) const;

    std::string name_;
    std::optional<CompositionOperator> op_;
    std::function<double(int, int)> formula_;

    // Operator path: quadrature data fixed at construction.
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> inv_nodes_; // tau^{-1} at the quadrature nodes

    struct Cache {
        mutable std::shared_mutex mutex;
        std::unordered_map<std::uint64_t, double> entries;
        // Basis values at the quadrature nodes, keyed by index; input
        // basis is evaluated at inv_nodes_, output basis at nodes_.
        std::unordered_map<int, std::vector<double>> in_values;
        std::unordered_map<int, std::vector<double>> out_values;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Exact quadrature-free fixtures.
InfiniteMatrixRep identity_rep();
InfiniteMatrixRep scaled_identity_rep(double scale);
InfiniteMatrixRep diagonal_rep(std::string name, std::function<double(int)> diag);
InfiniteMatrixRep harmonic_diagonal_rep(); // diag(1, 1/2, 1/3, ...)
InfiniteMatrixRep shift_banded_rep(double off); // identity + off on the first subdiagonal

} // namespace finsec
