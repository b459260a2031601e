#include "finsec/matrix_rep.hpp"

#include <cmath>
#include <mutex>

namespace finsec {

namespace {

std::uint64_t entry_key(int i, int j) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
           static_cast<std::uint32_t>(j);
}

} // namespace

InfiniteMatrixRep InfiniteMatrixRep::from_operator(const CompositionOperator& op,
                                                   const QuadratureRule& rule) {
    InfiniteMatrixRep rep;
    rep.name_ = op.tau().name();
    rep.op_ = op;
    rep.nodes_ = rule.nodes();
    rep.weights_ = rule.weights();
    rep.inv_nodes_.reserve(rep.nodes_.size());
    for (const double t : rep.nodes_) {
        rep.inv_nodes_.push_back(op.tau().inverse(t));
    }
    return rep;
}

InfiniteMatrixRep InfiniteMatrixRep::from_formula(std::string name,
                                                  std::function<double(int, int)> entry) {
    InfiniteMatrixRep rep;
    rep.name_ = std::move(name);
    rep.formula_ = std::move(entry);
    return rep;
}

const std::vector<double>& InfiniteMatrixRep::basis_in_at_nodes(int j) const {
    {
        std::shared_lock lock(cache_->mutex);
        if (const auto it = cache_->in_values.find(j); it != cache_->in_values.end()) {
            return it->second;
        }
    }
    std::vector<double> values(inv_nodes_.size());
    for (std::size_t q = 0; q < inv_nodes_.size(); ++q) {
        values[q] = op_->basis_in().eval(j, inv_nodes_[q]);
    }
    std::unique_lock lock(cache_->mutex);
    return cache_->in_values.try_emplace(j, std::move(values)).first->second;
}

const std::vector<double>& InfiniteMatrixRep::basis_out_at_nodes(int i) const {
    {
        std::shared_lock lock(cache_->mutex);
        if (const auto it = cache_->out_values.find(i); it != cache_->out_values.end()) {
            return it->second;
        }
    }
    std::vector<double> values(nodes_.size());
    for (std::size_t q = 0; q < nodes_.size(); ++q) {
        values[q] = op_->basis_out().eval(i, nodes_[q]);
    }
    std::unique_lock lock(cache_->mutex);
    return cache_->out_values.try_emplace(i, std::move(values)).first->second;
}

double InfiniteMatrixRep::compute_entry(int i, int j) const {
    double value;
    if (formula_) {
        value = formula_(i, j);
    } else {
        // c_ij = integral of phi_j(tau^{-1}(t)) psi_i(t) dt; fixed-order
        // summation keeps recomputation bit-identical to the cache.
        const std::vector<double>& in = basis_in_at_nodes(j);
        const std::vector<double>& out = basis_out_at_nodes(i);
        double sum = 0.0;
        for (std::size_t q = 0; q < weights_.size(); ++q) {
            sum += weights_[q] * in[q] * out[q];
        }
        value = sum;
    }
    if (!std::isfinite(value)) {
        throw NonFiniteValue("matrix entry (" + std::to_string(i) + ", " +
                             std::to_string(j) + ") is non-finite");
    }
    return value;
}

double InfiniteMatrixRep::entry(int i, int j) const {
    if (i < 1 || j < 1) {
        throw IndexOutOfRange("matrix indices must be >= 1, got (" + std::to_string(i) +
                              ", " + std::to_string(j) + ")");
    }
    const std::uint64_t key = entry_key(i, j);
    {
        std::shared_lock lock(cache_->mutex);
        if (const auto it = cache_->entries.find(key); it != cache_->entries.end()) {
            return it->second;
        }
    }
    const double value = compute_entry(i, j);
    std::unique_lock lock(cache_->mutex);
    return cache_->entries.try_emplace(key, value).first->second;
}

DenseMatrix InfiniteMatrixRep::section(int m, int n) const {
    if (m < 1 || n < 1) {
        throw IndexOutOfRange("section dimensions must be >= 1");
    }
    DenseMatrix block(m, n);
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= n; ++j) {
            block(i - 1, j - 1) = entry(i, j);
        }
    }
    return block;
}

SchurReport InfiniteMatrixRep::schur_test(int truncation) const {
    if (truncation < 1) {
        throw IndexOutOfRange("schur_test truncation must be >= 1");
    }
    double alpha_hat = 0.0;
    for (int j = 1; j <= truncation; ++j) {
        double col = 0.0;
        for (int i = 1; i <= truncation; ++i) {
            col += std::abs(entry(i, j));
        }
        alpha_hat = std::max(alpha_hat, col);
    }
    double beta_hat = 0.0;
    for (int i = 1; i <= truncation; ++i) {
        double row = 0.0;
        for (int j = 1; j <= truncation; ++j) {
            row += std::abs(entry(i, j));
        }
        beta_hat = std::max(beta_hat, row);
    }
    return SchurReport{alpha_hat, beta_hat, std::sqrt(alpha_hat * beta_hat), truncation};
}

double InfiniteMatrixRep::column_tail(int j, int from_row, int to_row) const {
    if (j < 1 || from_row < 1 || from_row > to_row) {
        throw IndexOutOfRange("column_tail requires j >= 1 and 1 <= from_row <= to_row");
    }
    double sum = 0.0;
    for (int i = from_row; i <= to_row; ++i) {
        const double c = entry(i, j);
        sum += c * c;
    }
    return std::sqrt(sum);
}

InfiniteMatrixRep identity_rep() {
    return InfiniteMatrixRep::from_formula(
        "identity", [](int i, int j) { return i == j ? 1.0 : 0.0; });
}

InfiniteMatrixRep scaled_identity_rep(double scale) {
    return InfiniteMatrixRep::from_formula(
        "scaled-identity", [scale](int i, int j) { return i == j ? scale : 0.0; });
}

InfiniteMatrixRep diagonal_rep(std::string name, std::function<double(int)> diag) {
    return InfiniteMatrixRep::from_formula(
        std::move(name),
        [diag = std::move(diag)](int i, int j) { return i == j ? diag(i) : 0.0; });
}

InfiniteMatrixRep harmonic_diagonal_rep() {
    return diagonal_rep("diag-harmonic", [](int k) { return 1.0 / k; });
}

InfiniteMatrixRep shift_banded_rep(double off) {
    return InfiniteMatrixRep::from_formula(
        "shift-banded", [off](int i, int j) {
            if (i == j) return 1.0;
            if (i == j + 1) return off;
            return 0.0;
        });
}

} // namespace finsec
