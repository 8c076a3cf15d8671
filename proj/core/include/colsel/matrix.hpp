#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "colsel/mat.hpp"

namespace colsel {

/// Dense n x p matrix whose columns all have unit l2 norm. Immutable after
/// construction and safe to share read-only across threads.
///
/// When p*p fits the cache budget the full Gram matrix X^t X is computed at
/// construction; column inner products are then O(1) lookups. The cached
/// values are bit-identical to direct recomputation.
class ColumnMatrix {
public:
    static constexpr std::size_t kDefaultGramBudget = 100'000'000;  // entries

    /// Scales every column of `raw` to unit l2 norm.
    /// Throws NonFiniteEntry, ZeroColumn (norm below 1e-14).
    static ColumnMatrix normalize_columns(const Mat& raw,
                                          std::size_t gram_budget = kDefaultGramBudget);

    /// Accepts `data` as already normalized; every column norm must be within
    /// `tol` of 1. Throws NonFiniteEntry, NotNormalized.
    static ColumnMatrix from_normalized(const Mat& data, double tol = 1e-6,
                                        std::size_t gram_budget = kDefaultGramBudget);

    std::size_t rows() const { return m_.rows; }
    std::size_t cols() const { return m_.cols; }
    double entry(std::size_t i, std::size_t j) const { return m_(i, j); }
    const Mat& mat() const { return m_; }
    bool has_gram_cache() const { return !gram_.empty(); }

    /// <X_a, X_b>; served from the Gram cache when present.
    double col_dot(std::size_t a, std::size_t b) const {
        if (!gram_.empty()) return gram_[a * m_.cols + b];
        return col_dot_direct(a, b);
    }

private:
    explicit ColumnMatrix(Mat m) : m_(std::move(m)) {}
    double col_dot_direct(std::size_t a, std::size_t b) const;
    void maybe_build_gram(std::size_t budget);

    Mat m_;
    std::vector<double> gram_;  // p x p row-major, empty when disabled
};

/// Coherence mu(X) = max over k < l of |<X_k, X_l>|, in [0, 1].
/// Throws TooFewColumns for p < 2.
double coherence(const ColumnMatrix& x);

/// Coherence of the submatrix with columns `subset` (indices need not be
/// sorted). Throws TooFewColumns, IndexOutOfRange.
double coherence_subset(const ColumnMatrix& x, std::span<const std::size_t> subset);

/// ||X_T^t X_j||_2 = sqrt(sum over k in T of <X_k, X_j>^2).
/// Throws IndexOutOfRange (bad/empty/duplicated T), IndexInT (j in T).
double cross_gram_norm(const ColumnMatrix& x, std::span<const std::size_t> t_set,
                       std::size_t j);

/// Gram matrix of the selected columns: G[a][b] = <X_{T[a]}, X_{T[b]}>.
/// Duplicate indices are allowed (the Gram is then singular).
/// Throws IndexOutOfRange.
Mat subset_gram(const ColumnMatrix& x, std::span<const std::size_t> t_set);

}  // namespace colsel
