#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "colsel/matrix.hpp"

namespace colsel {

enum class SelectionMode {
    exact,       // eigensolve the selected Gram each step, restart the
                 // certificate from the exact value
    certificate  // no eigensolves; chain the certificate through itself
};

enum class StopReason { eta_below, max_cols, exhausted };

const char* to_string(SelectionMode mode);
const char* to_string(StopReason reason);

struct SelectionConfig {
    double epsilon = 0.5;             // stop once eta < 1 - epsilon
    std::size_t max_cols = 0;         // cap on |T|; 0 means min(n, p)
    std::uint64_t seed = 0;           // drives the random start
    std::optional<std::size_t> start; // explicit start column; nullopt = random
    SelectionMode mode = SelectionMode::exact;
    bool parallel_scan = false;       // multi-threaded candidate scan
};

/// One greedy iteration. With s columns already selected, column `index` was
/// appended; `score` is ||X_T^t X_index||_2 against the s selected columns,
/// `alpha` = score^2 / (s mu^2), `eta` the certificate value for the
/// s-column submatrix before the append, and `exact_lambda_min` (exact mode)
/// the smallest eigenvalue of its Gram.
struct SelectionStep {
    std::size_t s = 0;
    std::size_t index = 0;
    double score = 0.0;
    double alpha = 0.0;
    double eta = 0.0;
    std::optional<double> exact_lambda_min;
};

struct SelectionTrace {
    std::vector<SelectionStep> steps;
    std::vector<std::size_t> final_T;  // start column first, then appends
    StopReason stop_reason = StopReason::exhausted;
    double final_eta = 1.0;            // certificate for the full final_T
    std::optional<double> final_exact_lambda_min;  // exact mode only
    double mu = 0.0;                   // coherence of the input matrix
};

/// Incrementally maintained squared scores c_j = ||X_T^t X_j||_2^2 for every
/// column not yet selected. append(k) adds <X_k, X_j>^2 to each live score.
class ScoreState {
public:
    explicit ScoreState(const ColumnMatrix& x);

    void append(std::size_t k, bool parallel = false);

    double sq_score(std::size_t j) const { return sq_[j]; }
    bool consumed(std::size_t j) const { return consumed_[j] != 0; }
    std::size_t live_count() const { return live_; }

    /// Lexicographic minimum of (score, index) over live columns. The
    /// reduction is associative, so any scan partitioning returns the same
    /// pair. Requires at least one live column.
    std::pair<double, std::size_t> best(bool parallel = false) const;

private:
    const ColumnMatrix* x_;
    std::vector<double> sq_;
    std::vector<char> consumed_;
    std::size_t live_;
};

/// Greedy column selection. Starting from a singleton T, repeatedly appends
/// the candidate minimizing ||X_T^t X_j||_2 (ties to the lowest index) while
/// maintaining eta, a certified lower bound on the smallest eigenvalue of
/// X_T^t X_T:
///
///   decrement(lambda) = min(sqrt(alpha s) mu, alpha mu^2 s / (1 - lambda))
///   exact mode:        eta' = lambda_s - decrement(lambda_s)
///   certificate mode:  eta' = eta      - decrement(eta)
///
/// with lambda_s the exact smallest eigenvalue of the pre-append Gram. Both
/// updates keep eta a valid lower bound; certificate mode never needs an
/// eigensolve and never reports a higher eta than exact mode. The loop runs
/// while eta >= 1 - epsilon, candidates remain, and |T| < max_cols.
///
/// Throws EmptyMatrix, StartIndexOutOfRange, ParamOutOfRange.
SelectionTrace greedy_select(const ColumnMatrix& x, const SelectionConfig& cfg);

struct BaselineResult {
    std::string method;
    std::vector<std::size_t> selected;
    double sigma_min = 0.0;
};

/// k distinct columns drawn uniformly (partial Fisher-Yates on the seeded
/// stream). Throws KOutOfRange.
BaselineResult random_select(const ColumnMatrix& x, std::size_t k, std::uint64_t seed);

/// Leverage score of every column: the squared j-th row norm of the
/// top-`rank` right singular subspace basis. Computed from whichever Gram
/// matrix is smaller; both routes span the same subspace. The scores of a
/// projector sum to `rank`. Throws RankOutOfRange.
std::vector<double> leverage_scores(const ColumnMatrix& x, std::size_t rank);

/// Deterministic leverage-score baseline: the k highest leverage scores win,
/// ties to the lowest index. Throws RankOutOfRange, KOutOfRange.
BaselineResult leverage_select(const ColumnMatrix& x, std::size_t k, std::size_t rank);

}  // namespace colsel
