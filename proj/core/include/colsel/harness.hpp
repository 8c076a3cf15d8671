#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "colsel/matrix.hpp"
#include "colsel/selection.hpp"

namespace colsel {

enum class Method { greedy_exact, greedy_certificate, random_uniform, leverage };

const char* to_string(Method m);
bool method_from_string(const std::string& name, Method& out);

/// Shape of a Monte Carlo comparison run: `trials` seeded Gaussian matrices,
/// `k` columns selected per method per trial.
struct EnsembleSpec {
    std::size_t rows = 100;
    std::size_t cols = 1000;
    std::size_t trials = 20;
    std::uint64_t seed = 0;
    std::size_t k = 10;
    double epsilon = 0.5;
    std::vector<Method> methods = {Method::greedy_exact, Method::random_uniform};
    std::size_t bottom_m = 5;  // how many of the smallest singular values to keep
};

struct MethodRun {
    Method method = Method::random_uniform;
    std::vector<std::size_t> selected;
    std::vector<double> bottom_sigmas;  // ascending, length min(bottom_m, |selected|)
    double wall_seconds = 0.0;          // selector call only
};

struct TrialResult {
    std::size_t trial = 0;
    std::vector<MethodRun> runs;  // one per method, in spec order
};

/// Column-normalized n x p matrix with i.i.d. standard Gaussian entries from
/// the seeded stream. Deterministic per seed.
ColumnMatrix gen_gaussian(std::size_t n, std::size_t p, std::uint64_t seed);

/// Runs every method of the spec on `trials` independent matrices. Per-trial
/// seeds are derive_seed(spec.seed, trial); within a trial, the greedy start
/// draws from substream 1 (shared by both greedy modes so they start on the
/// same column) and the random baseline from substream 2. Everything except
/// wall_seconds is reproducible bit-for-bit.
std::vector<TrialResult> run_trials(const EnsembleSpec& spec);

struct MethodStats {
    Method method = Method::random_uniform;
    double mean_sigma_min = 0.0;
    double median_sigma_min = 0.0;
    double mean_wall_seconds = 0.0;
};

struct PairwiseWins {
    Method a = Method::greedy_exact;
    Method b = Method::random_uniform;
    std::size_t a_wins = 0;  // trials with sigma_min(a) > sigma_min(b)
    std::size_t b_wins = 0;
    std::size_t ties = 0;
};

struct CompareReport {
    std::size_t trials = 0;
    std::vector<MethodStats> stats;    // in spec method order
    std::vector<PairwiseWins> wins;    // all unordered method pairs
};

/// Aggregates trial results. Throws EmptyResults.
CompareReport summarize(const std::vector<TrialResult>& results);

/// One row of the bound-versus-truth trace: T has s columns, `exact` is the
/// smallest eigenvalue of its Gram, `eta` the greedy certificate, `batch`
/// the closed-form cap seeded at a singleton with the worst alpha realized
/// so far, `gershgorin` the disc bound from the submatrix coherence.
struct BoundTraceRow {
    std::size_t s = 0;
    double exact = 0.0;
    double eta = 0.0;
    double batch = 0.0;
    double gershgorin = 0.0;
};

struct BoundTraceReport {
    std::vector<BoundTraceRow> rows;
    double mu = 0.0;              // coherence of the full matrix
    bool batch_quarantined = false;  // closed-form cap exceeded the exact
                                     // value somewhere (reported, not fatal)
};

/// Runs greedy selection in exact mode and records all four curves at every
/// prefix size. eta and gershgorin above the exact curve are hard errors
/// (CertificateViolation); the batch curve only sets batch_quarantined.
BoundTraceReport bound_trace(const ColumnMatrix& x, SelectionConfig cfg);

}  // namespace colsel
