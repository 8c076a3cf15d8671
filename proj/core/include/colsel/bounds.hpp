#pragma once

#include <cstddef>
#include <vector>

namespace colsel {

/// Lower bounds on the smallest nonzero eigenvalue of X_T X_T^t + X_j X_j^t
/// given lambda_prev = smallest nonzero eigenvalue before the append and
/// gram_norm = ||X_T^t X_j||_2.
///
/// sharp_bound is the exact root of the relaxed secular function,
///
///   (1 + lambda - sqrt((1 - lambda)^2 + 4 w^2)) / 2,
///
/// minform_bound relaxes it further to
///
///   lambda - min(w, w^2 / (1 - lambda)),
///
/// with the first branch forced at lambda = 1. Both are clamped at zero;
/// `vacuous` is set when the min-form carries no information.
struct AppendBound {
    double lambda_prev = 0.0;
    double gram_norm = 0.0;
    double sharp_bound = 0.0;
    double minform_bound = 0.0;
    bool vacuous = false;
};

/// The quadratic-root bound alone, clamped at 0.
/// Throws LambdaOutOfRange (lambda_prev outside (0, 1]), ParamOutOfRange.
double bound_append_sharp(double lambda_prev, double gram_norm);

/// Both bounds plus the vacuous flag. Same domain checks.
AppendBound bound_append_minform(double lambda_prev, double gram_norm);

/// Parameters of the coherence-level bounds: mu is the coherence of the full
/// matrix, alpha in [0, 1] the factor by which the selected columns beat the
/// worst case (||X_T^t X_j||^2 <= alpha * s0 * mu^2), s0 the current number
/// of selected columns, s1 how many more get appended, lambda_s0 the
/// smallest nonzero eigenvalue at size s0.
struct BatchBoundParams {
    double mu = 0.0;
    double alpha = 1.0;
    std::size_t s0 = 1;
    std::size_t s1 = 0;
    double lambda_s0 = 1.0;
};

/// Single-append bound in coherence form:
///   lambda_s0 - min(sqrt(alpha s0 mu^2), alpha s0 mu^2 / (1 - lambda_s0)).
/// Equals bound_append_minform(lambda_s0, sqrt(alpha s0 mu^2)).minform_bound.
/// Only mu, alpha, s0, lambda_s0 are read. Throws ParamOutOfRange.
double bound_append_alpha(const BatchBoundParams& params);

/// The two closed-form branches capping the total eigenvalue loss after
/// appending s1 columns:
///   sqrt_branch  = sqrt(alpha mu^2) * sum_{i=s0}^{s0+s1} sqrt(i)
///   ratio_branch = alpha mu^2 s0 / (1 - lambda_s0)
///                  + (2 (1 - lambda_s0) / s0) * sum_{i=s0+1}^{s0+s1} i/(i-1)
/// Sums are evaluated literally, including the degenerate s1 = 0 ranges.
/// At lambda_s0 = 1 the ratio branch is +infinity unless alpha mu^2 = 0.
struct EpsMinBranches {
    double sqrt_branch = 0.0;
    double ratio_branch = 0.0;
};

EpsMinBranches eps_min_branches(const BatchBoundParams& params);

/// eps_min = min of the two branches. The resulting eigenvalue bound is
/// lambda_s0 - eps_min (callers clamp at 0). With no_append_short_circuit
/// set, s1 = 0 returns 0 ("no append, no loss") instead of the literal
/// single-term sum. Throws ParamOutOfRange.
double eps_min(const BatchBoundParams& params, bool no_append_short_circuit = false);

/// Step-by-step version of the same cap: the recursion
///
///   lambda_{s0+s+1} = lambda_{s0+s}
///                     - min(sqrt(alpha mu^2 (s0+s)),
///                           alpha mu^2 (s0+s) / (1 - lambda_{s0+s}))
///
/// run with the recursion value standing in for the unknown true eigenvalue.
struct SuccessiveBoundTrace {
    // lambda_{s0}, lambda_{s0+1}, ..., lambda_{s0+s1}; non-increasing.
    std::vector<double> lambda_min_seq;
    // s1 decrements; their sum telescopes to front minus back exactly.
    std::vector<double> per_step_decrement;
    // Per step, whether the strict-monotonicity condition
    // alpha mu^2 (s0+s+1) / (1 - lambda)^2 < 3/4 held.
    std::vector<bool> monotonicity_ok;
    double eps_min_closed = 0.0;  // min of the closed-form branches
    bool truncated = false;       // sequence clamped at 0 before s1 steps
};

/// Runs the recursion for s1 steps. If a step would drive the value
/// negative, that step's decrement is shortened so the sequence lands on 0,
/// the remaining entries stay 0 and `truncated` is set. lambda = 1 forces
/// the square-root branch. Throws ParamOutOfRange.
SuccessiveBoundTrace bound_successive_recursion(const BatchBoundParams& params);

/// The strict-monotonicity condition behind the recursion's validity at one
/// step: alpha mu^2 (s0 + s + 1) / (1 - lambda)^2 < 3/4; false at lambda = 1.
bool g_increasing_condition(double alpha, double mu, std::size_t s0_plus_s_plus_1,
                            double lambda);

/// Gershgorin disc bound for a Gram matrix with unit diagonal and
/// off-diagonal entries bounded by mu_T: max(0, 1 - (s - 1) mu_T).
/// Throws ParamOutOfRange.
double gershgorin_lower_bound(double mu_t, std::size_t s);

/// Shared helper: the per-append decrement
///   min(sqrt(alpha s) mu, alpha mu^2 s / (1 - lambda)),
/// with the first branch forced at lambda >= 1. No domain checks; callers
/// validate. alpha = 0 gives 0.
double append_decrement(double alpha, std::size_t s, double mu, double lambda);

}  // namespace colsel
