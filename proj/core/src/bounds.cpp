#include "colsel/bounds.hpp"

#include <cmath>
#include <limits>

#include "colsel/errors.hpp"

namespace colsel {

namespace {

void check_lambda(double lambda_prev) {
    if (!(lambda_prev > 0.0) || lambda_prev > 1.0 || !std::isfinite(lambda_prev)) {
        fail("LambdaOutOfRange", "lambda_prev must lie in (0, 1]");
    }
}

void check_gram_norm(double w) {
    if (!(w >= 0.0) || !std::isfinite(w)) fail("ParamOutOfRange", "gram_norm must be finite and >= 0");
}

void check_batch(const BatchBoundParams& p) {
    if (!(p.mu >= 0.0) || p.mu > 1.0 || !std::isfinite(p.mu)) fail("ParamOutOfRange", "mu must lie in [0, 1]");
    if (!(p.alpha >= 0.0) || p.alpha > 1.0 || !std::isfinite(p.alpha)) {
        fail("ParamOutOfRange", "alpha must lie in [0, 1]");
    }
    if (p.s0 < 1) fail("ParamOutOfRange", "s0 must be at least 1");
    if (!(p.lambda_s0 > 0.0) || p.lambda_s0 > 1.0 || !std::isfinite(p.lambda_s0)) {
        fail("ParamOutOfRange", "lambda_s0 must lie in (0, 1]");
    }
}

double raw_sharp(double lambda_prev, double w) {
    if (w == 0.0) return lambda_prev;
    // Algebraically (1 + L - sqrt((1-L)^2 + 4w^2)) / 2, rearranged so the
    // subtraction from lambda_prev stays accurate for small w.
    const double gap = 1.0 - lambda_prev;
    const double root = std::sqrt(gap * gap + 4.0 * w * w);
    return lambda_prev - 2.0 * w * w / (root + gap);
}

double raw_minform(double lambda_prev, double w) {
    const double gap = 1.0 - lambda_prev;
    if (gap <= 0.0) return lambda_prev - w;  // second branch undefined at lambda = 1
    return lambda_prev - std::min(w, w * w / gap);
}

}  // namespace

double append_decrement(double alpha, std::size_t s, double mu, double lambda) {
    if (alpha == 0.0 || mu == 0.0) return 0.0;
    const double first = std::sqrt(alpha * static_cast<double>(s)) * mu;
    const double gap = 1.0 - lambda;
    if (gap <= 0.0) return first;
    return std::min(first, alpha * mu * mu * static_cast<double>(s) / gap);
}

double bound_append_sharp(double lambda_prev, double gram_norm) {
    check_lambda(lambda_prev);
    check_gram_norm(gram_norm);
    return std::max(0.0, raw_sharp(lambda_prev, gram_norm));
}

AppendBound bound_append_minform(double lambda_prev, double gram_norm) {
    check_lambda(lambda_prev);
    check_gram_norm(gram_norm);
    AppendBound b;
    b.lambda_prev = lambda_prev;
    b.gram_norm = gram_norm;
    const double mf = raw_minform(lambda_prev, gram_norm);
    b.minform_bound = std::max(0.0, mf);
    b.sharp_bound = std::max(0.0, raw_sharp(lambda_prev, gram_norm));
    b.vacuous = mf <= 0.0;
    return b;
}

double bound_append_alpha(const BatchBoundParams& params) {
    check_batch(params);
    const double w = std::sqrt(params.alpha * static_cast<double>(params.s0) * params.mu * params.mu);
    return bound_append_minform(params.lambda_s0, w).minform_bound;
}

EpsMinBranches eps_min_branches(const BatchBoundParams& params) {
    check_batch(params);
    const double amu2 = params.alpha * params.mu * params.mu;
    const double gap = 1.0 - params.lambda_s0;

    EpsMinBranches out;
    double sum_sqrt = 0.0;
    for (std::size_t i = params.s0; i <= params.s0 + params.s1; ++i) {
        sum_sqrt += std::sqrt(static_cast<double>(i));
    }
    out.sqrt_branch = std::sqrt(amu2) * sum_sqrt;

    double sum_ratio = 0.0;
    for (std::size_t i = params.s0 + 1; i <= params.s0 + params.s1; ++i) {
        sum_ratio += static_cast<double>(i) / static_cast<double>(i - 1);
    }
    if (gap <= 0.0) {
        out.ratio_branch = (amu2 > 0.0) ? std::numeric_limits<double>::infinity() : 0.0;
    } else {
        out.ratio_branch = amu2 * static_cast<double>(params.s0) / gap +
                           (2.0 * gap / static_cast<double>(params.s0)) * sum_ratio;
    }
    return out;
}

double eps_min(const BatchBoundParams& params, bool no_append_short_circuit) {
    if (no_append_short_circuit && params.s1 == 0) {
        check_batch(params);
        return 0.0;
    }
    const EpsMinBranches b = eps_min_branches(params);
    return std::min(b.sqrt_branch, b.ratio_branch);
}

SuccessiveBoundTrace bound_successive_recursion(const BatchBoundParams& params) {
    check_batch(params);
    SuccessiveBoundTrace trace;
    trace.lambda_min_seq.reserve(params.s1 + 1);
    trace.lambda_min_seq.push_back(params.lambda_s0);
    trace.eps_min_closed = eps_min(params);

    for (std::size_t s = 0; s < params.s1; ++s) {
        const double lambda = trace.lambda_min_seq.back();
        trace.monotonicity_ok.push_back(
            g_increasing_condition(params.alpha, params.mu, params.s0 + s + 1, lambda));
        if (trace.truncated) {
            trace.per_step_decrement.push_back(0.0);
            trace.lambda_min_seq.push_back(0.0);
            continue;
        }
        double dec = append_decrement(params.alpha, params.s0 + s, params.mu, lambda);
        if (dec >= lambda) {
            dec = lambda;  // land exactly on 0 and stop decaying
            trace.truncated = true;
        }
        trace.per_step_decrement.push_back(dec);
        trace.lambda_min_seq.push_back(lambda - dec);
    }
    return trace;
}

bool g_increasing_condition(double alpha, double mu, std::size_t s0_plus_s_plus_1, double lambda) {
    const double gap = 1.0 - lambda;
    if (gap <= 0.0) return false;
    return alpha * mu * mu * static_cast<double>(s0_plus_s_plus_1) / (gap * gap) < 0.75;
}

double gershgorin_lower_bound(double mu_t, std::size_t s) {
    if (!(mu_t >= 0.0) || mu_t > 1.0 || !std::isfinite(mu_t)) {
        fail("ParamOutOfRange", "mu_T must lie in [0, 1]");
    }
    if (s < 1) fail("ParamOutOfRange", "cardinality s must be at least 1");
    return std::max(0.0, 1.0 - static_cast<double>(s - 1) * mu_t);
}

}  // namespace colsel
