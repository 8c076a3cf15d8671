#include "colsel/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "colsel/bounds.hpp"
#include "colsel/errors.hpp"
#include "colsel/rng.hpp"
#include "colsel/spectrum.hpp"

namespace colsel {

namespace {

// Substream tags inside one trial (see derive_seed in rng.hpp).
constexpr std::uint64_t kGreedyStartStream = 1;
constexpr std::uint64_t kRandomBaselineStream = 2;

std::vector<double> bottom_sigmas(const ColumnMatrix& x, const std::vector<std::size_t>& selected,
                                  std::size_t m) {
    const SymSpectrum spec = sym_eigen(subset_gram(x, selected));
    std::vector<double> sigmas;  // eigenvalues are descending, walk backwards
    const std::size_t take = std::min(m, spec.values.size());
    sigmas.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
        const double lam = spec.values[spec.values.size() - 1 - i];
        sigmas.push_back(std::sqrt(std::max(0.0, lam)));
    }
    return sigmas;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

const char* to_string(Method m) {
    switch (m) {
        case Method::greedy_exact: return "greedy-exact";
        case Method::greedy_certificate: return "greedy-certificate";
        case Method::random_uniform: return "random";
        case Method::leverage: return "leverage";
    }
    return "unknown";
}

bool method_from_string(const std::string& name, Method& out) {
    if (name == "greedy-exact") out = Method::greedy_exact;
    else if (name == "greedy-certificate") out = Method::greedy_certificate;
    else if (name == "random") out = Method::random_uniform;
    else if (name == "leverage") out = Method::leverage;
    else return false;
    return true;
}

ColumnMatrix gen_gaussian(std::size_t n, std::size_t p, std::uint64_t seed) {
    if (n < 1 || p < 1) fail("ParamOutOfRange", "matrix dimensions must be positive");
    Mat raw(n, p);
    Rng rng(seed);
    for (double& v : raw.data) v = rng.gaussian();
    return ColumnMatrix::normalize_columns(raw);
}

std::vector<TrialResult> run_trials(const EnsembleSpec& spec) {
    if (spec.trials < 1) fail("ParamOutOfRange", "trials must be at least 1");
    if (spec.k < 1 || spec.k > spec.cols) fail("KOutOfRange", "k must lie in [1, cols]");
    if (spec.methods.empty()) fail("ParamOutOfRange", "at least one method required");

    std::vector<TrialResult> results;
    results.reserve(spec.trials);
    for (std::size_t t = 0; t < spec.trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(spec.seed, t);
        const ColumnMatrix x = gen_gaussian(spec.rows, spec.cols, trial_seed);

        TrialResult trial;
        trial.trial = t;
        for (Method m : spec.methods) {
            MethodRun run;
            run.method = m;
            const auto t0 = std::chrono::steady_clock::now();
            switch (m) {
                case Method::greedy_exact:
                case Method::greedy_certificate: {
                    SelectionConfig cfg;
                    cfg.epsilon = spec.epsilon;
                    cfg.max_cols = spec.k;
                    cfg.seed = derive_seed(trial_seed, kGreedyStartStream);
                    cfg.mode = m == Method::greedy_exact ? SelectionMode::exact
                                                         : SelectionMode::certificate;
                    run.selected = greedy_select(x, cfg).final_T;
                    break;
                }
                case Method::random_uniform:
                    run.selected =
                        random_select(x, spec.k, derive_seed(trial_seed, kRandomBaselineStream)).selected;
                    break;
                case Method::leverage:
                    run.selected = leverage_select(x, spec.k, spec.k).selected;
                    break;
            }
            const auto t1 = std::chrono::steady_clock::now();
            run.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
            run.bottom_sigmas = bottom_sigmas(x, run.selected, spec.bottom_m);
            trial.runs.push_back(std::move(run));
        }
        results.push_back(std::move(trial));
    }
    return results;
}

CompareReport summarize(const std::vector<TrialResult>& results) {
    if (results.empty()) fail("EmptyResults", "no trial results to summarize");
    const std::size_t n_methods = results.front().runs.size();
    for (const auto& r : results) {
        if (r.runs.size() != n_methods) fail("ParamOutOfRange", "trials ran different method sets");
    }

    CompareReport report;
    report.trials = results.size();
    for (std::size_t m = 0; m < n_methods; ++m) {
        std::vector<double> sigma;
        double wall = 0.0;
        sigma.reserve(results.size());
        for (const auto& r : results) {
            sigma.push_back(r.runs[m].bottom_sigmas.empty() ? 0.0 : r.runs[m].bottom_sigmas.front());
            wall += r.runs[m].wall_seconds;
        }
        MethodStats st;
        st.method = results.front().runs[m].method;
        st.mean_sigma_min = 0.0;
        for (double v : sigma) st.mean_sigma_min += v;
        st.mean_sigma_min /= static_cast<double>(sigma.size());
        st.median_sigma_min = median(sigma);
        st.mean_wall_seconds = wall / static_cast<double>(results.size());
        report.stats.push_back(st);
    }
    for (std::size_t a = 0; a + 1 < n_methods; ++a) {
        for (std::size_t b = a + 1; b < n_methods; ++b) {
            PairwiseWins w;
            w.a = results.front().runs[a].method;
            w.b = results.front().runs[b].method;
            for (const auto& r : results) {
                const double sa = r.runs[a].bottom_sigmas.empty() ? 0.0 : r.runs[a].bottom_sigmas.front();
                const double sb = r.runs[b].bottom_sigmas.empty() ? 0.0 : r.runs[b].bottom_sigmas.front();
                if (sa > sb) ++w.a_wins;
                else if (sb > sa) ++w.b_wins;
                else ++w.ties;
            }
            report.wins.push_back(w);
        }
    }
    return report;
}

BoundTraceReport bound_trace(const ColumnMatrix& x, SelectionConfig cfg) {
    cfg.mode = SelectionMode::exact;  // the trace needs the exact curve anyway
    const SelectionTrace trace = greedy_select(x, cfg);

    BoundTraceReport report;
    report.mu = trace.mu;
    const std::size_t total = trace.final_T.size();

    double worst_alpha = 0.0;
    for (std::size_t s = 1; s <= total; ++s) {
        BoundTraceRow row;
        row.s = s;
        if (s <= trace.steps.size()) {
            row.eta = trace.steps[s - 1].eta;
            row.exact = trace.steps[s - 1].exact_lambda_min.value();
        } else {
            row.eta = trace.final_eta;
            row.exact = trace.final_exact_lambda_min.value();
        }

        // Closed-form cap seeded at the singleton start, with the worst
        // alpha realized so far. s = 1 has no appends and no loss.
        BatchBoundParams params;
        params.mu = trace.mu;
        params.alpha = worst_alpha;
        params.s0 = 1;
        params.s1 = s - 1;
        params.lambda_s0 = 1.0;
        row.batch = std::max(0.0, 1.0 - eps_min(params, /*no_append_short_circuit=*/true));

        if (s == 1) {
            row.gershgorin = 1.0;
        } else {
            std::span<const std::size_t> prefix(trace.final_T.data(), s);
            row.gershgorin = gershgorin_lower_bound(coherence_subset(x, prefix), s);
        }

        if (row.eta > row.exact + 1e-9 || row.gershgorin > row.exact + 1e-9) {
            fail("CertificateViolation",
                 "bound exceeded the exact eigenvalue at step " + std::to_string(s));
        }
        if (row.batch > row.exact + 1e-9) report.batch_quarantined = true;

        report.rows.push_back(row);
        if (s <= trace.steps.size()) worst_alpha = std::max(worst_alpha, trace.steps[s - 1].alpha);
    }
    return report;
}

}  // namespace colsel
