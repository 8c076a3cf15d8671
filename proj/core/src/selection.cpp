#include "colsel/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "colsel/bounds.hpp"
#include "colsel/errors.hpp"
#include "colsel/rng.hpp"
#include "colsel/spectrum.hpp"

namespace colsel {

namespace {

constexpr std::size_t kParallelThreshold = 2048;  // candidates below this scan serially

std::size_t worker_count(std::size_t total) {
    const std::size_t hw = std::max<unsigned>(1, std::thread::hardware_concurrency());
    return std::min<std::size_t>(std::min<std::size_t>(hw, 8), std::max<std::size_t>(1, total / 512));
}

// Splits [0, total) into `parts` contiguous chunks and runs fn(part, begin, end).
template <typename Fn>
void parallel_chunks(std::size_t total, std::size_t parts, Fn&& fn) {
    std::vector<std::thread> pool;
    pool.reserve(parts);
    const std::size_t chunk = (total + parts - 1) / parts;
    for (std::size_t w = 0; w < parts; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(total, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, w, begin, end] { fn(w, begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

const char* to_string(SelectionMode mode) {
    return mode == SelectionMode::exact ? "exact" : "certificate";
}

const char* to_string(StopReason reason) {
    switch (reason) {
        case StopReason::eta_below: return "eta_below";
        case StopReason::max_cols: return "max_cols";
        case StopReason::exhausted: return "exhausted";
    }
    return "unknown";
}

ScoreState::ScoreState(const ColumnMatrix& x)
    : x_(&x), sq_(x.cols(), 0.0), consumed_(x.cols(), 0), live_(x.cols()) {}

void ScoreState::append(std::size_t k, bool parallel) {
    if (k >= sq_.size()) fail("IndexOutOfRange", "column index out of range");
    if (!consumed_[k]) {
        consumed_[k] = 1;
        --live_;
    }
    const std::size_t p = sq_.size();
    auto update = [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            if (consumed_[j]) continue;
            const double d = x_->col_dot(k, j);
            sq_[j] += d * d;
        }
    };
    if (parallel && p >= kParallelThreshold) {
        parallel_chunks(p, worker_count(p), [&](std::size_t, std::size_t b, std::size_t e) { update(b, e); });
    } else {
        update(0, p);
    }
}

std::pair<double, std::size_t> ScoreState::best(bool parallel) const {
    const std::size_t p = sq_.size();
    const auto worst = std::make_pair(std::numeric_limits<double>::infinity(),
                                      std::numeric_limits<std::size_t>::max());
    auto scan = [&](std::size_t begin, std::size_t end) {
        auto local = worst;
        for (std::size_t j = begin; j < end; ++j) {
            if (consumed_[j]) continue;
            const auto cand = std::make_pair(sq_[j], j);
            if (cand < local) local = cand;
        }
        return local;
    };
    auto result = worst;
    if (parallel && p >= kParallelThreshold) {
        const std::size_t parts = worker_count(p);
        std::vector<std::pair<double, std::size_t>> partial(parts, worst);
        parallel_chunks(p, parts, [&](std::size_t w, std::size_t b, std::size_t e) { partial[w] = scan(b, e); });
        for (const auto& c : partial) {
            if (c < result) result = c;
        }
    } else {
        result = scan(0, p);
    }
    if (result.second == worst.second) fail("ParamOutOfRange", "no live columns remain");
    return result;
}

SelectionTrace greedy_select(const ColumnMatrix& x, const SelectionConfig& cfg) {
    const std::size_t p = x.cols();
    if (p < 1) fail("EmptyMatrix", "selection needs at least one column");
    if (!(cfg.epsilon > 0.0) || !(cfg.epsilon < 1.0)) {
        fail("ParamOutOfRange", "epsilon must lie in (0, 1)");
    }
    const std::size_t max_cols =
        cfg.max_cols == 0 ? std::min(x.rows(), p) : cfg.max_cols;
    if (max_cols < 1) fail("ParamOutOfRange", "max_cols must be at least 1");

    std::size_t start;
    if (cfg.start.has_value()) {
        start = *cfg.start;
        if (start >= p) fail("StartIndexOutOfRange", "start column " + std::to_string(start) + " out of range");
    } else {
        Rng rng(cfg.seed);
        start = static_cast<std::size_t>(rng.below(p));
    }

    const double mu = p >= 2 ? coherence(x) : 0.0;
    const double mu2 = mu * mu;

    SelectionTrace trace;
    trace.mu = mu;
    trace.final_T.push_back(start);
    ScoreState scores(x);
    scores.append(start, cfg.parallel_scan);

    const bool exact = cfg.mode == SelectionMode::exact;
    double eta = 1.0;
    const double eta_floor = 1.0 - cfg.epsilon;

    for (;;) {
        if (eta < eta_floor) {
            trace.stop_reason = StopReason::eta_below;
            break;
        }
        if (scores.live_count() == 0) {
            trace.stop_reason = StopReason::exhausted;
            break;
        }
        if (trace.final_T.size() >= max_cols) {
            trace.stop_reason = StopReason::max_cols;
            break;
        }

        const std::size_t s = trace.final_T.size();
        // Exact mode eigensolves the current Gram; its smallest eigenvalue
        // can exceed 1 by rounding, so clamp into the bound's domain.
        double lambda_base = eta;
        if (exact) {
            const SymSpectrum spec = sym_eigen(subset_gram(x, trace.final_T));
            lambda_base = std::min(1.0, spec.values.back());
        }

        const auto [sq, j] = scores.best(cfg.parallel_scan);
        const double score = std::sqrt(sq);
        const double alpha = mu2 > 0.0 ? sq / (static_cast<double>(s) * mu2) : 0.0;

        SelectionStep step;
        step.s = s;
        step.index = j;
        step.score = score;
        step.alpha = alpha;
        step.eta = eta;
        if (exact) step.exact_lambda_min = lambda_base;
        trace.steps.push_back(step);

        const double dec = append_decrement(alpha, s, mu, lambda_base);
        eta = (exact ? lambda_base : eta) - dec;

        trace.final_T.push_back(j);
        scores.append(j, cfg.parallel_scan);
    }

    trace.final_eta = eta;
    if (exact) {
        const SymSpectrum spec = sym_eigen(subset_gram(x, trace.final_T));
        trace.final_exact_lambda_min = spec.values.back();
    }
    return trace;
}

BaselineResult random_select(const ColumnMatrix& x, std::size_t k, std::uint64_t seed) {
    const std::size_t p = x.cols();
    if (k < 1 || k > p) fail("KOutOfRange", "k must lie in [1, p]");
    std::vector<std::size_t> pool(p);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(p - i));
        std::swap(pool[i], pool[j]);
    }
    BaselineResult out;
    out.method = "random";
    out.selected.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    out.sigma_min = smallest_singular_value(x, out.selected);
    return out;
}

std::vector<double> leverage_scores(const ColumnMatrix& x, std::size_t rank) {
    const std::size_t n = x.rows();
    const std::size_t p = x.cols();
    if (rank < 1 || rank > std::min(n, p)) fail("RankOutOfRange", "rank must lie in [1, min(n, p)]");

    std::vector<double> lev(p, 0.0);
    if (p <= n) {
        Mat gram(p, p);
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t b = a; b < p; ++b) {
                const double d = x.col_dot(a, b);
                gram(a, b) = d;
                gram(b, a) = d;
            }
        const SymSpectrum spec = sym_eigen(gram);
        for (std::size_t j = 0; j < p; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < rank; ++i) s += spec.vectors(j, i) * spec.vectors(j, i);
            lev[j] = s;
        }
    } else {
        Mat outer(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r; c < n; ++c) {
                double s = 0.0;
                for (std::size_t j = 0; j < p; ++j) s += x.entry(r, j) * x.entry(c, j);
                outer(r, c) = s;
                outer(c, r) = s;
            }
        const SymSpectrum spec = sym_eigen(outer);
        // Right singular vector i is X^t u_i / sigma_i; its j-th entry is
        // <X_j, u_i> / sqrt(lambda_i). Eigenvalues at numerical zero
        // contribute nothing.
        for (std::size_t i = 0; i < rank; ++i) {
            const double lam = spec.values[i];
            if (lam <= 1e-12) continue;
            for (std::size_t j = 0; j < p; ++j) {
                double dot = 0.0;
                for (std::size_t r = 0; r < n; ++r) dot += x.entry(r, j) * spec.vectors(r, i);
                lev[j] += dot * dot / lam;
            }
        }
    }
    return lev;
}

BaselineResult leverage_select(const ColumnMatrix& x, std::size_t k, std::size_t rank) {
    const std::size_t p = x.cols();
    if (k < 1 || k > p) fail("KOutOfRange", "k must lie in [1, p]");
    const std::vector<double> lev = leverage_scores(x, rank);

    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (lev[a] != lev[b]) return lev[a] > lev[b];
        return a < b;
    });

    BaselineResult out;
    out.method = "leverage";
    out.selected.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    out.sigma_min = smallest_singular_value(x, out.selected);
    return out;
}

}  // namespace colsel
