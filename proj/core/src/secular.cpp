#include "colsel/secular.hpp"

#include <cmath>
#include <string>

#include "colsel/errors.hpp"

namespace colsel {

namespace {

constexpr double kPoleGuard = 1e-13;
constexpr double kBisectWidth = 1e-6;
constexpr double kResidualTol = 1e-10;

double eval_unchecked(const SecularFunction& f, double x) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.lambdas.size(); ++i) {
        s += f.weights[i] / (x - f.lambdas[i]);
    }
    return 1.0 - s;
}

double derivative(const SecularFunction& f, double x) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.lambdas.size(); ++i) {
        const double d = x - f.lambdas[i];
        s += f.weights[i] / (d * d);
    }
    return s;
}

}  // namespace

SecularFunction make_secular(const SymSpectrum& spectrum, std::span<const double> v) {
    const std::size_t n = spectrum.dim();
    if (v.size() != n) fail("ParamOutOfRange", "vector length does not match the spectrum dimension");
    SecularFunction f;
    f.lambdas = spectrum.values;
    f.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double dot = 0.0;
        for (std::size_t r = 0; r < n; ++r) dot += v[r] * spectrum.vectors(r, i);
        f.weights[i] = dot * dot;
    }
    return f;
}

double secular_eval(const SecularFunction& f, double x) {
    if (f.lambdas.size() != f.weights.size()) {
        fail("ParamOutOfRange", "eigenvalue and weight sequences differ in length");
    }
    for (double lam : f.lambdas) {
        if (std::abs(x - lam) < kPoleGuard) {
            fail("PoleProximity", "evaluation point within 1e-13 of pole " + std::to_string(lam));
        }
    }
    return eval_unchecked(f, x);
}

double secular_smallest_root(const SecularFunction& f, double lambda_lo) {
    if (f.lambdas.size() != f.weights.size()) {
        fail("ParamOutOfRange", "eigenvalue and weight sequences differ in length");
    }
    if (!(lambda_lo > 0.0) || !std::isfinite(lambda_lo)) {
        fail("ParamOutOfRange", "lambda_lo must be positive and finite");
    }

    // Bracket the root inside (0, lambda_lo). f is increasing there, -inf at
    // 0+ when the kernel carries weight, +inf at lambda_lo- when the next
    // eigenvector does.
    double lo = 0.5 * lambda_lo;
    while (eval_unchecked(f, lo) > 0.0) {
        lo *= 0.5;
        if (lo < kPoleGuard) fail("NoRootInInterval", "no sign change above the zero eigenvalues");
    }
    double hi = lambda_lo - 0.5 * (lambda_lo - lo);
    while (eval_unchecked(f, hi) < 0.0) {
        const double gap = lambda_lo - hi;
        if (gap < 2.0 * kPoleGuard) {
            fail("PoleProximity", "root within 1e-13 of eigenvalue " + std::to_string(lambda_lo));
        }
        hi = lambda_lo - 0.5 * gap;
    }

    while (hi - lo > kBisectWidth) {
        const double mid = 0.5 * (lo + hi);
        if (eval_unchecked(f, mid) < 0.0) lo = mid; else hi = mid;
    }

    // Newton with the bracket as safeguard; escape falls back to bisection.
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fx = eval_unchecked(f, x);
        if (std::abs(fx) <= kResidualTol) return x;
        if (fx < 0.0) lo = x; else hi = x;
        const double fpx = derivative(f, x);
        double next = x - fx / fpx;
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) < 1e-16 * std::max(1.0, std::abs(x))) {
            return next;  // interval at rounding resolution
        }
        x = next;
    }
    return x;
}

}  // namespace colsel
