#include "colsel/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "colsel/errors.hpp"

namespace colsel {

namespace {

constexpr std::size_t kMaxDim = 4096;
constexpr int kMaxSweeps = 100;
constexpr double kOffDiagTol = 1e-12;
constexpr double kSymmetryTol = 1e-12;

double max_abs_offdiag(const Mat& w) {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < w.rows; ++i)
        for (std::size_t j = i + 1; j < w.cols; ++j) m = std::max(m, std::abs(w(i, j)));
    return m;
}

// One Jacobi rotation zeroing w(i, j), accumulating into v.
void rotate(Mat& w, Mat& v, std::size_t i, std::size_t j) {
    const std::size_t n = w.rows;
    const double apq = w(i, j);
    const double theta = (w(j, j) - w(i, i)) / (2.0 * apq);
    double t;
    if (std::abs(theta) > 1e153) {
        t = 1.0 / (2.0 * theta);  // avoid theta^2 overflow
    } else {
        t = ((theta >= 0.0) ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const double tau = s / (1.0 + c);

    w(i, i) -= t * apq;
    w(j, j) += t * apq;
    w(i, j) = 0.0;
    w(j, i) = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double wik = w(i, k);
        const double wjk = w(j, k);
        w(i, k) = wik - s * (wjk + tau * wik);
        w(k, i) = w(i, k);
        w(j, k) = wjk + s * (wik - tau * wjk);
        w(k, j) = w(j, k);
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double vki = v(k, i);
        const double vkj = v(k, j);
        v(k, i) = vki - s * (vkj + tau * vki);
        v(k, j) = vkj + s * (vki - tau * vkj);
    }
}

void fix_sign(Mat& v, std::size_t col) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < v.rows; ++i) {
        const double a = std::abs(v(i, col));
        if (a > best) {
            best = a;
            arg = i;
        }
    }
    if (v(arg, col) < 0.0) {
        for (std::size_t i = 0; i < v.rows; ++i) v(i, col) = -v(i, col);
    }
}

}  // namespace

SymSpectrum sym_eigen(const Mat& a) {
    if (a.rows != a.cols || a.rows < 1) fail("ParamOutOfRange", "sym_eigen needs a square matrix");
    if (a.rows > kMaxDim) fail("ParamOutOfRange", "sym_eigen caps the dimension at 4096");
    const std::size_t n = a.rows;
    for (double v : a.data) {
        if (!std::isfinite(v)) fail("NonFiniteEntry", "sym_eigen input contains a NaN or Inf entry");
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(a(i, j) - a(j, i)) > kSymmetryTol) {
                fail("NotSymmetric", "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                         ") differs from its transpose by more than 1e-12");
            }
        }
    }

    Mat w = a;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double m = 0.5 * (w(i, j) + w(j, i));
            w(i, j) = m;
            w(j, i) = m;
        }
    }
    Mat v = Mat::identity(n);

    double scale = 0.0;
    for (double x : w.data) scale = std::max(scale, std::abs(x));
    const double tol = kOffDiagTol * std::max(1.0, scale);

    if (n > 1) {
        int sweep = 0;
        for (; sweep < kMaxSweeps; ++sweep) {
            if (max_abs_offdiag(w) <= tol) break;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (std::abs(w(i, j)) > tol * 1e-2) rotate(w, v, i, j);
                }
            }
        }
        if (sweep == kMaxSweeps && max_abs_offdiag(w) > tol) {
            fail("DidNotConverge", "Jacobi sweeps exhausted after " + std::to_string(kMaxSweeps));
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return w(x, x) > w(y, y); });

    SymSpectrum out;
    out.values.resize(n);
    out.vectors = Mat(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = w(order[c], order[c]);
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
        fix_sign(out.vectors, c);
    }
    return out;
}

double smallest_singular_value(const ColumnMatrix& x, std::span<const std::size_t> t_set) {
    if (t_set.empty()) fail("IndexOutOfRange", "index set T must be non-empty");
    const Mat g = subset_gram(x, t_set);
    const SymSpectrum s = sym_eigen(g);
    return std::sqrt(std::max(0.0, s.values.back()));
}

}  // namespace colsel
