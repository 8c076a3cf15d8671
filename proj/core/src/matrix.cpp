#include "colsel/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "colsel/errors.hpp"

namespace colsel {

namespace {

void check_finite(const Mat& m) {
    for (double v : m.data) {
        if (!std::isfinite(v)) fail("NonFiniteEntry", "matrix contains a NaN or Inf entry");
    }
}

void check_shape(const Mat& m) {
    if (m.rows < 1 || m.cols < 1) fail("EmptyMatrix", "matrix must have at least one row and one column");
    if (m.data.size() != m.rows * m.cols) fail("ParamOutOfRange", "matrix storage does not match its shape");
}

double column_norm(const Mat& m, std::size_t j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

}  // namespace

double ColumnMatrix::col_dot_direct(std::size_t a, std::size_t b) const {
    double s = 0.0;
    for (std::size_t i = 0; i < m_.rows; ++i) s += m_(i, a) * m_(i, b);
    return s;
}

void ColumnMatrix::maybe_build_gram(std::size_t budget) {
    const std::size_t p = m_.cols;
    if (p == 0 || p > budget / p) return;  // p*p > budget, overflow-safe
    gram_.assign(p * p, 0.0);
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = a; b < p; ++b) {
            const double d = col_dot_direct(a, b);
            gram_[a * p + b] = d;
            gram_[b * p + a] = d;
        }
    }
}

ColumnMatrix ColumnMatrix::normalize_columns(const Mat& raw, std::size_t gram_budget) {
    check_shape(raw);
    check_finite(raw);
    Mat m = raw;
    for (std::size_t j = 0; j < m.cols; ++j) {
        const double norm = column_norm(m, j);
        if (norm < 1e-14) fail("ZeroColumn", "column " + std::to_string(j) + " has norm below 1e-14");
        const double inv = 1.0 / norm;
        for (std::size_t i = 0; i < m.rows; ++i) m(i, j) *= inv;
    }
    ColumnMatrix x(std::move(m));
    x.maybe_build_gram(gram_budget);
    return x;
}

ColumnMatrix ColumnMatrix::from_normalized(const Mat& data, double tol, std::size_t gram_budget) {
    check_shape(data);
    check_finite(data);
    for (std::size_t j = 0; j < data.cols; ++j) {
        const double norm = column_norm(data, j);
        if (std::abs(norm - 1.0) > tol) {
            fail("NotNormalized", "column " + std::to_string(j) + " has norm " + std::to_string(norm));
        }
    }
    ColumnMatrix x(data);
    x.maybe_build_gram(gram_budget);
    return x;
}

double coherence(const ColumnMatrix& x) {
    const std::size_t p = x.cols();
    if (p < 2) fail("TooFewColumns", "coherence needs at least two columns");
    double mu = 0.0;
    for (std::size_t a = 0; a + 1 < p; ++a) {
        for (std::size_t b = a + 1; b < p; ++b) {
            mu = std::max(mu, std::abs(x.col_dot(a, b)));
        }
    }
    return mu;
}

double coherence_subset(const ColumnMatrix& x, std::span<const std::size_t> subset) {
    if (subset.size() < 2) fail("TooFewColumns", "coherence needs at least two columns");
    for (std::size_t idx : subset) {
        if (idx >= x.cols()) fail("IndexOutOfRange", "column index " + std::to_string(idx) + " out of range");
    }
    double mu = 0.0;
    for (std::size_t a = 0; a + 1 < subset.size(); ++a) {
        for (std::size_t b = a + 1; b < subset.size(); ++b) {
            mu = std::max(mu, std::abs(x.col_dot(subset[a], subset[b])));
        }
    }
    return mu;
}

double cross_gram_norm(const ColumnMatrix& x, std::span<const std::size_t> t_set, std::size_t j) {
    if (t_set.empty()) fail("IndexOutOfRange", "index set T must be non-empty");
    if (j >= x.cols()) fail("IndexOutOfRange", "column index " + std::to_string(j) + " out of range");
    std::vector<std::size_t> seen(t_set.begin(), t_set.end());
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        fail("IndexOutOfRange", "index set T contains duplicates");
    }
    double s = 0.0;
    for (std::size_t k : t_set) {
        if (k >= x.cols()) fail("IndexOutOfRange", "column index " + std::to_string(k) + " out of range");
        if (k == j) fail("IndexInT", "column " + std::to_string(j) + " already belongs to T");
        const double d = x.col_dot(k, j);
        s += d * d;
    }
    return std::sqrt(s);
}

Mat subset_gram(const ColumnMatrix& x, std::span<const std::size_t> t_set) {
    for (std::size_t idx : t_set) {
        if (idx >= x.cols()) fail("IndexOutOfRange", "column index " + std::to_string(idx) + " out of range");
    }
    const std::size_t s = t_set.size();
    Mat g(s, s);
    for (std::size_t a = 0; a < s; ++a) {
        for (std::size_t b = a; b < s; ++b) {
            const double d = x.col_dot(t_set[a], t_set[b]);
            g(a, b) = d;
            g(b, a) = d;
        }
    }
    return g;
}

}  // namespace colsel
