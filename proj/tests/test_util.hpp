#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "colsel/mat.hpp"
#include "colsel/matrix.hpp"
#include "colsel/rng.hpp"
#include "colsel/spectrum.hpp"

namespace test_util {

inline colsel::Mat random_mat(std::size_t n, std::size_t p, std::uint64_t seed) {
    colsel::Mat m(n, p);
    colsel::Rng rng(seed);
    for (double& v : m.data) v = rng.gaussian();
    return m;
}

inline colsel::ColumnMatrix random_normalized(std::size_t n, std::size_t p, std::uint64_t seed) {
    return colsel::ColumnMatrix::normalize_columns(random_mat(n, p, seed));
}

// Random orthogonal matrix via Gram-Schmidt on Gaussian columns.
inline colsel::Mat random_orthogonal(std::size_t n, std::uint64_t seed) {
    colsel::Mat q = random_mat(n, n, seed);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += q(i, j) * q(i, k);
            for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += q(i, j) * q(i, j);
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
    }
    return q;
}

// Q diag(d) Q^t for a random orthogonal Q.
inline colsel::Mat psd_from_spectrum(const std::vector<double>& d, std::uint64_t seed) {
    const std::size_t n = d.size();
    const colsel::Mat q = random_orthogonal(n, seed);
    colsel::Mat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += q(i, k) * d[k] * q(j, k);
            a(i, j) = s;
            a(j, i) = s;
        }
    return a;
}

inline std::vector<double> random_unit_vector(std::size_t n, colsel::Rng& rng) {
    std::vector<double> v(n);
    double norm = 0.0;
    for (double& x : v) {
        x = rng.gaussian();
        norm += x * x;
    }
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    return v;
}

// k distinct indices from [0, p).
inline std::vector<std::size_t> random_subset(std::size_t p, std::size_t k, colsel::Rng& rng) {
    std::vector<std::size_t> pool(p);
    for (std::size_t i = 0; i < p; ++i) pool[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(p - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

// X_T X_T^t as an n x n outer-product matrix.
inline colsel::Mat outer_product(const colsel::ColumnMatrix& x, const std::vector<std::size_t>& t_set) {
    const std::size_t n = x.rows();
    colsel::Mat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k : t_set) s += x.entry(i, k) * x.entry(j, k);
            a(i, j) = s;
            a(j, i) = s;
        }
    return a;
}

inline colsel::Mat add_rank_one(const colsel::Mat& a, const std::vector<double>& v) {
    colsel::Mat b = a;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) b(i, j) += v[i] * v[j];
    return b;
}

// Characteristic polynomial evaluated through the spectrum: prod (x - lambda_i).
inline double char_poly(const colsel::SymSpectrum& s, double x) {
    double p = 1.0;
    for (double lam : s.values) p *= (x - lam);
    return p;
}

}  // namespace test_util
