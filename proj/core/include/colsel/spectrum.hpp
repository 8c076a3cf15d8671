#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "colsel/mat.hpp"
#include "colsel/matrix.hpp"

namespace colsel {

/// Full spectrum of a symmetric matrix: eigenvalues in descending order,
/// eigenvector i stored as column i of `vectors` (orthonormal).
struct SymSpectrum {
    std::vector<double> values;
    Mat vectors;

    std::size_t dim() const { return values.size(); }
};

/// Eigendecomposition by cyclic Jacobi sweeps. Deterministic: fixed rotation
/// order, eigenvalues sorted descending with stable tie order, eigenvector
/// signs fixed so the largest-magnitude entry of each vector is positive.
///
/// Accepts n <= 4096 and requires |A_ij - A_ji| <= 1e-12. Off-diagonal
/// convergence tolerance is 1e-12 (relative to the largest input entry),
/// capped at 100 sweeps.
/// Throws ParamOutOfRange, NotSymmetric, DidNotConverge.
SymSpectrum sym_eigen(const Mat& a);

/// Smallest singular value of the column submatrix X_T, computed as the
/// square root of the smallest eigenvalue of the |T| x |T| Gram matrix.
/// Duplicate indices in T are allowed. Throws IndexOutOfRange.
double smallest_singular_value(const ColumnMatrix& x, std::span<const std::size_t> t_set);

}  // namespace colsel
