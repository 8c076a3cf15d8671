#pragma once

#include <span>
#include <vector>

#include "colsel/spectrum.hpp"

namespace colsel {

/// The rational function tied to the rank-one update A -> A + vv^t:
///
///   f(x) = 1 - sum_i w_i / (x - lambda_i),   w_i = <v, u_i>^2,
///
/// where (lambda_i, u_i) is the spectrum of A. The roots of f are exactly
/// the eigenvalues of A + vv^t that are not eigenvalues of A (Cauchy
/// interlacing / characteristic polynomial identity).
struct SecularFunction {
    std::vector<double> lambdas;
    std::vector<double> weights;
};

/// Builds the secular function of A + vv^t from the spectrum of A.
/// v must have length spectrum.dim(). Throws ParamOutOfRange.
SecularFunction make_secular(const SymSpectrum& spectrum, std::span<const double> v);

/// Evaluates f at x. x must stay at least 1e-13 away from every pole.
/// Throws PoleProximity.
double secular_eval(const SecularFunction& f, double x);

/// Smallest root of f on the open interval (0, lambda_lo), where lambda_lo
/// is the smallest nonzero eigenvalue of A. For A = X_T X_T^t (rank |T| < n)
/// and generic unit v this root is the smallest nonzero eigenvalue of
/// A + vv^t. Bisection down to width 1e-6 followed by bracket-safeguarded
/// Newton; converged when |f| <= 1e-10.
/// Throws NoRootInInterval, PoleProximity, ParamOutOfRange.
double secular_smallest_root(const SecularFunction& f, double lambda_lo);

}  // namespace colsel
