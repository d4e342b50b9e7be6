#pragma once

#include <limits>

#include "nclp/algebra.hpp"

namespace nclp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Hölder conjugate p' with 1/p + 1/p' = 1; maps 1 <-> ∞.
double conjugate_exponent(double p);

/// ‖x‖_p = τ(|x|^p)^{1/p} for p in [1, ∞]; p = ∞ gives the operator norm.
/// Throws DomainError for p < 1.
double lp_norm(const Element& x, double p);

/// τ(|x|^p) for any p > 0.
double trace_abs_power(const Element& x, double p);

/// τ(ab), the pairing of L^p with L^{p'}.
Scalar duality_pair(const Element& a, const Element& b);

/// Self-adjoint with spectrum above -tol·‖x‖.
bool is_positive(const Element& x, double tol = 1e-9);

/// max(‖a*b‖, ‖ab*‖) <= tol·‖a‖‖b‖.
bool disjoint(const Element& a, const Element& b, double tol = 1e-9);

namespace detail {

/// τ(|x|^p)^{1/p} for 0 < p < 1 as well; only sequence norms use p < 1.
double lp_quasi_norm(const Element& x, double p);

}  // namespace detail

}  // namespace nclp
