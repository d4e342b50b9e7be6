#include "nclp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nclp/errors.hpp"

namespace nclp {

double conjugate_exponent(double p) {
    if (!(p >= 1)) throw DomainError("exponent must be >= 1");
    if (p == 1) return kInf;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

double trace_abs_power(const Element& x, double p) {
    if (!(p > 0) || std::isinf(p)) throw DomainError("trace_abs_power needs 0 < p < ∞");
    double t = 0;
    const auto sv = singular_values(x);
    for (std::size_t k = 0; k < sv.size(); ++k) {
        double s = 0;
        for (Index i = 0; i < sv[k].size(); ++i) {
            if (sv[k](i) > 0) s += std::pow(sv[k](i), p);
        }
        t += x.algebra().weight(k) * s;
    }
    return t;
}

namespace detail {

double lp_quasi_norm(const Element& x, double p) {
    if (std::isinf(p)) return x.operator_norm();
    if (!(p > 0)) throw DomainError("exponent must be positive");
    if (p == 2) {
        double t = 0;
        for (std::size_t k = 0; k < x.num_blocks(); ++k)
            t += x.algebra().weight(k) * x.block(k).squaredNorm();
        return std::sqrt(t);
    }
    // scale out the largest singular value to keep powers in range
    const double top = x.operator_norm();
    if (top == 0) return 0;
    double t = 0;
    const auto sv = singular_values(x);
    for (std::size_t k = 0; k < sv.size(); ++k) {
        double s = 0;
        for (Index i = 0; i < sv[k].size(); ++i) s += std::pow(sv[k](i) / top, p);
        t += x.algebra().weight(k) * s;
    }
    return top * std::pow(t, 1.0 / p);
}

}  // namespace detail

double lp_norm(const Element& x, double p) {
    if (!(p >= 1)) throw DomainError("lp_norm: exponent " + std::to_string(p) + " < 1");
    return detail::lp_quasi_norm(x, p);
}

Scalar duality_pair(const Element& a, const Element& b) {
    require_same_algebra(a, b, "duality_pair");
    Scalar t = 0;
    for (std::size_t k = 0; k < a.num_blocks(); ++k)
        t += a.algebra().weight(k) * (a.block(k).transpose().cwiseProduct(b.block(k))).sum();
    return t;
}

bool is_positive(const Element& x, double tol) {
    const double scale = x.operator_norm();
    if (!is_self_adjoint(x, tol)) return false;
    for (const auto& ev : eigenvalues(x)) {
        if (ev.size() && ev.minCoeff() < -tol * scale) return false;
    }
    return true;
}

bool disjoint(const Element& a, const Element& b, double tol) {
    require_same_algebra(a, b, "disjoint");
    const double scale = a.operator_norm() * b.operator_norm();
    if (scale == 0) return true;
    const double cross = std::max((a.adjoint() * b).operator_norm(), (a * b.adjoint()).operator_norm());
    return cross <= tol * scale;
}

}  // namespace nclp
