#pragma once

#include <optional>
#include <vector>

#include "nclp/algebra.hpp"
#include "nclp/config.hpp"

namespace nclp {

/// Finite, nonempty list of elements of one algebra.
class ElementSequence {
public:
    ElementSequence() = default;
    /// Throws StructuralError on an empty list or mixed algebras.
    explicit ElementSequence(std::vector<Element> items);

    const AlgebraDescriptor& algebra() const { return items_.front().algebra(); }
    std::size_t size() const { return items_.size(); }
    const std::vector<Element>& items() const { return items_; }
    const Element& operator[](std::size_t n) const { return items_[n]; }
    Element sum() const;

private:
    std::vector<Element> items_;
};

/// x_n = a_n b_n for every n.
struct Factorization {
    std::vector<Element> a;
    std::vector<Element> b;

    /// ‖Σ a_n a_n*‖_p^{1/2} · ‖Σ b_n* b_n‖_p^{1/2}.
    double cost(double p) const;
    /// max_n ‖a_n b_n - x_n‖_∞.
    double residual(const ElementSequence& x) const;
};

struct NormInterval {
    double lower = 0.0;
    double upper = 0.0;
    bool certified_exact = false;
    std::optional<Factorization> witness;

    double midpoint() const { return 0.5 * (lower + upper); }
    double gap() const { return upper - lower; }
};

enum class Side { column, row };

/// column: ‖Σ x_n* x_n‖_{p/2}^{1/2}; row: ‖Σ x_n x_n*‖_{p/2}^{1/2}.
double column_row_norm(const ElementSequence& seq, double p, Side side);

/// ‖Σ x_n‖_p; throws DomainError unless every item is positive.
double l1_norm_positive(const ElementSequence& seq, double p, const ToleranceConfig& cfg = {});

/// Diagnostics collected by l1_norm_bounds when requested.
struct L1Trace {
    struct Visit {
        double product_norm;  // ‖Σ a_n b_n‖_p
        double bound;         // ‖Σ a_n a_n*‖_p^{1/2} ‖Σ b_n* b_n‖_p^{1/2}
        double residual;      // max_n ‖a_n b_n - x_n‖_∞
    };
    std::vector<Visit> visits;
    double polar_upper = 0.0;
    int iterations = 0;
    int rejected = 0;
};

struct L1Options {
    int max_iterations = 300;
    /// Random restarts after the polar and augmented stages.
    bool random_restarts = true;
    /// Record every visited factorization (costly).
    L1Trace* trace = nullptr;
};

/// Two-sided estimate of ‖(x_n)‖_{L^p(M;ℓ¹)}.
NormInterval l1_norm_bounds(const ElementSequence& seq, double p, const ToleranceConfig& cfg = {},
                            const L1Options& opts = {});

/// Lower endpoint only (no optimisation).
double l1_lower_bound(const ElementSequence& seq, double p);

/// ‖(a, b)‖_{L^p(M;ℓ¹₂)}.
NormInterval l12_norm(const Element& a, const Element& b, double p, const ToleranceConfig& cfg = {},
                      const L1Options& opts = {});

enum class DinqVerdict { disjoint, not_disjoint, undetermined };

struct DinqResult {
    DinqVerdict verdict = DinqVerdict::undetermined;
    NormInterval interval;
    double threshold = 0.0;  // (‖a‖₂² + ‖b‖₂²)^{1/2}
    bool algebraic = false;  // disjoint(a, b) at cfg.algebraic_tol
};

/// Disjointness decided from the L²(M;ℓ¹₂) norm of (a, b).
DinqResult dinq_disjoint_test(const Element& a, const Element& b, const ToleranceConfig& cfg = {},
                              const L1Options& opts = {});

const char* to_string(DinqVerdict v);

}  // namespace nclp
