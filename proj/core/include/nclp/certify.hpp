#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nclp/linear_map.hpp"
#include "nclp/sequence.hpp"
#include "nclp/yeadon.hpp"

namespace nclp {

struct RatioSample {
    std::string family;  // positive_singleton, singleton, positive_sequence, disjoint_pair, general
    double ratio = 0.0;
    double input_upper = 0.0;   // upper endpoint of ‖(x_n)‖
    double image_lower = 0.0;   // lower endpoint of ‖(T x_n)‖
    bool input_exact = false;
};

struct RatioReport {
    double best = 0.0;
    std::vector<RatioSample> samples;

    double best_of(const std::string& family) const;
};

struct RatioOptions {
    int samples = 0;          // 0: cfg.sample_budget
    int max_length = 4;       // longest sampled sequence
    int optimizer_iterations = 60;
    bool general = true;      // include non-positive multi-term sequences
};

/// max over sampled sequences of lower(‖(T x_n)‖) / upper(‖(x_n)‖); a lower
/// bound for ‖T‖_{ℓ¹}.
double l1_ratio_lower(const LinearMap& T, double p, const ToleranceConfig& cfg = {},
                      RatioReport* report = nullptr, const RatioOptions& opts = {});

enum class L1Route {
    p_equals_one,
    separating,
    two_positive_contraction,
    positive_4x,
    commutative_regular,
    sampled_only
};

struct L1Certificate {
    NormInterval value;
    L1Route route = L1Route::sampled_only;
    NormInterval op;                          // ‖T‖ as estimated
    std::optional<YeadonTriple> triple;       // separating route
    std::optional<PositivityResult> positivity;
    std::optional<NormInterval> regular;      // commutative route
    RatioReport ratios;
    bool inconsistency = false;
    std::string note;
};

L1Certificate certify_l1_norm(const LinearMap& T, double p, const ToleranceConfig& cfg = {},
                              const RatioOptions& opts = {});

/// ‖|T|‖ for T between diagonal algebras; throws DomainError otherwise.
NormInterval regular_norm_commutative(const LinearMap& T, double p, const ToleranceConfig& cfg = {});

/// ‖T‖_p = ‖J*(B^p)‖_∞^{1/p} for T = wBJ(·).
double separating_norm(const YeadonTriple& triple, double p);

enum class IsometryVerdict { ytf, no_ytf, not_isometry, undetermined };

struct IsometryResult {
    IsometryVerdict verdict = IsometryVerdict::undetermined;
    double isometry_defect = 0.0;
    bool route_i = false;                 // Yeadon factorization extracted
    std::string extraction_failure;
    std::optional<YeadonTriple> triple;
    int route_ii_pairs = 0;               // disjoint pairs tested
    int route_ii_undetermined = 0;
    std::optional<std::pair<Element, Element>> witness;  // disjoint pair, images not disjoint
    bool positive = false;
    bool inconsistency = false;
    std::string note;
};

IsometryResult classify_l2_isometry(const LinearMap& T, const ToleranceConfig& cfg = {});

struct PolarizationWitness {
    std::array<std::vector<Element>, 4> y;  // y_n^k = (a_n* + i^k b_n)*(a_n* + i^k b_n)
    std::array<double, 4> sums{};          // ‖Σ_n y_n^k‖_p
    double reconstruction_residual = 0.0;  // max_n ‖Σ_k (-i)^k y_n^k / 4 - x_n‖
};

PolarizationWitness polarization_witness(const ElementSequence& x, const Factorization& f, double p);

struct SqrtWitness {
    std::vector<Element> alpha, beta, delta;
    double residual = 0.0;  // largest defect of the three identities, relative
    double bound = 0.0;     // ‖Σ T(a a*)‖_p^{1/2} ‖Σ T(b* b)‖_p^{1/2}
};

/// Square root of (I ⊗ T)([[a a*, a b], [b* a*, b* b]]) for each n. Requires a
/// certified 2-positive T (DomainError otherwise); throws StructuralError when
/// the identities fail.
SqrtWitness two_positive_sqrt(const LinearMap& T, const Factorization& f, double p,
                              const ToleranceConfig& cfg = {});

const char* to_string(L1Route r);
const char* to_string(IsometryVerdict v);

}  // namespace nclp
