#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nclp/algebra.hpp"
#include "nclp/config.hpp"
#include "nclp/linear_map.hpp"

namespace nclp {

struct JordanReport {
    bool ok = false;
    double defect = 0.0;  // largest residual, relative to the image scale
    std::string failure;  // "adjoint" or "square" when !ok
};

/// Checks J(a*) = J(a)* and J(ab + ba) = J(a)J(b) + J(b)J(a) on the matrix-unit
/// basis, then J(x²) = J(x)² on random self-adjoint x.
JordanReport verify_jordan(const LinearMap& J, const ToleranceConfig& cfg = {});

enum class CentralKind { homomorphic, anti_homomorphic };

struct CentralDecomposition {
    Element g;  // sum of the homomorphic minimal central projections
    Element f;  // sum of the anti-homomorphic ones
    LinearMap pi;     // J(·)g
    LinearMap sigma;  // J(·)f
    std::vector<Element> projections;
    std::vector<CentralKind> kinds;
    int algebra_dim = 0;  // dimension of the algebra generated by J(M)
};

/// Splits a Jordan *-homomorphism over the centre of the algebra it generates.
/// Blocks obeying both laws go to g. Throws StructuralError on a block that
/// obeys neither.
CentralDecomposition central_decompose(const LinearMap& J, const ToleranceConfig& cfg = {});

struct YeadonTriple {
    Element w;
    Element B;
    LinearMap J;
    bool jordan_certified = false;
    Element g;
    Element f;
    LinearMap pi;
    LinearMap sigma;
    double residual_a = 0.0;  // T = wBJ
    double residual_b = 0.0;  // w*w = J(1) = s(B)
    double residual_c = 0.0;  // BJ(x) = J(x)B
    double jordan_defect = 0.0;
};

struct ExtractionResult {
    std::optional<YeadonTriple> triple;
    std::string failure;  // "T(1) = 0", "(a)", "(b)", "(c)", "jordan", "central"
    double residual = 0.0;

    bool ok() const { return triple.has_value(); }
};

/// B = |T(1)|, w from the polar decomposition of T(1), J = B⁺w*T(·), then
/// verification of (a), (b), (c) and the Jordan property.
ExtractionResult extract_yeadon(const LinearMap& T, const ToleranceConfig& cfg = {});

/// First violated condition among (a), (b), (c) and "jordan" for T = wBJ, or
/// an empty string when the data is valid.
std::string validate_yeadon_data(const Element& w, const Element& B, const LinearMap& J,
                                  const ToleranceConfig& cfg = {});

struct SeparatingResult {
    Verdict verdict = Verdict::undetermined;
    std::optional<YeadonTriple> triple;
    std::optional<std::pair<Element, Element>> witness;  // disjoint positive pair, images not disjoint
    std::string extraction_failure;
    int pairs_tried = 0;
};

SeparatingResult certify_separating(const LinearMap& T, const ToleranceConfig& cfg = {});

/// Agreement of a structural verdict with its independent cross-check.
enum class CrossCheck { confirmed, contradicted, unconfirmed };

struct StructuralReport {
    bool injective = false;
    bool positive = false;
    bool two_separating = false;
    CrossCheck injective_check = CrossCheck::unconfirmed;
    CrossCheck positive_check = CrossCheck::unconfirmed;
    CrossCheck two_separating_check = CrossCheck::unconfirmed;
    int rank_J = 0;
    int rank_T = 0;
};

StructuralReport structural_checks(const YeadonTriple& triple, const LinearMap& T,
                                   const ToleranceConfig& cfg = {});

const char* to_string(CrossCheck c);

}  // namespace nclp
