#pragma once

#include <functional>
#include <optional>
#include <string>

#include "nclp/algebra.hpp"
#include "nclp/config.hpp"
#include "nclp/sequence.hpp"

namespace nclp {

/// Properties known from how a map was built; trusted by certification.
struct Provenance {
    bool positive = false;
    bool two_positive = false;
    bool completely_positive = false;
    bool separating = false;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// T: L^p(M) -> L^p(N) stored as its matrix on the matrix-unit coordinates.
class LinearMap {
public:
    LinearMap() = default;
    /// Throws StructuralError if the action shape does not match.
    LinearMap(AlgebraDescriptor domain, AlgebraDescriptor codomain, Matrix action, double p = 2.0,
              Provenance provenance = {});

    static LinearMap identity(const AlgebraDescriptor& algebra, double p = 2.0);
    static LinearMap from_function(const AlgebraDescriptor& domain, const AlgebraDescriptor& codomain,
                                   const std::function<Element(const Element&)>& f, double p = 2.0,
                                   Provenance provenance = {});

    const AlgebraDescriptor& domain() const { return domain_; }
    const AlgebraDescriptor& codomain() const { return codomain_; }
    const Matrix& action() const { return action_; }
    double exponent() const { return p_; }
    const Provenance& provenance() const { return provenance_; }

    LinearMap with_exponent(double p) const;
    LinearMap with_provenance(Provenance prov) const;

    Element apply(const Element& x) const;
    Element operator()(const Element& x) const { return apply(x); }

private:
    AlgebraDescriptor domain_;
    AlgebraDescriptor codomain_;
    Matrix action_;
    double p_ = 2.0;
    Provenance provenance_;
};

/// Matrix P with τ(xy) = coords(x)ᵀ P coords(y).
Matrix trace_pairing_matrix(const AlgebraDescriptor& algebra);

/// T* with τ_N(T(x)y) = τ_M(x T*(y)), carrying exponent p'.
LinearMap adjoint_map(const LinearMap& T);
/// S ∘ T.
LinearMap compose(const LinearMap& S, const LinearMap& T);
/// c·T; provenance survives for c >= 0.
LinearMap scale(const LinearMap& T, double c);
/// I_{S_n} ⊗ T on M_n(domain).
LinearMap amplified_map(const LinearMap& T, int n);
/// Numerical rank of the action matrix.
int action_rank(const LinearMap& T, const ToleranceConfig& cfg = {});

/// ‖T: L^p(M) -> L^p(N)‖ as an interval; `maximizer`, when given, receives
/// the best unit-norm input found.
NormInterval op_norm(const LinearMap& T, double p, const ToleranceConfig& cfg = {},
                     Element* maximizer = nullptr);

enum class PositivityLevel { positive, two_positive, completely_positive };
enum class Verdict { certified, falsified, undetermined };

struct PositivityResult {
    Verdict verdict = Verdict::undetermined;
    std::string method;              // "choi", "provenance", "search"
    std::optional<Element> witness;  // positive input with non-positive image
    double min_eigenvalue = 0.0;     // most negative image eigenvalue seen (relative)
    int samples = 0;
};

PositivityResult positivity_tests(const LinearMap& T, PositivityLevel level,
                                  const ToleranceConfig& cfg = {});

/// Smallest eigenvalue of every Choi block, relative to its largest |eigenvalue|.
double choi_min_eigenvalue(const LinearMap& T);

const char* to_string(PositivityLevel level);
const char* to_string(Verdict v);

}  // namespace nclp
