#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nclp/algebra.hpp"
#include "nclp/linear_map.hpp"
#include "nclp/random.hpp"

namespace nclp::examples {

/// Blockwise transposition x ↦ xᵗ.
LinearMap transpose(const AlgebraDescriptor& algebra, double p = 2.0);
LinearMap transpose(int n, double p = 2.0);

/// One copy of a domain block inside a codomain block.
struct Summand {
    std::size_t source = 0;  // domain block
    bool transposed = false;
};

/// Jordan *-homomorphism J(x)_k = U_k (⊕_s x_{source}^{(t)} ⊕ 0) U_k* for each
/// codomain block k. `unitaries` may be empty (identity) or one per codomain block.
LinearMap jordan_embedding(const AlgebraDescriptor& domain, const AlgebraDescriptor& codomain,
                           const std::vector<std::vector<Summand>>& layout,
                           const std::vector<Matrix>& unitaries = {}, double p = 2.0);

/// M_n -> M_n ⊕ ... ⊕ M_n (copies blocks), multiplicative.
LinearMap star_homomorphism(int n, int copies, double p = 2.0);
/// M_n -> M_n ⊕ ... ⊕ M_n, x ↦ xᵗ ⊕ ... ⊕ xᵗ.
LinearMap anti_star_homomorphism(int n, int copies, double p = 2.0);
/// x ↦ x ⊕ xᵗ into M_n ⊕ M_n.
LinearMap jordan_direct_sum(int n, double p = 2.0);

/// T(x) = w B J(x) after validating conditions (b), (c) and the Jordan
/// property; throws StructuralError naming the violated condition.
LinearMap yeadon_synthetic(const Element& w, const Element& B, const LinearMap& J,
                           const ToleranceConfig& cfg = {});

struct YeadonData {
    Element w;
    Element B;
    LinearMap J;
    LinearMap T;
};

/// Random valid Yeadon data: each codomain block receives a random mixture of
/// plain and transposed domain blocks under a Haar unitary, B is a positive
/// combination of the summand projections and w = V·J(1) with V unitary.
/// With `positive_w`, w = J(1).
YeadonData random_yeadon(const AlgebraDescriptor& domain, const AlgebraDescriptor& codomain, Rng& rng,
                         bool positive_w = false, double p = 2.0);

/// Map between diagonal algebras given by its matrix.
LinearMap commutative_matrix(const Matrix& entries, std::vector<double> domain_weights = {},
                             std::vector<double> codomain_weights = {}, double p = 2.0);

/// x ↦ u x u*.
LinearMap unitary_conjugation(const Element& u, double p = 2.0);

/// Rotation by θ in the (E₁₁, E₁₂) coordinate plane of L²(M₂).
LinearMap rotation_mixing(double theta, double p = 2.0);

/// x ↦ λx + (1-λ) τ(x)/τ(1)·1, λ in [0, 1].
LinearMap depolarizing(const AlgebraDescriptor& algebra, double lambda, double p = 2.0);

/// x ↦ Σ_i p_i u_i x u_i*.
LinearMap mixed_unitary(const std::vector<Element>& unitaries, const std::vector<double>& probs,
                        double p = 2.0);

/// x ↦ x ⊕ 0 into A ⊕ A.
LinearMap block_embedding(const AlgebraDescriptor& algebra, double p = 2.0);

/// x ↦ Tr(x)·1 - x on M_n, scaled by 1/(n-1) for n > 1.
LinearMap reduction_map(int n, double p = 2.0);

/// x ↦ x - Tr(x)/n·1 on M_n.
LinearMap trace_removal(int n, double p = 2.0);

/// Positive, generally not 2-positive: x ↦ Σ_i p_i u_i xᵗ u_i* mixed with a
/// depolarizing part of weight `mix`.
LinearMap random_positive_map(int n, Rng& rng, double mix = 0.3, double p = 2.0);

/// Completely positive contraction: mixed unitary channel blended with
/// depolarizing noise.
LinearMap random_cp_contraction(int n, Rng& rng, double p = 2.0);

/// Parameters for make_example.
struct ExampleParams {
    int n = 2;
    double theta = 0.7853981633974483;
    double lambda = 0.5;
    double p = 2.0;
    std::uint64_t seed = 0;
};

/// Named constructor: identity, transpose, star-homomorphism,
/// anti-star-homomorphism, jordan-direct-sum, yeadon, rotation, depolarizing,
/// unitary-conjugation, block-embedding, reduction, trace-removal,
/// positive-map, cp-contraction. Throws StructuralError on an unknown kind.
LinearMap make_example(const std::string& kind, const ExampleParams& params);

std::vector<std::string> example_kinds();

}  // namespace nclp::examples
