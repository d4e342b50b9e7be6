#pragma once

// Random instance generators shared by the suite, the CLI and the benchmarks.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nclp/algebra.hpp"
#include "nclp/io.hpp"
#include "nclp/random.hpp"
#include "nclp/sequence.hpp"

namespace nclp::generate {

/// 1 to max_blocks blocks of dimension 1..max_dim, weights in [0.5, 2].
AlgebraDescriptor random_algebra(Rng& rng, int max_blocks = 2, int max_dim = 3);

/// a = U(A ⊕ 0)V*, b = U(0 ⊕ B)V* blockwise; positive pairs use V = U.
/// Blocks of dimension 1 give one of the two a zero block.
std::pair<Element, Element> disjoint_pair(const AlgebraDescriptor& algebra, Rng& rng, bool positive = false);

/// A disjoint pair with b perturbed by a Ginibre term of relative size eps.
std::pair<Element, Element> overlapping_pair(const AlgebraDescriptor& algebra, Rng& rng, double eps,
                                             bool positive = false);

/// Wishart (positive) or Ginibre items; positive items get random rank.
ElementSequence random_sequence(const AlgebraDescriptor& algebra, int length, Rng& rng, bool positive);

/// Instance kinds for `gen`.
std::vector<std::string> instance_kinds();

struct InstanceParams {
    std::string kind = "positive-seq";
    int n = 3;    // sequence length or number of samples
    int dim = 2;  // block dimension
    std::uint64_t seed = 0;
};

/// Throws StructuralError on an unknown kind.
io::InstanceFile random_instance(const InstanceParams& params);

}  // namespace nclp::generate
