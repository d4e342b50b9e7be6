#pragma once

#include <cstdint>
#include <numbers>
#include <random>

#include "nclp/algebra.hpp"

namespace nclp {

/// Seeded generator for all randomized operations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    Scalar complex_normal() { return {normal() / std::numbers::sqrt2, normal() / std::numbers::sqrt2}; }
    Scalar phase() { return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)); }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

Matrix ginibre_matrix(int rows, int cols, Rng& rng);
/// Haar-distributed unitary via QR with phase correction.
Matrix haar_unitary_matrix(int n, Rng& rng);

/// Complex Gaussian entries in every block.
Element ginibre(const AlgebraDescriptor& algebra, Rng& rng);
/// g g* with g Ginibre of inner size `rank` per block (rank <= 0: full).
Element wishart(const AlgebraDescriptor& algebra, Rng& rng, int rank = 0);
Element random_self_adjoint(const AlgebraDescriptor& algebra, Rng& rng);
Element haar_unitary(const AlgebraDescriptor& algebra, Rng& rng);
/// Projection onto a random subspace of each block, dimension drawn uniformly.
Element random_projection(const AlgebraDescriptor& algebra, Rng& rng);

}  // namespace nclp
