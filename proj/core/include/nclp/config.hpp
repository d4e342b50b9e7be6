#pragma once

#include <cstdint>

namespace nclp {

/// Numerical knobs shared by every operation. Tolerances are relative.
struct ToleranceConfig {
    double algebraic_tol = 1e-9;   // identity checks (x = y, p^2 = p, ...)
    double opt_tol = 1e-6;         // optimisation gaps and verdict margins
    double rank_cutoff = 1e-10;    // singular values below cutoff * max are zero
    int restarts = 2;              // random restarts of non-convex searches
    int sample_budget = 64;        // samples drawn by randomized verdicts
    std::uint64_t seed = 0;

    /// Throws StructuralError when a field is out of range.
    void validate() const;
};

/// Deterministic child seed for the i-th independent sub-task.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace nclp
