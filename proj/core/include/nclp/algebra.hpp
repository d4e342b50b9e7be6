#pragma once

// Finite-dimensional tracial von Neumann algebras M = ⊕_k M_{n_k}(C) with
// trace τ(x) = Σ_k w_k Tr(x_k), and their elements.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nclp/config.hpp"

namespace nclp {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

struct Block {
    int dim = 1;
    double weight = 1.0;

    friend bool operator==(const Block&, const Block&) = default;
};

class AlgebraDescriptor {
public:
    AlgebraDescriptor() = default;
    /// Throws StructuralError on an empty list, dim < 1 or weight <= 0.
    explicit AlgebraDescriptor(std::vector<Block> blocks);

    static AlgebraDescriptor full(int n, double weight = 1.0);
    /// Commutative algebra ℓ^∞_m with point masses given by `weights`.
    static AlgebraDescriptor diagonal(std::span<const double> weights);

    const std::vector<Block>& blocks() const { return blocks_; }
    std::size_t num_blocks() const { return blocks_.size(); }
    int dim(std::size_t k) const { return blocks_[k].dim; }
    double weight(std::size_t k) const { return blocks_[k].weight; }

    /// Complex dimension Σ n_k² of the algebra as a vector space.
    Index space_dim() const { return space_dim_; }
    /// First coordinate of block k in the row-major matrix-unit basis.
    Index offset(std::size_t k) const { return offsets_[k]; }
    /// τ(1) = Σ_k w_k n_k.
    double trace_of_unit() const;
    double min_weight() const;
    bool is_commutative() const;
    /// Block index and (row, col) of coordinate `c`.
    void locate(Index c, std::size_t& block, int& row, int& col) const;

    friend bool operator==(const AlgebraDescriptor& a, const AlgebraDescriptor& b) {
        return a.blocks_ == b.blocks_;
    }

private:
    std::vector<Block> blocks_;
    std::vector<Index> offsets_;
    Index space_dim_ = 0;
};

/// Block-diagonal element of an algebra.
class Element {
public:
    Element() = default;
    /// Throws StructuralError if block count or shapes disagree with `algebra`.
    Element(AlgebraDescriptor algebra, std::vector<Matrix> blocks);

    static Element zero(const AlgebraDescriptor& algebra);
    static Element identity(const AlgebraDescriptor& algebra);
    static Element matrix_unit(const AlgebraDescriptor& algebra, std::size_t block, int row, int col);
    static Element from_coordinates(const AlgebraDescriptor& algebra, const Vector& coords);

    const AlgebraDescriptor& algebra() const { return algebra_; }
    std::size_t num_blocks() const { return blocks_.size(); }
    const Matrix& block(std::size_t k) const { return blocks_[k]; }
    Matrix& block(std::size_t k) { return blocks_[k]; }
    const std::vector<Matrix>& blocks() const { return blocks_; }

    Vector coordinates() const;
    Element adjoint() const;
    /// Blockwise transpose; realises the opposite algebra.
    Element transpose() const;
    Scalar trace() const;
    /// Largest operator norm over blocks.
    double operator_norm() const;

    Element& operator+=(const Element& other);
    Element& operator-=(const Element& other);
    Element& operator*=(Scalar c);

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(Element a, Scalar c) { return a *= c; }
    friend Element operator*(Scalar c, Element a) { return a *= c; }
    friend Element operator*(const Element& a, const Element& b);

private:
    AlgebraDescriptor algebra_;
    std::vector<Matrix> blocks_;
};

void require_same_algebra(const Element& a, const Element& b, const char* what);
/// Largest blockwise operator norm of a - b.
double distance(const Element& a, const Element& b);
bool is_self_adjoint(const Element& x, double rel_tol);

// ---- functional calculus -------------------------------------------------

/// Interval with independently open/closed ends; infinite ends allowed.
struct Interval {
    double lo;
    double hi;
    bool lo_closed = true;
    bool hi_closed = true;

    bool contains(double t) const;
    static Interval at_least(double lambda);
    static Interval below(double lambda);
};

/// f(x) for self-adjoint x by per-block eigendecomposition. Throws
/// DomainError when x is not self-adjoint within cfg.algebraic_tol.
Element spectral_apply(const Element& x, const std::function<double(double)>& f,
                       const ToleranceConfig& cfg = {});
/// χ_I(x) for self-adjoint x.
Element spectral_projection(const Element& x, const Interval& interval,
                            const ToleranceConfig& cfg = {});
/// |x|^t = (x*x)^{t/2}, t > 0, computed from singular values.
Element abs_power(const Element& x, double t);
Element abs(const Element& x);
/// Positive square root after clipping eigenvalues at zero.
Element sqrt_positive(const Element& x, const ToleranceConfig& cfg = {});
/// Eigenvalues of a positive x clipped at zero, then raised to t; t may be
/// negative, in which case the power acts on the support only.
Element positive_power(const Element& x, double t, const ToleranceConfig& cfg = {});

/// Per-block eigenvalues of the Hermitian part, ascending.
std::vector<Eigen::VectorXd> eigenvalues(const Element& x);
/// Per-block singular values, descending.
std::vector<Eigen::VectorXd> singular_values(const Element& x);

struct PolarDecomposition {
    Element u;  // partial isometry, u*u = s
    Element m;  // |x|
    Element s;  // support projection of |x|
};

/// x = u|x| with u assembled from singular vectors above cfg.rank_cutoff.
PolarDecomposition polar_support(const Element& x, const ToleranceConfig& cfg = {});
/// Range projection of a positive x.
Element support(const Element& x, const ToleranceConfig& cfg = {});

// ---- algebra constructions -----------------------------------------------

/// M_n(A) with trace tr ⊗ τ: block k becomes dimension n·n_k, same weight.
AlgebraDescriptor amplify(const AlgebraDescriptor& algebra, int n);
/// Assembles the n×n operator matrix [entries(i,j)] (row-major) into M_n(A).
Element embed_matrix(const AlgebraDescriptor& algebra, int n, const std::vector<Element>& entries);
/// Entry (i, j) of an element of M_n(A).
Element matrix_entry(const Element& amplified, const AlgebraDescriptor& algebra, int n, int i, int j);
/// The opposite algebra is carried by the same descriptor; x ↦ xᵗ reverses products.
Element to_opposite(const Element& x);

}  // namespace nclp
