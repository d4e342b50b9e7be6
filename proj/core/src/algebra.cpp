#include "nclp/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nclp/errors.hpp"

namespace nclp {

void ToleranceConfig::validate() const {
    if (!(algebraic_tol > 0) || !(opt_tol > 0) || !(rank_cutoff > 0)) {
        throw StructuralError("tolerances must be positive");
    }
    if (restarts < 1) throw StructuralError("restarts must be >= 1");
    if (sample_budget < 1) throw StructuralError("sample_budget must be >= 1");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 over a stream-mixed state
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// ---- AlgebraDescriptor ---------------------------------------------------

AlgebraDescriptor::AlgebraDescriptor(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw StructuralError("algebra needs at least one block");
    offsets_.reserve(blocks_.size());
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        const auto& b = blocks_[k];
        if (b.dim < 1) {
            throw StructuralError("block " + std::to_string(k) + ": dimension must be >= 1");
        }
        if (!(b.weight > 0) || !std::isfinite(b.weight)) {
            throw StructuralError("block " + std::to_string(k) +
                                  ": trace weight must be positive and finite");
        }
        offsets_.push_back(space_dim_);
        space_dim_ += static_cast<Index>(b.dim) * b.dim;
    }
}

AlgebraDescriptor AlgebraDescriptor::full(int n, double weight) {
    return AlgebraDescriptor({Block{n, weight}});
}

AlgebraDescriptor AlgebraDescriptor::diagonal(std::span<const double> weights) {
    std::vector<Block> blocks;
    blocks.reserve(weights.size());
    for (double w : weights) blocks.push_back(Block{1, w});
    return AlgebraDescriptor(std::move(blocks));
}

double AlgebraDescriptor::trace_of_unit() const {
    double t = 0;
    for (const auto& b : blocks_) t += b.weight * b.dim;
    return t;
}

double AlgebraDescriptor::min_weight() const {
    double w = std::numeric_limits<double>::infinity();
    for (const auto& b : blocks_) w = std::min(w, b.weight);
    return w;
}

bool AlgebraDescriptor::is_commutative() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.dim == 1; });
}

void AlgebraDescriptor::locate(Index c, std::size_t& block, int& row, int& col) const {
    if (c < 0 || c >= space_dim_) throw StructuralError("coordinate out of range");
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), c);
    block = static_cast<std::size_t>(std::distance(offsets_.begin(), it) - 1);
    const Index local = c - offsets_[block];
    row = static_cast<int>(local / blocks_[block].dim);
    col = static_cast<int>(local % blocks_[block].dim);
}

// ---- Element -------------------------------------------------------------

Element::Element(AlgebraDescriptor algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
    if (blocks_.size() != algebra_.num_blocks()) {
        throw StructuralError("element has " + std::to_string(blocks_.size()) +
                              " blocks, algebra has " + std::to_string(algebra_.num_blocks()));
    }
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        const int n = algebra_.dim(k);
        if (blocks_[k].rows() != n || blocks_[k].cols() != n) {
            throw StructuralError("block " + std::to_string(k) + ": expected " + std::to_string(n) +
                                  "x" + std::to_string(n) + " matrix");
        }
    }
}

Element Element::zero(const AlgebraDescriptor& algebra) {
    std::vector<Matrix> blocks;
    for (const auto& b : algebra.blocks()) blocks.push_back(Matrix::Zero(b.dim, b.dim));
    return Element(algebra, std::move(blocks));
}

Element Element::identity(const AlgebraDescriptor& algebra) {
    std::vector<Matrix> blocks;
    for (const auto& b : algebra.blocks()) blocks.push_back(Matrix::Identity(b.dim, b.dim));
    return Element(algebra, std::move(blocks));
}

Element Element::matrix_unit(const AlgebraDescriptor& algebra, std::size_t block, int row, int col) {
    if (block >= algebra.num_blocks() || row < 0 || col < 0 || row >= algebra.dim(block) ||
        col >= algebra.dim(block)) {
        throw StructuralError("matrix unit index out of range");
    }
    Element e = zero(algebra);
    e.blocks_[block](row, col) = 1.0;
    return e;
}

Element Element::from_coordinates(const AlgebraDescriptor& algebra, const Vector& coords) {
    if (coords.size() != algebra.space_dim()) {
        throw StructuralError("coordinate vector has wrong length");
    }
    Element e = zero(algebra);
    for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
        const int n = algebra.dim(k);
        const Index off = algebra.offset(k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) e.blocks_[k](i, j) = coords(off + i * n + j);
    }
    return e;
}

Vector Element::coordinates() const {
    Vector v(algebra_.space_dim());
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        const int n = algebra_.dim(k);
        const Index off = algebra_.offset(k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v(off + i * n + j) = blocks_[k](i, j);
    }
    return v;
}

Element Element::adjoint() const {
    Element r = *this;
    for (auto& b : r.blocks_) b = b.adjoint().eval();
    return r;
}

Element Element::transpose() const {
    Element r = *this;
    for (auto& b : r.blocks_) b = b.transpose().eval();
    return r;
}

Scalar Element::trace() const {
    Scalar t = 0;
    for (std::size_t k = 0; k < blocks_.size(); ++k) t += algebra_.weight(k) * blocks_[k].trace();
    return t;
}

double Element::operator_norm() const {
    double m = 0;
    for (const auto& b : blocks_) {
        if (b.size() == 0) continue;
        if (b.rows() == 1) {
            m = std::max(m, std::abs(b(0, 0)));
            continue;
        }
        Eigen::JacobiSVD<Matrix> svd(b);
        m = std::max(m, svd.singularValues()(0));
    }
    return m;
}

Element& Element::operator+=(const Element& other) {
    require_same_algebra(*this, other, "addition");
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] += other.blocks_[k];
    return *this;
}

Element& Element::operator-=(const Element& other) {
    require_same_algebra(*this, other, "subtraction");
    for (std::size_t k = 0; k < blocks_.size(); ++k) blocks_[k] -= other.blocks_[k];
    return *this;
}

Element& Element::operator*=(Scalar c) {
    for (auto& b : blocks_) b *= c;
    return *this;
}

Element operator*(const Element& a, const Element& b) {
    require_same_algebra(a, b, "product");
    Element r = a;
    for (std::size_t k = 0; k < r.blocks_.size(); ++k) r.blocks_[k] = a.blocks_[k] * b.blocks_[k];
    return r;
}

void require_same_algebra(const Element& a, const Element& b, const char* what) {
    if (!(a.algebra() == b.algebra())) {
        throw StructuralError(std::string(what) + ": operands belong to different algebras");
    }
}

double distance(const Element& a, const Element& b) { return (a - b).operator_norm(); }

bool is_self_adjoint(const Element& x, double rel_tol) {
    const double scale = std::max(1.0, x.operator_norm());
    double worst = 0;
    for (const auto& b : x.blocks()) worst = std::max(worst, (b - b.adjoint()).cwiseAbs().maxCoeff());
    return worst <= rel_tol * scale;
}

// ---- functional calculus -------------------------------------------------

bool Interval::contains(double t) const {
    const bool above = lo_closed ? t >= lo : t > lo;
    const bool under = hi_closed ? t <= hi : t < hi;
    return above && under;
}

Interval Interval::at_least(double lambda) {
    return Interval{lambda, std::numeric_limits<double>::infinity(), true, true};
}

Interval Interval::below(double lambda) {
    return Interval{-std::numeric_limits<double>::infinity(), lambda, true, false};
}

namespace {

Matrix hermitian_part(const Matrix& b) { return (b + b.adjoint()) * 0.5; }

Matrix apply_to_hermitian(const Matrix& h, const std::function<double(double)>& f) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
    Eigen::VectorXd fv = es.eigenvalues().unaryExpr([&](double t) { return f(t); });
    return es.eigenvectors() * fv.cast<Scalar>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Element spectral_apply(const Element& x, const std::function<double(double)>& f,
                       const ToleranceConfig& cfg) {
    if (!is_self_adjoint(x, cfg.algebraic_tol)) {
        throw DomainError("spectral function applied to a non-self-adjoint element");
    }
    Element r = x;
    for (std::size_t k = 0; k < x.num_blocks(); ++k)
        r.block(k) = apply_to_hermitian(hermitian_part(x.block(k)), f);
    return r;
}

Element spectral_projection(const Element& x, const Interval& interval, const ToleranceConfig& cfg) {
    return spectral_apply(x, [&](double t) { return interval.contains(t) ? 1.0 : 0.0; }, cfg);
}

Element abs_power(const Element& x, double t) {
    if (!(t > 0)) throw DomainError("abs_power requires t > 0");
    Element r = x;
    for (std::size_t k = 0; k < x.num_blocks(); ++k) {
        Eigen::JacobiSVD<Matrix> svd(x.block(k), Eigen::ComputeFullV);
        Eigen::VectorXd s = svd.singularValues().array().pow(t);
        const Matrix& v = svd.matrixV();
        r.block(k) = v * s.cast<Scalar>().asDiagonal() * v.adjoint();
    }
    return r;
}

Element abs(const Element& x) { return abs_power(x, 1.0); }

Element positive_power(const Element& x, double t, const ToleranceConfig& cfg) {
    Element r = x;
    for (std::size_t k = 0; k < x.num_blocks(); ++k) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(x.block(k)));
        if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
        const Eigen::VectorXd& ev = es.eigenvalues();
        const double top = ev.size() ? std::max(ev.maxCoeff(), 0.0) : 0.0;
        const double cut = cfg.rank_cutoff * top;
        Eigen::VectorXd fv(ev.size());
        for (Index i = 0; i < ev.size(); ++i) {
            const double lam = std::max(ev(i), 0.0);
            if (t > 0)
                fv(i) = std::pow(lam, t);
            else if (t == 0)
                fv(i) = lam > cut ? 1.0 : 0.0;
            else
                fv(i) = (lam > cut && lam > 0) ? std::pow(lam, t) : 0.0;
        }
        r.block(k) = es.eigenvectors() * fv.cast<Scalar>().asDiagonal() * es.eigenvectors().adjoint();
    }
    return r;
}

Element sqrt_positive(const Element& x, const ToleranceConfig& cfg) { return positive_power(x, 0.5, cfg); }

std::vector<Eigen::VectorXd> eigenvalues(const Element& x) {
    std::vector<Eigen::VectorXd> out;
    for (const auto& b : x.blocks()) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(b), Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
        out.push_back(es.eigenvalues());
    }
    return out;
}

std::vector<Eigen::VectorXd> singular_values(const Element& x) {
    std::vector<Eigen::VectorXd> out;
    for (const auto& b : x.blocks()) {
        Eigen::JacobiSVD<Matrix> svd(b);
        out.push_back(svd.singularValues());
    }
    return out;
}

PolarDecomposition polar_support(const Element& x, const ToleranceConfig& cfg) {
    PolarDecomposition pd{Element::zero(x.algebra()), Element::zero(x.algebra()), Element::zero(x.algebra())};
    double top = 0;
    std::vector<Eigen::JacobiSVD<Matrix>> svds;
    for (const auto& b : x.blocks()) {
        svds.emplace_back(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
        if (svds.back().singularValues().size())
            top = std::max(top, svds.back().singularValues()(0));
    }
    const double cut = cfg.rank_cutoff * top;
    for (std::size_t k = 0; k < x.num_blocks(); ++k) {
        const auto& svd = svds[k];
        const Eigen::VectorXd& s = svd.singularValues();
        Index r = 0;
        while (r < s.size() && s(r) > cut && s(r) > 0) ++r;
        const Matrix& U = svd.matrixU();
        const Matrix& V = svd.matrixV();
        pd.u.block(k) = U.leftCols(r) * V.leftCols(r).adjoint();
        pd.m.block(k) = V.leftCols(r) * s.head(r).cast<Scalar>().asDiagonal() * V.leftCols(r).adjoint();
        pd.s.block(k) = V.leftCols(r) * V.leftCols(r).adjoint();
    }
    return pd;
}

Element support(const Element& x, const ToleranceConfig& cfg) { return positive_power(x, 0.0, cfg); }

// ---- constructions -------------------------------------------------------

AlgebraDescriptor amplify(const AlgebraDescriptor& algebra, int n) {
    if (n < 1) throw StructuralError("amplification order must be >= 1");
    std::vector<Block> blocks;
    for (const auto& b : algebra.blocks()) blocks.push_back(Block{b.dim * n, b.weight});
    return AlgebraDescriptor(std::move(blocks));
}

Element embed_matrix(const AlgebraDescriptor& algebra, int n, const std::vector<Element>& entries) {
    if (n < 1 || entries.size() != static_cast<std::size_t>(n) * n) {
        throw StructuralError("embed_matrix needs n*n entries");
    }
    Element out = Element::zero(amplify(algebra, n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Element& e = entries[static_cast<std::size_t>(i) * n + j];
            if (!(e.algebra() == algebra)) throw StructuralError("embed_matrix: entry algebra mismatch");
            for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
                const int d = algebra.dim(k);
                out.block(k).block(i * d, j * d, d, d) = e.block(k);
            }
        }
    }
    return out;
}

Element matrix_entry(const Element& amplified, const AlgebraDescriptor& algebra, int n, int i, int j) {
    if (!(amplified.algebra() == amplify(algebra, n))) {
        throw StructuralError("matrix_entry: element is not in M_n(A)");
    }
    Element out = Element::zero(algebra);
    for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
        const int d = algebra.dim(k);
        out.block(k) = amplified.block(k).block(i * d, j * d, d, d);
    }
    return out;
}

Element to_opposite(const Element& x) { return x.transpose(); }

}  // namespace nclp
