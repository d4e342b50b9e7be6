#include "nclp/random.hpp"

namespace nclp {

Matrix ginibre_matrix(int rows, int cols, Rng& rng) {
    Matrix g(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
    return g;
}

Matrix haar_unitary_matrix(int n, Rng& rng) {
    Eigen::HouseholderQR<Matrix> qr(ginibre_matrix(n, n, rng));
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        const double m = std::abs(r(j, j));
        if (m > 0) q.col(j) *= r(j, j) / m;
    }
    return q;
}

Element ginibre(const AlgebraDescriptor& algebra, Rng& rng) {
    Element x = Element::zero(algebra);
    for (std::size_t k = 0; k < algebra.num_blocks(); ++k)
        x.block(k) = ginibre_matrix(algebra.dim(k), algebra.dim(k), rng);
    return x;
}

Element wishart(const AlgebraDescriptor& algebra, Rng& rng, int rank) {
    Element x = Element::zero(algebra);
    for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
        const int n = algebra.dim(k);
        const Matrix g = ginibre_matrix(n, rank > 0 ? rank : n, rng);
        x.block(k) = g * g.adjoint();
    }
    return x;
}

Element random_self_adjoint(const AlgebraDescriptor& algebra, Rng& rng) {
    Element x = ginibre(algebra, rng);
    return (x + x.adjoint()) * Scalar(0.5);
}

Element haar_unitary(const AlgebraDescriptor& algebra, Rng& rng) {
    Element u = Element::zero(algebra);
    for (std::size_t k = 0; k < algebra.num_blocks(); ++k)
        u.block(k) = haar_unitary_matrix(algebra.dim(k), rng);
    return u;
}

Element random_projection(const AlgebraDescriptor& algebra, Rng& rng) {
    Element e = Element::zero(algebra);
    for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
        const int n = algebra.dim(k);
        const int r = rng.integer(0, n);
        const Matrix u = haar_unitary_matrix(n, rng);
        e.block(k) = u.leftCols(r) * u.leftCols(r).adjoint();
    }
    return e;
}

}  // namespace nclp
