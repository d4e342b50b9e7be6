#include <gtest/gtest.h>

#include "nclp/errors.hpp"
#include "nclp/lp.hpp"
#include "nclp/random.hpp"
#include "oracles.hpp"

using namespace nclp;

TEST(LpNorm, IdentityOfMn) {
    for (int n : {1, 2, 5, 8})
        for (double q : {1.0, 1.5, 2.0, 3.0, 7.0}) {
            EXPECT_NEAR(lp_norm(Element::identity(AlgebraDescriptor::full(n)), q), std::pow(n, 1.0 / q), 1e-13);
        }
    EXPECT_DOUBLE_EQ(lp_norm(Element::identity(AlgebraDescriptor::full(4)), kInf), 1.0);
}

TEST(LpNorm, MatchesSingularValueOracle) {
    Rng rng(11);
    const AlgebraDescriptor alg({{3, 0.7}, {2, 1.9}});
    for (int i = 0; i < 30; ++i) {
        const Element x = ginibre(alg, rng);
        for (double p : {1.0, 1.25, 2.0, 4.0, kInf}) {
            EXPECT_NEAR(lp_norm(x, p), oracle::schatten(x, p), 1e-12 * oracle::schatten(x, p));
            EXPECT_NEAR(lp_norm(x.adjoint(), p), lp_norm(x, p), 1e-12 * lp_norm(x, p));
        }
    }
}

TEST(LpNorm, BelowOneIsRejected) {
    EXPECT_THROW(lp_norm(Element::identity(AlgebraDescriptor::full(2)), 0.5), DomainError);
}

TEST(LpNorm, Holder) {
    Rng rng(12);
    const AlgebraDescriptor alg({{3, 1.3}});
    for (int i = 0; i < 50; ++i) {
        const Element x = ginibre(alg, rng), y = ginibre(alg, rng);
        const double p = rng.uniform(1.0, 4.0), q = rng.uniform(1.0, 4.0);
        const double r = 1.0 / (1.0 / p + 1.0 / q);
        if (r < 1) continue;
        EXPECT_LE(lp_norm(x * y, r), lp_norm(x, p) * lp_norm(y, q) * (1 + 1e-12));
    }
}

TEST(Duality, MatrixUnitPairing) {
    const auto e11 = Element::matrix_unit(AlgebraDescriptor::full(2), 0, 0, 0);
    EXPECT_NEAR(std::abs(duality_pair(e11, e11) - Scalar(1.0)), 0.0, 1e-15);
}

TEST(Duality, BoundedByConjugateNorms) {
    Rng rng(13);
    const AlgebraDescriptor alg({{2, 0.5}, {3, 2.0}});
    for (int i = 0; i < 50; ++i) {
        const Element a = ginibre(alg, rng), b = ginibre(alg, rng);
        const double p = rng.uniform(1.0, 5.0);
        EXPECT_LE(std::abs(duality_pair(a, b)), lp_norm(a, p) * lp_norm(b, conjugate_exponent(p)) + 1e-9);
    }
}

TEST(Duality, SelfDualAtTwo) {
    Rng rng(14);
    const AlgebraDescriptor alg({{3, 0.5}});
    const Element a = ginibre(alg, rng);
    const Element b = a.adjoint() * Scalar(1.0 / lp_norm(a, 2));
    EXPECT_NEAR(std::abs(duality_pair(a, b)), lp_norm(a, 2), 1e-12);
}

TEST(Disjoint, MatrixUnits) {
    const auto m2 = AlgebraDescriptor::full(2);
    EXPECT_TRUE(disjoint(Element::matrix_unit(m2, 0, 0, 0), Element::matrix_unit(m2, 0, 1, 1)));
    EXPECT_FALSE(disjoint(Element::matrix_unit(m2, 0, 0, 0), Element::matrix_unit(m2, 0, 0, 1)));
}

TEST(Disjoint, PositiveOrthogonalInTraceAreDisjoint) {
    Rng rng(15);
    const auto alg = AlgebraDescriptor::full(4);
    for (int i = 0; i < 20; ++i) {
        const Matrix U = haar_unitary_matrix(4, rng);
        Matrix A = Matrix::Zero(4, 4), B = Matrix::Zero(4, 4);
        Matrix g = ginibre_matrix(2, 2, rng), h = ginibre_matrix(2, 2, rng);
        A.topLeftCorner(2, 2) = g * g.adjoint();
        B.bottomRightCorner(2, 2) = h * h.adjoint();
        const Element a(alg, {U * A * U.adjoint()}), b(alg, {U * B * U.adjoint()});
        ASSERT_LT(std::abs(duality_pair(a, b)), 1e-12 * lp_norm(a, 2) * lp_norm(b, 2));
        EXPECT_TRUE(disjoint(a, b));
    }
}

TEST(Positive, DetectsCone) {
    Rng rng(16);
    const auto alg = AlgebraDescriptor::full(3);
    EXPECT_TRUE(is_positive(wishart(alg, rng)));
    EXPECT_FALSE(is_positive(Element::matrix_unit(alg, 0, 0, 1)));
    EXPECT_FALSE(is_positive(Element::identity(alg) * Scalar(-1.0)));
}
