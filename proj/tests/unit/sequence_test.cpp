#include <gtest/gtest.h>

#include "nclp/errors.hpp"
#include "nclp/lp.hpp"
#include "nclp/random.hpp"
#include "nclp/sequence.hpp"
#include "oracles.hpp"

using namespace nclp;

namespace {

const AlgebraDescriptor kM2 = AlgebraDescriptor::full(2);

Element unit(int i, int j) { return Element::matrix_unit(kM2, 0, i, j); }

// p = 2 disjoint pair with orthogonal left and right supports.
std::pair<Element, Element> disjoint_pair(const AlgebraDescriptor& alg, Rng& rng) {
    const int n = alg.dim(0);
    const Matrix U = haar_unitary_matrix(n, rng), V = haar_unitary_matrix(n, rng);
    Matrix A = Matrix::Zero(n, n), B = Matrix::Zero(n, n);
    A.topLeftCorner(1, 1) = ginibre_matrix(1, 1, rng);
    B.bottomRightCorner(n - 1, n - 1) = ginibre_matrix(n - 1, n - 1, rng);
    return {Element(alg, {U * A * V.adjoint()}), Element(alg, {U * B * V.adjoint()})};
}

}  // namespace

TEST(Sequence, EmptyOrMixedRejected) {
    EXPECT_THROW(ElementSequence(std::vector<Element>{}), StructuralError);
    EXPECT_THROW(ElementSequence({unit(0, 0), Element::identity(AlgebraDescriptor::full(3))}), StructuralError);
}

TEST(ColumnRow, ExplicitFormula) {
    const ElementSequence s({unit(0, 0), unit(1, 0)});
    // Σ x_n* x_n = 2 E11, ‖2E11‖_1^{1/2} = √2
    EXPECT_NEAR(column_row_norm(s, 2, Side::column), std::sqrt(2.0), 1e-14);
    // Σ x_n x_n* = E11 + E22, ‖1‖_1^{1/2} = √2
    EXPECT_NEAR(column_row_norm(s, 2, Side::row), std::sqrt(2.0), 1e-14);
}

TEST(ColumnRow, SingleElementAndAdjointSymmetry) {
    Rng rng(21);
    const AlgebraDescriptor alg({{3, 0.5}, {2, 1.5}});
    for (int i = 0; i < 20; ++i) {
        const Element x = ginibre(alg, rng);
        for (double p : {1.0, 1.5, 2.0, 3.0}) {
            const ElementSequence s({x});
            EXPECT_NEAR(column_row_norm(s, p, Side::column), oracle::schatten(x, p), 1e-11 * oracle::schatten(x, p));
            EXPECT_NEAR(column_row_norm(s, p, Side::row), oracle::schatten(x, p), 1e-11 * oracle::schatten(x, p));
        }
        const Element y = ginibre(alg, rng);
        const ElementSequence s({x, y}), t({x.adjoint(), y.adjoint()});
        EXPECT_NEAR(column_row_norm(s, 1.5, Side::column), column_row_norm(t, 1.5, Side::row), 1e-12);
    }
}

TEST(L1Positive, Examples) {
    EXPECT_NEAR(l1_norm_positive(ElementSequence({unit(0, 0), unit(0, 0)}), 1), 2.0, 1e-14);
    const double w[] = {0.5, 2.0, 1.25};
    const auto d = AlgebraDescriptor::diagonal(w);
    const Element e = Element::matrix_unit(d, 0, 0, 0), f = Element::matrix_unit(d, 2, 0, 0);
    for (double p : {1.0, 2.0, 3.5}) {
        EXPECT_NEAR(l1_norm_positive(ElementSequence({e, f}), p), std::pow(0.5 + 1.25, 1.0 / p), 1e-14);
    }
    EXPECT_THROW(l1_norm_positive(ElementSequence({unit(0, 1)}), 2), DomainError);
}

TEST(L1Bounds, SingleElementCollapses) {
    Rng rng(22);
    const AlgebraDescriptor alg({{3, 1.0}});
    for (int i = 0; i < 10; ++i) {
        const Element x = ginibre(alg, rng);
        for (double p : {1.0, 2.0, 3.0}) {
            const NormInterval iv = l1_norm_bounds(ElementSequence({x}), p);
            const double ref = oracle::schatten(x, p);
            EXPECT_NEAR(iv.lower, ref, 1e-9 * ref);
            EXPECT_NEAR(iv.upper, ref, 1e-9 * ref);
        }
    }
}

TEST(L1Bounds, PositiveSequenceIsSumNorm) {
    Rng rng(23);
    const AlgebraDescriptor alg({{3, 0.8}, {2, 1.1}});
    for (int i = 0; i < 20; ++i) {
        std::vector<Element> xs;
        for (int n = 0; n < 4; ++n) xs.push_back(wishart(alg, rng, 1 + n % 2));
        for (double p : {1.0, 1.5, 2.0, 3.0}) {
            const NormInterval iv = l1_norm_bounds(ElementSequence(xs), p);
            const double ref = oracle::schatten(oracle::sum(xs), p);
            EXPECT_TRUE(iv.certified_exact);
            EXPECT_NEAR(iv.lower, ref, 1e-9 * ref);
            EXPECT_NEAR(iv.upper, ref, 1e-9 * ref);
        }
    }
}

TEST(L1Bounds, DisjointPairAtTwo) {
    Rng rng(24);
    const auto alg = AlgebraDescriptor::full(3);
    for (int i = 0; i < 10; ++i) {
        auto [a, b] = disjoint_pair(alg, rng);
        const double ref = std::hypot(oracle::schatten(a, 2), oracle::schatten(b, 2));
        const NormInterval iv = l1_norm_bounds(ElementSequence({a, b}), 2);
        EXPECT_LE(iv.lower, ref * (1 + 1e-9));
        EXPECT_LE(iv.upper, ref * (1 + 1e-6));
        EXPECT_GE(iv.upper, ref * (1 - 1e-9));
    }
}

TEST(L1Bounds, WitnessFactorizesAndAttainsUpper) {
    Rng rng(25);
    const AlgebraDescriptor alg({{2, 1.0}, {2, 0.5}});
    for (int i = 0; i < 10; ++i) {
        const ElementSequence s({ginibre(alg, rng), ginibre(alg, rng), ginibre(alg, rng)});
        const NormInterval iv = l1_norm_bounds(s, 1.5);
        ASSERT_TRUE(iv.witness.has_value());
        EXPECT_LT(iv.witness->residual(s), 1e-8);
        EXPECT_NEAR(iv.witness->cost(1.5), iv.upper, 1e-9 * iv.upper);
        EXPECT_LE(iv.lower, iv.upper);
        // ‖Σ x_n‖ ≤ ‖(x_n)‖ ≤ Σ ‖x_n‖
        double total = 0;
        for (const auto& x : s.items()) total += oracle::schatten(x, 1.5);
        EXPECT_LE(iv.upper, total * (1 + 1e-9));
        EXPECT_GE(iv.upper, oracle::schatten(s.sum(), 1.5) * (1 - 1e-9));
    }
}

TEST(L1Bounds, TraceRecordsHolderBound) {
    Rng rng(26);
    const ElementSequence s({ginibre(kM2, rng), ginibre(kM2, rng)});
    L1Trace trace;
    L1Options opts;
    opts.trace = &trace;
    const NormInterval iv = l1_norm_bounds(s, 3.0, {}, opts);
    ASSERT_FALSE(trace.visits.empty());
    for (const auto& v : trace.visits) EXPECT_LE(v.product_norm, v.bound * (1 + 1e-9));
    EXPECT_LE(iv.upper, trace.polar_upper * (1 + 1e-12));
}

TEST(L12, Examples) {
    Rng rng(27);
    const Element x = ginibre(kM2, rng);
    const NormInterval single = l12_norm(x, Element::zero(kM2), 2.5);
    EXPECT_NEAR(single.upper, oracle::schatten(x, 2.5), 1e-9);
    EXPECT_NEAR(single.lower, oracle::schatten(x, 2.5), 1e-9);
    const NormInterval twice = l12_norm(unit(0, 0), unit(0, 0), 2);
    EXPECT_NEAR(twice.lower, 2.0, 1e-12);
    EXPECT_NEAR(twice.upper, 2.0, 1e-12);
}

TEST(Dinq, Verdicts) {
    EXPECT_EQ(dinq_disjoint_test(unit(0, 0), unit(1, 1)).verdict, DinqVerdict::disjoint);
    const DinqResult same = dinq_disjoint_test(unit(0, 0), unit(0, 0));
    EXPECT_EQ(same.verdict, DinqVerdict::not_disjoint);
    EXPECT_GE(same.interval.lower, 2.0 - 1e-12);
    EXPECT_NEAR(same.threshold, std::sqrt(2.0), 1e-15);
    Rng rng(28);
    for (int i = 0; i < 10; ++i) {
        auto [a, b] = disjoint_pair(AlgebraDescriptor::full(3), rng);
        EXPECT_EQ(dinq_disjoint_test(a, b).verdict, DinqVerdict::disjoint);
    }
}

TEST(Dinq, RequiresCommonAlgebra) {
    EXPECT_THROW(dinq_disjoint_test(unit(0, 0), Element::identity(AlgebraDescriptor::full(3))), StructuralError);
}
