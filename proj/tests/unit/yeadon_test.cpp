#include <gtest/gtest.h>

#include "nclp/errors.hpp"
#include "nclp/examples.hpp"
#include "nclp/lp.hpp"
#include "nclp/random.hpp"
#include "nclp/yeadon.hpp"

using namespace nclp;

namespace {

const AlgebraDescriptor kM2 = AlgebraDescriptor::full(2);

double rel_action(const LinearMap& a, const LinearMap& b) {
    return (a.action() - b.action()).norm() / b.action().norm();
}

}  // namespace

TEST(Extract, Transpose) {
    const ExtractionResult ex = extract_yeadon(examples::transpose(2));
    ASSERT_TRUE(ex.ok()) << ex.failure;
    const auto& t = *ex.triple;
    const Element one = Element::identity(kM2);
    EXPECT_LT(distance(t.w, one), 1e-12);
    EXPECT_LT(distance(t.B, one), 1e-12);
    EXPECT_LT(rel_action(t.J, examples::transpose(2)), 1e-12);
    EXPECT_LT(t.g.operator_norm(), 1e-12);
    EXPECT_LT(distance(t.f, one), 1e-12);
}

TEST(Extract, SyntheticRoundtrip) {
    Rng rng(41);
    for (int i = 0; i < 20; ++i) {
        const AlgebraDescriptor dom({{2, 1.0}, {1, 0.7}});
        const AlgebraDescriptor cod({{3, 1.0}, {4, 0.3}});
        const auto data = examples::random_yeadon(dom, cod, rng, i % 2 == 0);
        const ExtractionResult ex = extract_yeadon(data.T);
        ASSERT_TRUE(ex.ok()) << ex.failure;
        EXPECT_LT(distance(ex.triple->w, data.w), 1e-8);
        EXPECT_LT(distance(ex.triple->B, data.B), 1e-8 * data.B.operator_norm());
        EXPECT_LT(rel_action(ex.triple->J, data.J), 1e-8);
    }
}

TEST(Extract, RotationFailsJordan) {
    const ExtractionResult ex = extract_yeadon(examples::rotation_mixing(std::numbers::pi / 4));
    EXPECT_FALSE(ex.ok());
    EXPECT_FALSE(ex.failure.empty());
}

TEST(Extract, ZeroAtUnit) {
    const ExtractionResult ex = extract_yeadon(examples::trace_removal(2));
    EXPECT_FALSE(ex.ok());
    EXPECT_EQ(ex.failure, "T(1) = 0");
}

TEST(Synthetic, InvalidDataNamesCondition) {
    const Element one = Element::identity(kM2);
    const Element e11 = Element::matrix_unit(kM2, 0, 0, 0);
    try {
        examples::yeadon_synthetic(e11, one, LinearMap::identity(kM2));
        FAIL();
    } catch (const StructuralError& e) {
        EXPECT_NE(std::string(e.what()).find("(b)"), std::string::npos) << e.what();
    }
    EXPECT_EQ(validate_yeadon_data(one, one, examples::depolarizing(kM2, 0.5)), "jordan");
}

TEST(Jordan, VerifyDetectsNonJordan) {
    EXPECT_TRUE(verify_jordan(examples::jordan_direct_sum(2)).ok);
    EXPECT_FALSE(verify_jordan(examples::rotation_mixing(0.6)).ok);
    EXPECT_FALSE(verify_jordan(examples::depolarizing(kM2, 0.5)).ok);
}

TEST(Central, IdentityAndDirectSum) {
    const CentralDecomposition id = central_decompose(LinearMap::identity(kM2));
    EXPECT_LT(distance(id.g, Element::identity(kM2)), 1e-12);
    EXPECT_LT(id.f.operator_norm(), 1e-12);

    const LinearMap J = examples::jordan_direct_sum(2);
    const CentralDecomposition d = central_decompose(J);
    const AlgebraDescriptor cod = J.codomain();
    Element g = Element::zero(cod), f = Element::zero(cod);
    g.block(0).setIdentity();
    f.block(1).setIdentity();
    EXPECT_LT(distance(d.g, g), 1e-10);
    EXPECT_LT(distance(d.f, f), 1e-10);
}

TEST(Central, CommutativeCodomainGoesToG) {
    const double w[] = {1.0, 1.0};
    const auto d2 = AlgebraDescriptor::diagonal(w);
    const LinearMap J = LinearMap::identity(d2);
    const CentralDecomposition d = central_decompose(J);
    EXPECT_LT(distance(d.g, Element::identity(d2)), 1e-12);
    EXPECT_LT(d.f.operator_norm(), 1e-12);
}

TEST(Central, LawsOnRandomJordanMaps) {
    Rng rng(42);
    for (int i = 0; i < 10; ++i) {
        const AlgebraDescriptor dom({{2, 1.0}, {2, 2.0}});
        const AlgebraDescriptor cod({{4, 1.0}, {2, 1.0}, {3, 1.0}});
        const auto data = examples::random_yeadon(dom, cod, rng);
        const CentralDecomposition d = central_decompose(data.J);
        EXPECT_LT((d.g * d.f).operator_norm(), 1e-9);
        EXPECT_LT(distance(d.g + d.f, data.J(Element::identity(dom))), 1e-9);
        const Element x = ginibre(dom, rng), y = ginibre(dom, rng);
        const double s = x.operator_norm() * y.operator_norm();
        EXPECT_LT(distance(d.pi(x * y), d.pi(x) * d.pi(y)), 1e-9 * s);
        EXPECT_LT(distance(d.sigma(x * y), d.sigma(y) * d.sigma(x)), 1e-9 * s);
        EXPECT_LT(distance(d.pi(x) + d.sigma(x), data.J(x)), 1e-9 * x.operator_norm());
    }
}

TEST(Separating, Verdicts) {
    EXPECT_EQ(certify_separating(examples::transpose(3)).verdict, Verdict::certified);
    EXPECT_EQ(certify_separating(examples::star_homomorphism(2, 2)).verdict, Verdict::certified);
    const SeparatingResult r = certify_separating(examples::rotation_mixing(std::numbers::pi / 4));
    ASSERT_EQ(r.verdict, Verdict::falsified);
    ASSERT_TRUE(r.witness.has_value());
    const auto& [a, b] = *r.witness;
    EXPECT_TRUE(disjoint(a, b));
    const LinearMap R = examples::rotation_mixing(std::numbers::pi / 4);
    EXPECT_FALSE(disjoint(R(a), R(b), 1e-6));
}

TEST(Structural, TransposeAndConjugation) {
    const LinearMap T = examples::transpose(2);
    const auto tr = extract_yeadon(T).triple;
    ASSERT_TRUE(tr.has_value());
    const StructuralReport s = structural_checks(*tr, T);
    EXPECT_TRUE(s.injective);
    EXPECT_TRUE(s.positive);
    EXPECT_FALSE(s.two_separating);
    EXPECT_NE(s.two_separating_check, CrossCheck::contradicted);

    Rng rng(43);
    const LinearMap U = examples::unitary_conjugation(haar_unitary(AlgebraDescriptor::full(3), rng));
    const StructuralReport u = structural_checks(*extract_yeadon(U).triple, U);
    EXPECT_TRUE(u.injective);
    EXPECT_TRUE(u.two_separating);
}

TEST(Structural, RankDeficientJ) {
    // J: M2 ⊕ M1 → M2, kills the second block
    const AlgebraDescriptor dom({{2, 1.0}, {1, 1.0}});
    const AlgebraDescriptor cod = AlgebraDescriptor::full(2);
    const LinearMap J = examples::jordan_embedding(dom, cod, {{{0, false}}});
    const Element one = Element::identity(cod);
    const LinearMap T = examples::yeadon_synthetic(one, one, J);
    const auto tr = extract_yeadon(T).triple;
    ASSERT_TRUE(tr.has_value());
    const StructuralReport s = structural_checks(*tr, T);
    EXPECT_FALSE(s.injective);
    EXPECT_EQ(s.rank_T, 4);
    EXPECT_LT(s.rank_T, int(dom.space_dim()));
}
