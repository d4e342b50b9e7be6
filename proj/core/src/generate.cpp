#include "nclp/generate.hpp"

#include "nclp/errors.hpp"
#include "nclp/examples.hpp"
#include "nclp/lp.hpp"

namespace nclp::generate {

AlgebraDescriptor random_algebra(Rng& rng, int max_blocks, int max_dim) {
    const int k = rng.integer(1, max_blocks);
    std::vector<Block> blocks;
    for (int i = 0; i < k; ++i) blocks.push_back({rng.integer(1, max_dim), rng.uniform(0.5, 2.0)});
    return AlgebraDescriptor(std::move(blocks));
}

std::pair<Element, Element> disjoint_pair(const AlgebraDescriptor& algebra, Rng& rng, bool positive) {
    std::vector<Matrix> as, bs;
    for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
        const int n = algebra.dim(k);
        // split point: rows [0, s) carry a, [s, n) carry b
        const int s = n == 1 ? rng.integer(0, 1) : rng.integer(1, n - 1);
        const Matrix U = haar_unitary_matrix(n, rng);
        const Matrix V = positive ? U : haar_unitary_matrix(n, rng);
        Matrix A = Matrix::Zero(n, n), B = Matrix::Zero(n, n);
        if (s > 0) {
            Matrix g = ginibre_matrix(s, s, rng);
            A.topLeftCorner(s, s) = positive ? Matrix(g * g.adjoint()) : g;
        }
        if (n - s > 0) {
            Matrix g = ginibre_matrix(n - s, n - s, rng);
            B.bottomRightCorner(n - s, n - s) = positive ? Matrix(g * g.adjoint()) : g;
        }
        as.push_back(U * A * V.adjoint());
        bs.push_back(U * B * V.adjoint());
    }
    return {Element(algebra, std::move(as)), Element(algebra, std::move(bs))};
}

std::pair<Element, Element> overlapping_pair(const AlgebraDescriptor& algebra, Rng& rng, double eps,
                                             bool positive) {
    auto [a, b] = disjoint_pair(algebra, rng, positive);
    // a must be nonzero for the perturbation to create overlap
    if (a.operator_norm() == 0.0) std::swap(a, b);
    Element e = positive ? wishart(algebra, rng) : ginibre(algebra, rng);
    const double scale = std::max(b.operator_norm(), a.operator_norm()) / std::max(e.operator_norm(), 1e-300);
    b += e * Scalar(eps * scale);
    return {a, b};
}

ElementSequence random_sequence(const AlgebraDescriptor& algebra, int length, Rng& rng, bool positive) {
    std::vector<Element> items;
    for (int n = 0; n < length; ++n) {
        if (positive) {
            int rank = 0;
            for (const auto& b : algebra.blocks()) rank = std::max(rank, b.dim);
            items.push_back(wishart(algebra, rng, rng.integer(1, rank)));
        } else {
            items.push_back(ginibre(algebra, rng));
        }
    }
    return ElementSequence(std::move(items));
}

std::vector<std::string> instance_kinds() {
    return {"positive-seq", "seq", "disjoint-pair", "overlapping-pair", "element", "yeadon", "commutative",
            "cp", "positive-map", "isometry"};
}

io::InstanceFile random_instance(const InstanceParams& params) {
    if (params.n < 1 || params.dim < 1) throw StructuralError("gen: --n and --dim must be positive");
    Rng rng(derive_seed(params.seed, 900));
    io::InstanceFile inst;
    inst.seed = params.seed;
    const AlgebraDescriptor alg = AlgebraDescriptor::full(params.dim);
    const std::string& kind = params.kind;
    if (kind == "positive-seq" || kind == "seq") {
        inst.add_algebra("M", alg);
        inst.add_sequence("x", "M", random_sequence(alg, params.n, rng, kind == "positive-seq"));
    } else if (kind == "disjoint-pair" || kind == "overlapping-pair") {
        auto [a, b] = kind == "disjoint-pair" ? disjoint_pair(alg, rng) : overlapping_pair(alg, rng, 0.1);
        inst.add_element("a", "M", a, is_positive(a));
        inst.add_element("b", "M", b, is_positive(b));
    } else if (kind == "element") {
        inst.add_element("x", "M", ginibre(alg, rng));
    } else if (kind == "yeadon") {
        const AlgebraDescriptor cod({{params.dim, 1.0}, {params.dim, 1.0}});
        inst.add_map("T", "M", "N", examples::random_yeadon(alg, cod, rng).T);
    } else if (kind == "commutative") {
        Matrix a = ginibre_matrix(params.dim, params.dim, rng);
        inst.add_map("T", "D", "D", examples::commutative_matrix(a));
    } else if (kind == "cp") {
        inst.add_map("T", "M", "M", examples::random_cp_contraction(params.dim, rng));
    } else if (kind == "positive-map") {
        inst.add_map("T", "M", "M", examples::random_positive_map(params.dim, rng));
    } else if (kind == "isometry") {
        inst.add_map("T", "M", "M", examples::unitary_conjugation(haar_unitary(alg, rng)));
    } else {
        throw StructuralError("gen: unknown kind '" + kind + "'");
    }
    return inst;
}

}  // namespace nclp::generate
