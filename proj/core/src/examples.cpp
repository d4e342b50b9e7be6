#include "nclp/examples.hpp"

#include <cmath>

#include "nclp/errors.hpp"
#include "nclp/yeadon.hpp"

namespace nclp::examples {

namespace {

Provenance all_positive_flags(bool separating) {
    Provenance p;
    p.positive = p.two_positive = p.completely_positive = true;
    p.separating = separating;
    return p;
}

}  // namespace

LinearMap transpose(const AlgebraDescriptor& algebra, double p) {
    Provenance prov;
    prov.positive = true;
    prov.separating = true;
    if (algebra.is_commutative()) prov = all_positive_flags(true);
    return LinearMap::from_function(algebra, algebra, [](const Element& x) { return x.transpose(); }, p, prov);
}

LinearMap transpose(int n, double p) { return transpose(AlgebraDescriptor::full(n), p); }

LinearMap jordan_embedding(const AlgebraDescriptor& domain, const AlgebraDescriptor& codomain,
                           const std::vector<std::vector<Summand>>& layout, const std::vector<Matrix>& unitaries,
                           double p) {
    if (layout.size() != codomain.num_blocks()) {
        throw StructuralError("jordan_embedding: one summand list per codomain block required");
    }
    if (!unitaries.empty() && unitaries.size() != codomain.num_blocks()) {
        throw StructuralError("jordan_embedding: one unitary per codomain block required");
    }
    bool any_transposed = false;
    for (std::size_t k = 0; k < layout.size(); ++k) {
        int used = 0;
        for (const auto& s : layout[k]) {
            if (s.source >= domain.num_blocks()) throw StructuralError("jordan_embedding: bad source block");
            used += domain.dim(s.source);
            any_transposed = any_transposed || (s.transposed && domain.dim(s.source) > 1);
        }
        if (used > codomain.dim(k)) {
            throw StructuralError("jordan_embedding: summands overflow codomain block " + std::to_string(k));
        }
        if (!unitaries.empty() && (unitaries[k].rows() != codomain.dim(k) || unitaries[k].cols() != codomain.dim(k))) {
            throw StructuralError("jordan_embedding: unitary " + std::to_string(k) + " has the wrong size");
        }
    }
    Provenance prov;
    prov.positive = true;
    prov.separating = true;
    prov.two_positive = prov.completely_positive = !any_transposed;
    return LinearMap::from_function(
        domain, codomain,
        [&](const Element& x) {
            Element y = Element::zero(codomain);
            for (std::size_t k = 0; k < layout.size(); ++k) {
                int at = 0;
                for (const auto& s : layout[k]) {
                    const int d = domain.dim(s.source);
                    y.block(k).block(at, at, d, d) =
                        s.transposed ? Matrix(x.block(s.source).transpose()) : x.block(s.source);
                    at += d;
                }
                if (!unitaries.empty()) y.block(k) = unitaries[k] * y.block(k) * unitaries[k].adjoint();
            }
            return y;
        },
        p, prov);
}

LinearMap star_homomorphism(int n, int copies, double p) {
    const AlgebraDescriptor dom = AlgebraDescriptor::full(n);
    const AlgebraDescriptor cod(std::vector<Block>(static_cast<std::size_t>(copies), Block{n, 1.0}));
    return jordan_embedding(dom, cod, std::vector<std::vector<Summand>>(copies, {Summand{0, false}}), {}, p);
}

LinearMap anti_star_homomorphism(int n, int copies, double p) {
    const AlgebraDescriptor dom = AlgebraDescriptor::full(n);
    const AlgebraDescriptor cod(std::vector<Block>(static_cast<std::size_t>(copies), Block{n, 1.0}));
    return jordan_embedding(dom, cod, std::vector<std::vector<Summand>>(copies, {Summand{0, true}}), {}, p);
}

LinearMap jordan_direct_sum(int n, double p) {
    const AlgebraDescriptor dom = AlgebraDescriptor::full(n);
    const AlgebraDescriptor cod({Block{n, 1.0}, Block{n, 1.0}});
    return jordan_embedding(dom, cod, {{Summand{0, false}}, {Summand{0, true}}}, {}, p);
}

LinearMap yeadon_synthetic(const Element& w, const Element& B, const LinearMap& J, const ToleranceConfig& cfg) {
    const std::string bad = validate_yeadon_data(w, B, J, cfg);
    if (!bad.empty()) throw StructuralError("yeadon data violates condition " + bad);
    Provenance prov;
    prov.separating = true;
    prov.positive = is_self_adjoint(w, 1e-9) && (w - w * w).operator_norm() <= 1e-7;
    const Element wB = w * B;
    return LinearMap::from_function(J.domain(), J.codomain(), [&](const Element& x) { return wB * J.apply(x); },
                                    J.exponent(), prov);
}

YeadonData random_yeadon(const AlgebraDescriptor& domain, const AlgebraDescriptor& codomain, Rng& rng,
                         bool positive_w, double p) {
    std::vector<std::vector<Summand>> layout(codomain.num_blocks());
    std::vector<std::vector<double>> weights(codomain.num_blocks());
    std::size_t total = 0;
    for (std::size_t k = 0; k < codomain.num_blocks(); ++k) {
        int room = codomain.dim(k);
        for (int tries = 0; tries < 3; ++tries) {
            std::vector<std::size_t> fit;
            for (std::size_t j = 0; j < domain.num_blocks(); ++j)
                if (domain.dim(j) <= room) fit.push_back(j);
            if (fit.empty()) break;
            const std::size_t j = fit[static_cast<std::size_t>(rng.integer(0, static_cast<int>(fit.size()) - 1))];
            layout[k].push_back(Summand{j, rng.integer(0, 1) == 1});
            weights[k].push_back(rng.uniform(0.5, 2.0));
            room -= domain.dim(j);
            ++total;
            if (rng.integer(0, 2) == 0) break;
        }
    }
    if (total == 0) throw StructuralError("random_yeadon: no domain block fits any codomain block");

    std::vector<Matrix> U;
    for (std::size_t k = 0; k < codomain.num_blocks(); ++k) U.push_back(haar_unitary_matrix(codomain.dim(k), rng));
    YeadonData d;
    d.J = jordan_embedding(domain, codomain, layout, U, p);
    d.B = Element::zero(codomain);
    for (std::size_t k = 0; k < codomain.num_blocks(); ++k) {
        Matrix D = Matrix::Zero(codomain.dim(k), codomain.dim(k));
        int at = 0;
        for (std::size_t s = 0; s < layout[k].size(); ++s) {
            const int dim = domain.dim(layout[k][s].source);
            D.block(at, at, dim, dim) = Matrix::Identity(dim, dim) * weights[k][s];
            at += dim;
        }
        d.B.block(k) = U[k] * D * U[k].adjoint();
    }
    const Element e = d.J.apply(Element::identity(domain));
    d.w = positive_w ? e : haar_unitary(codomain, rng) * e;
    d.T = yeadon_synthetic(d.w, d.B, d.J);
    return d;
}

LinearMap commutative_matrix(const Matrix& entries, std::vector<double> domain_weights,
                             std::vector<double> codomain_weights, double p) {
    if (domain_weights.empty()) domain_weights.assign(static_cast<std::size_t>(entries.cols()), 1.0);
    if (codomain_weights.empty()) codomain_weights.assign(static_cast<std::size_t>(entries.rows()), 1.0);
    const AlgebraDescriptor dom = AlgebraDescriptor::diagonal(domain_weights);
    const AlgebraDescriptor cod = AlgebraDescriptor::diagonal(codomain_weights);
    Provenance prov;
    const bool nonneg = (entries.imag().array() == 0).all() && (entries.real().array() >= 0).all();
    if (nonneg) prov = all_positive_flags(false);
    return LinearMap(dom, cod, entries, p, prov);
}

LinearMap unitary_conjugation(const Element& u, double p) {
    if (distance(u * u.adjoint(), Element::identity(u.algebra())) > 1e-9) {
        throw StructuralError("unitary_conjugation: u is not unitary");
    }
    const Element ua = u.adjoint();
    return LinearMap::from_function(u.algebra(), u.algebra(), [&](const Element& x) { return u * x * ua; }, p,
                                    all_positive_flags(true));
}

LinearMap rotation_mixing(double theta, double p) {
    const AlgebraDescriptor m2 = AlgebraDescriptor::full(2);
    Matrix A = Matrix::Identity(4, 4);
    A(0, 0) = std::cos(theta);
    A(0, 1) = -std::sin(theta);
    A(1, 0) = std::sin(theta);
    A(1, 1) = std::cos(theta);
    return LinearMap(m2, m2, A, p);
}

LinearMap depolarizing(const AlgebraDescriptor& algebra, double lambda, double p) {
    if (lambda < 0 || lambda > 1) throw StructuralError("depolarizing: lambda must lie in [0, 1]");
    const double t1 = algebra.trace_of_unit();
    const Element one = Element::identity(algebra);
    return LinearMap::from_function(
        algebra, algebra, [&](const Element& x) { return x * Scalar(lambda) + one * (x.trace() * (1 - lambda) / t1); },
        p, all_positive_flags(false));
}

LinearMap mixed_unitary(const std::vector<Element>& unitaries, const std::vector<double>& probs, double p) {
    if (unitaries.empty() || unitaries.size() != probs.size()) {
        throw StructuralError("mixed_unitary: need matching unitaries and probabilities");
    }
    const AlgebraDescriptor alg = unitaries.front().algebra();
    return LinearMap::from_function(
        alg, alg,
        [&](const Element& x) {
            Element y = Element::zero(alg);
            for (std::size_t i = 0; i < unitaries.size(); ++i) y += unitaries[i] * x * unitaries[i].adjoint() * probs[i];
            return y;
        },
        p, all_positive_flags(false));
}

LinearMap block_embedding(const AlgebraDescriptor& algebra, double p) {
    std::vector<Block> blocks = algebra.blocks();
    blocks.insert(blocks.end(), algebra.blocks().begin(), algebra.blocks().end());
    const AlgebraDescriptor cod(blocks);
    std::vector<std::vector<Summand>> layout(cod.num_blocks());
    for (std::size_t k = 0; k < algebra.num_blocks(); ++k) layout[k].push_back(Summand{k, false});
    return jordan_embedding(algebra, cod, layout, {}, p);
}

LinearMap reduction_map(int n, double p) {
    const AlgebraDescriptor alg = AlgebraDescriptor::full(n);
    const Element one = Element::identity(alg);
    const double c = n > 1 ? 1.0 / (n - 1) : 1.0;
    Provenance prov;
    prov.positive = true;
    return LinearMap::from_function(alg, alg, [&](const Element& x) { return (one * x.trace() - x) * Scalar(c); }, p,
                                    prov);
}

LinearMap trace_removal(int n, double p) {
    const AlgebraDescriptor alg = AlgebraDescriptor::full(n);
    const Element one = Element::identity(alg);
    return LinearMap::from_function(alg, alg, [&](const Element& x) { return x - one * (x.trace() / double(n)); }, p);
}

LinearMap random_positive_map(int n, Rng& rng, double mix, double p) {
    const AlgebraDescriptor alg = AlgebraDescriptor::full(n);
    const int terms = rng.integer(1, 3);
    std::vector<Element> us;
    std::vector<double> probs;
    double total = 0;
    for (int i = 0; i < terms; ++i) {
        us.push_back(haar_unitary(alg, rng));
        probs.push_back(rng.uniform(0.2, 1.0));
        total += probs.back();
    }
    for (auto& q : probs) q *= (1 - mix) / total;
    const Element one = Element::identity(alg);
    const double t1 = alg.trace_of_unit();
    Provenance prov;
    prov.positive = true;
    return LinearMap::from_function(
        alg, alg,
        [&](const Element& x) {
            const Element xt = x.transpose();
            Element y = one * (x.trace() * mix / t1);
            for (std::size_t i = 0; i < us.size(); ++i) y += us[i] * xt * us[i].adjoint() * probs[i];
            return y;
        },
        p, prov);
}

LinearMap random_cp_contraction(int n, Rng& rng, double p) {
    const AlgebraDescriptor alg = AlgebraDescriptor::full(n);
    const int terms = rng.integer(1, 3);
    std::vector<Element> us;
    std::vector<double> probs;
    double total = 0;
    for (int i = 0; i < terms; ++i) {
        us.push_back(haar_unitary(alg, rng));
        probs.push_back(rng.uniform(0.2, 1.0));
        total += probs.back();
    }
    const double mix = rng.uniform(0.0, 0.5);
    for (auto& q : probs) q *= (1 - mix) / total;
    const Element one = Element::identity(alg);
    const double t1 = alg.trace_of_unit();
    return LinearMap::from_function(
        alg, alg,
        [&](const Element& x) {
            Element y = one * (x.trace() * mix / t1);
            for (std::size_t i = 0; i < us.size(); ++i) y += us[i] * x * us[i].adjoint() * probs[i];
            return y;
        },
        p, all_positive_flags(false));
}

std::vector<std::string> example_kinds() {
    return {"identity",    "transpose",           "star-homomorphism", "anti-star-homomorphism",
            "jordan-direct-sum", "yeadon",        "rotation",          "depolarizing",
            "unitary-conjugation", "block-embedding", "reduction",     "trace-removal",
            "positive-map", "cp-contraction"};
}

LinearMap make_example(const std::string& kind, const ExampleParams& prm) {
    if (prm.n < 1) throw StructuralError("example: n must be >= 1");
    Rng rng(prm.seed);
    const AlgebraDescriptor mn = AlgebraDescriptor::full(prm.n);
    if (kind == "identity") return LinearMap::identity(mn, prm.p);
    if (kind == "transpose") return transpose(prm.n, prm.p);
    if (kind == "star-homomorphism") return star_homomorphism(prm.n, 2, prm.p);
    if (kind == "anti-star-homomorphism") return anti_star_homomorphism(prm.n, 2, prm.p);
    if (kind == "jordan-direct-sum") return jordan_direct_sum(prm.n, prm.p);
    if (kind == "yeadon") {
        const AlgebraDescriptor cod({Block{prm.n, 1.0}, Block{2 * prm.n, 1.0}});
        return random_yeadon(mn, cod, rng, false, prm.p).T;
    }
    if (kind == "rotation") return rotation_mixing(prm.theta, prm.p);
    if (kind == "depolarizing") return depolarizing(mn, prm.lambda, prm.p);
    if (kind == "unitary-conjugation") return unitary_conjugation(haar_unitary(mn, rng), prm.p);
    if (kind == "block-embedding") return block_embedding(mn, prm.p);
    if (kind == "reduction") return reduction_map(prm.n, prm.p);
    if (kind == "trace-removal") return trace_removal(prm.n, prm.p);
    if (kind == "positive-map") return random_positive_map(prm.n, rng, prm.lambda, prm.p);
    if (kind == "cp-contraction") return random_cp_contraction(prm.n, rng, prm.p);
    throw StructuralError("unknown example kind '" + kind + "'");
}

}  // namespace nclp::examples
