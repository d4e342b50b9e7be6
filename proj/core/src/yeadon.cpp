#include "nclp/yeadon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nclp/errors.hpp"
#include "nclp/lp.hpp"
#include "nclp/random.hpp"

namespace nclp {

namespace {

std::vector<Element> basis_images(const LinearMap& J) {
    std::vector<Element> out;
    const auto& dom = J.domain();
    for (std::size_t k = 0; k < dom.num_blocks(); ++k)
        for (int a = 0; a < dom.dim(k); ++a)
            for (int b = 0; b < dom.dim(k); ++b) out.push_back(J.apply(Element::matrix_unit(dom, k, a, b)));
    return out;
}

double image_scale(const std::vector<Element>& images) {
    double s = 0;
    for (const auto& y : images) s = std::max(s, y.operator_norm());
    return s;
}

// Coordinate of the product E_c E_d of two matrix units, or -1 when it vanishes.
Index product_coordinate(const AlgebraDescriptor& alg, Index c, Index d) {
    std::size_t kc, kd;
    int ic, jc, id, jd;
    alg.locate(c, kc, ic, jc);
    alg.locate(d, kd, id, jd);
    if (kc != kd || jc != id) return -1;
    return alg.offset(kc) + static_cast<Index>(ic) * alg.dim(kc) + jd;
}

Index transpose_coordinate(const AlgebraDescriptor& alg, Index c) {
    std::size_t k;
    int i, j;
    alg.locate(c, k, i, j);
    return alg.offset(k) + static_cast<Index>(j) * alg.dim(k) + i;
}

double check_tol(const ToleranceConfig& cfg) { return 100.0 * cfg.algebraic_tol; }

}  // namespace

JordanReport verify_jordan(const LinearMap& J, const ToleranceConfig& cfg) {
    JordanReport r;
    const auto images = basis_images(J);
    const auto& dom = J.domain();
    const double scale = std::max(image_scale(images), 1e-300);
    const Element zero = Element::zero(J.codomain());
    const Index D = dom.space_dim();

    double adj = 0;
    for (Index c = 0; c < D; ++c)
        adj = std::max(adj, distance(images[transpose_coordinate(dom, c)], images[c].adjoint()) / scale);

    double sq = 0;
    for (Index c = 0; c < D; ++c) {
        for (Index d = c; d < D; ++d) {
            Element lhs = zero;
            const Index cd = product_coordinate(dom, c, d);
            const Index dc = product_coordinate(dom, d, c);
            if (cd >= 0) lhs += images[cd];
            if (dc >= 0) lhs += images[dc];
            const Element rhs = images[c] * images[d] + images[d] * images[c];
            sq = std::max(sq, distance(lhs, rhs) / (scale * std::max(scale, 1.0)));
        }
    }
    Rng rng(derive_seed(cfg.seed, 31));
    for (int s = 0; s < 4; ++s) {
        const Element x = random_self_adjoint(dom, rng);
        const Element jx = J.apply(x);
        const double nx = std::max(1.0, x.operator_norm());
        sq = std::max(sq, distance(J.apply(x * x), jx * jx) / (nx * nx * scale * std::max(scale, 1.0)));
    }
    r.defect = std::max(adj, sq);
    if (images.empty() || image_scale(images) == 0) {
        r.ok = true;
        r.defect = 0;
        return r;
    }
    const double tol = check_tol(cfg);
    if (adj > tol) {
        r.failure = "adjoint";
    } else if (sq > tol) {
        r.failure = "square";
    } else {
        r.ok = true;
    }
    return r;
}

// ---- central decomposition ----------------------------------------------

namespace {

// Orthonormal (Euclidean on coordinates) basis of the *-algebra generated by images.
std::vector<Vector> generated_algebra(const std::vector<Element>& images, const AlgebraDescriptor& cod,
                                      double thr) {
    std::vector<Vector> basis;
    auto add = [&](Vector v) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) v -= b * b.dot(v);
        const double n = v.norm();
        if (n > thr) {
            basis.push_back(v / n);
            return true;
        }
        return false;
    };
    for (const auto& y : images) {
        add(y.coordinates());
        add(y.adjoint().coordinates());
    }
    std::size_t done = 0;
    bool grew = true;
    while (grew) {
        grew = false;
        const std::size_t n = basis.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Element bi = Element::from_coordinates(cod, basis[i]);
            for (std::size_t j = (i < done ? done : 0); j < n; ++j) {
                const Element bj = Element::from_coordinates(cod, basis[j]);
                if (add((bi * bj).coordinates())) grew = true;
                if (add((bj * bi).coordinates())) grew = true;
            }
        }
        done = n;
    }
    return basis;
}

}  // namespace

CentralDecomposition central_decompose(const LinearMap& J, const ToleranceConfig& cfg) {
    CentralDecomposition out;
    const auto& cod = J.codomain();
    const auto& dom = J.domain();
    const auto images = basis_images(J);
    const double scale = image_scale(images);
    out.g = Element::zero(cod);
    out.f = Element::zero(cod);
    auto restrict_to = [&](const Element& z) {
        return LinearMap::from_function(dom, cod, [&](const Element& x) { return J.apply(x) * z; },
                                        J.exponent());
    };
    if (scale == 0) {
        out.pi = restrict_to(out.g);
        out.sigma = restrict_to(out.f);
        return out;
    }

    const auto basis = generated_algebra(images, cod, 1e-8 * scale);
    out.algebra_dim = static_cast<int>(basis.size());
    const Index nb = static_cast<Index>(basis.size());

    // centre: combinations of the basis commuting with every generator
    std::vector<Element> belems;
    for (const auto& v : basis) belems.push_back(Element::from_coordinates(cod, v));
    const Index rows = cod.space_dim() * static_cast<Index>(images.size());
    Matrix C(rows, nb);
    for (Index i = 0; i < nb; ++i) {
        for (std::size_t c = 0; c < images.size(); ++c) {
            const Element comm = belems[i] * images[c] - images[c] * belems[i];
            C.block(static_cast<Index>(c) * cod.space_dim(), i, cod.space_dim(), 1) = comm.coordinates();
        }
    }
    Eigen::JacobiSVD<Matrix> svd(C, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-8 * std::max(smax, scale)) ++rank;
    std::vector<Element> centre;
    for (Index i = rank; i < nb; ++i) {
        Vector coeffs = svd.matrixV().col(i);
        Element z = Element::zero(cod);
        for (Index j = 0; j < nb; ++j) z += belems[j] * coeffs(j);
        centre.push_back(z);
    }
    const std::size_t zdim = centre.size();

    const Element e = J.apply(Element::identity(dom));
    Rng rng(derive_seed(cfg.seed, 41));
    std::vector<Element> projections;
    for (int attempt = 0; attempt < 8 && projections.size() != zdim; ++attempt) {
        projections.clear();
        Element h = Element::zero(cod);
        for (const auto& z : centre) h += (z + z.adjoint()) * Scalar(rng.normal());
        const double hn = std::max(h.operator_norm(), 1e-300);
        h += e * Scalar(3.0 * hn);
        struct Eigenpair {
            double value;
            std::size_t block;
            Vector vec;
        };
        std::vector<Eigenpair> pairs;
        for (std::size_t k = 0; k < cod.num_blocks(); ++k) {
            Eigen::SelfAdjointEigenSolver<Matrix> es((h.block(k) + h.block(k).adjoint()) * 0.5);
            for (Index i = 0; i < es.eigenvalues().size(); ++i)
                if (es.eigenvalues()(i) > hn) pairs.push_back({es.eigenvalues()(i), k, es.eigenvectors().col(i)});
        }
        std::sort(pairs.begin(), pairs.end(), [](const Eigenpair& a, const Eigenpair& b) { return a.value < b.value; });
        const double gap = 1e-6 * hn;
        for (std::size_t i = 0; i < pairs.size();) {
            Element P = Element::zero(cod);
            std::size_t j = i;
            while (j < pairs.size() && pairs[j].value - pairs[i].value <= gap * 4) {
                P.block(pairs[j].block) += pairs[j].vec * pairs[j].vec.adjoint();
                ++j;
            }
            projections.push_back(P);
            i = j;
        }
    }
    if (projections.size() != zdim) throw StructuralError("central_decompose: could not split the centre");

    const double tol = check_tol(cfg) * std::max(1.0, scale * scale);
    const Index D = dom.space_dim();
    for (const auto& z : projections) {
        double hom = 0, anti = 0;
        for (Index c = 0; c < D; ++c) {
            for (Index d = 0; d < D; ++d) {
                const Index cd = product_coordinate(dom, c, d);
                const Element jcd = cd >= 0 ? images[cd] : Element::zero(cod);
                hom = std::max(hom, ((jcd - images[c] * images[d]) * z).operator_norm());
                anti = std::max(anti, ((jcd - images[d] * images[c]) * z).operator_norm());
            }
        }
        if (hom <= tol) {
            out.g += z;
            out.kinds.push_back(CentralKind::homomorphic);
        } else if (anti <= tol) {
            out.f += z;
            out.kinds.push_back(CentralKind::anti_homomorphic);
        } else {
            throw StructuralError("central_decompose: a central block is neither homomorphic nor "
                                  "anti-homomorphic (defects " +
                                  std::to_string(hom) + ", " + std::to_string(anti) + ")");
        }
    }
    out.projections = std::move(projections);
    out.pi = restrict_to(out.g);
    out.sigma = restrict_to(out.f);
    return out;
}

// ---- extraction -----------------------------------------------------------

namespace {

Element round_projection(const Element& p) {
    return spectral_apply(p, [](double t) { return t >= 0.5 ? 1.0 : 0.0; }, ToleranceConfig{1e-6});
}

struct DataCheck {
    double b = 0, c = 0;
    bool b_positive = true;
};

DataCheck check_data(const Element& w, const Element& B, const std::vector<Element>& jimages,
                     const Element& j1, const ToleranceConfig& cfg) {
    DataCheck r;
    const double bn = std::max(B.operator_norm(), 1e-300);
    r.b_positive = is_positive(B, check_tol(cfg));
    if (!is_self_adjoint(j1, check_tol(cfg))) {
        r.b = std::numeric_limits<double>::infinity();
    } else {
        const Element e = round_projection(j1);
        r.b = std::max({distance(w.adjoint() * w, j1), distance(j1, e),
                        r.b_positive ? distance(e, support(B, cfg)) : std::numeric_limits<double>::infinity()});
    }
    const double js = std::max(image_scale(jimages), 1e-300);
    for (const auto& y : jimages) r.c = std::max(r.c, distance(B * y, y * B) / (bn * js));
    return r;
}

}  // namespace

std::string validate_yeadon_data(const Element& w, const Element& B, const LinearMap& J,
                                 const ToleranceConfig& cfg) {
    if (!(w.algebra() == J.codomain()) || !(B.algebra() == J.codomain())) {
        throw StructuralError("yeadon data: w and B must lie in the codomain of J");
    }
    const auto images = basis_images(J);
    const Element j1 = J.apply(Element::identity(J.domain()));
    const DataCheck d = check_data(w, B, images, j1, cfg);
    if (!(d.b <= check_tol(cfg))) return "(b)";
    if (!d.b_positive || d.c > check_tol(cfg)) return "(c)";
    if (!verify_jordan(J, cfg).ok) return "jordan";
    return "";
}

ExtractionResult extract_yeadon(const LinearMap& T, const ToleranceConfig& cfg) {
    ExtractionResult out;
    const auto& dom = T.domain();
    const auto& cod = T.codomain();
    const auto timages = basis_images(T);
    const double tscale = image_scale(timages);
    const Element t1 = T.apply(Element::identity(dom));

    if (t1.operator_norm() <= cfg.rank_cutoff * std::max(tscale, 1e-300)) {
        if (tscale > 0) {
            out.failure = "T(1) = 0";
            return out;
        }
    }

    const PolarDecomposition pd = polar_support(t1, cfg);
    const Element& w = pd.u;
    const Element& B = pd.m;
    const Element Binv = positive_power(B, -1.0, cfg);
    const Element left = Binv * w.adjoint();
    LinearMap J = LinearMap::from_function(dom, cod, [&](const Element& x) { return left * T.apply(x); },
                                           T.exponent());

    const auto jimages = basis_images(J);
    double ra = 0;
    for (std::size_t c = 0; c < timages.size(); ++c)
        ra = std::max(ra, distance(timages[c], w * B * jimages[c]));
    ra /= std::max(tscale, 1e-300);
    const Element j1 = J.apply(Element::identity(dom));
    const DataCheck d = check_data(w, B, jimages, j1, cfg);

    const double tol = check_tol(cfg);
    if (!(ra <= tol)) {
        out.failure = "(a)";
        out.residual = ra;
        return out;
    }
    if (!(d.b <= tol)) {
        out.failure = "(b)";
        out.residual = d.b;
        return out;
    }
    if (!(d.c <= tol)) {
        out.failure = "(c)";
        out.residual = d.c;
        return out;
    }
    const JordanReport jr = verify_jordan(J, cfg);
    if (!jr.ok) {
        out.failure = "jordan";
        out.residual = jr.defect;
        return out;
    }

    YeadonTriple tr;
    tr.w = w;
    tr.B = B;
    tr.J = J;
    tr.jordan_certified = true;
    tr.residual_a = ra;
    tr.residual_b = d.b;
    tr.residual_c = d.c;
    tr.jordan_defect = jr.defect;
    try {
        CentralDecomposition cd = central_decompose(J, cfg);
        tr.g = cd.g;
        tr.f = cd.f;
        tr.pi = cd.pi;
        tr.sigma = cd.sigma;
    } catch (const StructuralError& e) {
        out.failure = "central";
        return out;
    }
    out.triple = std::move(tr);
    out.residual = std::max({ra, d.b, d.c, jr.defect});
    return out;
}

// ---- separating ---------------------------------------------------------

namespace {

bool images_disjoint(const LinearMap& T, const Element& a, const Element& b, const ToleranceConfig& cfg) {
    return disjoint(T.apply(a), T.apply(b), 1e3 * cfg.algebraic_tol);
}

}  // namespace

SeparatingResult certify_separating(const LinearMap& T, const ToleranceConfig& cfg) {
    SeparatingResult out;
    ExtractionResult ex = extract_yeadon(T, cfg);
    if (ex.ok()) {
        out.verdict = Verdict::certified;
        out.triple = std::move(ex.triple);
        return out;
    }
    out.extraction_failure = ex.failure;
    const auto& dom = T.domain();

    auto attempt = [&](const Element& a, const Element& b) {
        ++out.pairs_tried;
        if (!images_disjoint(T, a, b, cfg)) {
            out.verdict = Verdict::falsified;
            out.witness = std::make_pair(a, b);
            return true;
        }
        return false;
    };

    std::vector<Element> units;
    for (std::size_t k = 0; k < dom.num_blocks(); ++k)
        for (int i = 0; i < dom.dim(k); ++i) units.push_back(Element::matrix_unit(dom, k, i, i));
    for (std::size_t i = 0; i < units.size(); ++i)
        for (std::size_t j = i + 1; j < units.size(); ++j)
            if (attempt(units[i], units[j])) return out;

    Rng rng(derive_seed(cfg.seed, 51));
    const Element one = Element::identity(dom);
    for (int s = 0; s < cfg.sample_budget; ++s) {
        const Element h = random_self_adjoint(dom, rng);
        std::vector<double> all;
        for (const auto& ev : eigenvalues(h))
            for (Index i = 0; i < ev.size(); ++i) all.push_back(ev(i));
        std::sort(all.begin(), all.end());
        const std::size_t n = all.size();
        if (n < 2) break;
        for (int cut = 1; cut <= 4; ++cut) {
            const std::size_t pos = std::max<std::size_t>(1, std::min(n - 1, cut * n / 5));
            const double lambda = 0.5 * (all[pos - 1] + all[pos]);
            const Element P = spectral_projection(h, Interval::at_least(lambda), cfg);
            if (attempt(P, one - P)) return out;
        }
    }
    return out;
}

StructuralReport structural_checks(const YeadonTriple& triple, const LinearMap& T, const ToleranceConfig& cfg) {
    StructuralReport r;
    r.rank_J = action_rank(triple.J, cfg);
    r.rank_T = action_rank(T, cfg);
    r.injective = r.rank_J == static_cast<int>(triple.J.domain().space_dim());
    r.injective_check = r.rank_J == r.rank_T ? CrossCheck::confirmed : CrossCheck::contradicted;

    r.positive = is_positive(triple.w, check_tol(cfg));
    const PositivityResult pos = positivity_tests(T, PositivityLevel::positive, cfg);
    if (r.positive)
        r.positive_check = pos.verdict == Verdict::falsified ? CrossCheck::contradicted
                           : pos.verdict == Verdict::certified ? CrossCheck::confirmed
                                                               : CrossCheck::unconfirmed;
    else
        r.positive_check = pos.verdict == Verdict::falsified ? CrossCheck::confirmed
                           : pos.verdict == Verdict::certified ? CrossCheck::contradicted
                                                               : CrossCheck::unconfirmed;

    r.two_separating = triple.f.operator_norm() <= check_tol(cfg);
    const SeparatingResult amp = certify_separating(amplified_map(T, 2), cfg);
    if (amp.verdict == Verdict::undetermined)
        r.two_separating_check = CrossCheck::unconfirmed;
    else
        r.two_separating_check = (amp.verdict == Verdict::certified) == r.two_separating
                                     ? CrossCheck::confirmed
                                     : CrossCheck::contradicted;
    return r;
}

const char* to_string(CrossCheck c) {
    switch (c) {
        case CrossCheck::confirmed: return "confirmed";
        case CrossCheck::contradicted: return "contradicted";
        default: return "unconfirmed";
    }
}

}  // namespace nclp
