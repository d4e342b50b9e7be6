#include "nclp/linear_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nclp/errors.hpp"
#include "nclp/lp.hpp"
#include "nclp/random.hpp"

namespace nclp {

LinearMap::LinearMap(AlgebraDescriptor domain, AlgebraDescriptor codomain, Matrix action, double p,
                     Provenance provenance)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      action_(std::move(action)),
      p_(p),
      provenance_(provenance) {
    if (action_.rows() != codomain_.space_dim() || action_.cols() != domain_.space_dim()) {
        throw StructuralError("action matrix is " + std::to_string(action_.rows()) + "x" +
                              std::to_string(action_.cols()) + ", expected " +
                              std::to_string(codomain_.space_dim()) + "x" +
                              std::to_string(domain_.space_dim()));
    }
    if (!(p_ >= 1)) throw DomainError("map exponent must be >= 1");
}

LinearMap LinearMap::identity(const AlgebraDescriptor& algebra, double p) {
    Provenance prov{true, true, true, true};
    return LinearMap(algebra, algebra, Matrix::Identity(algebra.space_dim(), algebra.space_dim()), p, prov);
}

LinearMap LinearMap::from_function(const AlgebraDescriptor& domain, const AlgebraDescriptor& codomain,
                                   const std::function<Element(const Element&)>& f, double p,
                                   Provenance provenance) {
    Matrix A(codomain.space_dim(), domain.space_dim());
    Vector e = Vector::Zero(domain.space_dim());
    for (Index c = 0; c < domain.space_dim(); ++c) {
        e.setZero();
        e(c) = 1.0;
        const Element y = f(Element::from_coordinates(domain, e));
        if (!(y.algebra() == codomain)) throw StructuralError("function image lies outside the codomain");
        A.col(c) = y.coordinates();
    }
    return LinearMap(domain, codomain, std::move(A), p, provenance);
}

LinearMap LinearMap::with_exponent(double p) const {
    LinearMap m = *this;
    if (!(p >= 1)) throw DomainError("map exponent must be >= 1");
    m.p_ = p;
    return m;
}

LinearMap LinearMap::with_provenance(Provenance prov) const {
    LinearMap m = *this;
    m.provenance_ = prov;
    return m;
}

Element LinearMap::apply(const Element& x) const {
    if (!(x.algebra() == domain_)) throw StructuralError("apply: element is not in the domain");
    return Element::from_coordinates(codomain_, action_ * x.coordinates());
}

Matrix trace_pairing_matrix(const AlgebraDescriptor& algebra) {
    const Index D = algebra.space_dim();
    Matrix P = Matrix::Zero(D, D);
    for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
        const int n = algebra.dim(k);
        const Index off = algebra.offset(k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) P(off + i * n + j, off + j * n + i) = algebra.weight(k);
    }
    return P;
}

namespace {

// P^{-1} for the pairing matrix: transpose permutation with inverse weights
Matrix inverse_pairing_matrix(const AlgebraDescriptor& algebra) {
    const Index D = algebra.space_dim();
    Matrix P = Matrix::Zero(D, D);
    for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
        const int n = algebra.dim(k);
        const Index off = algebra.offset(k);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) P(off + i * n + j, off + j * n + i) = 1.0 / algebra.weight(k);
    }
    return P;
}

Eigen::VectorXd coordinate_weights(const AlgebraDescriptor& algebra) {
    Eigen::VectorXd w(algebra.space_dim());
    for (std::size_t k = 0; k < algebra.num_blocks(); ++k) {
        const Index sz = static_cast<Index>(algebra.dim(k)) * algebra.dim(k);
        w.segment(algebra.offset(k), sz).setConstant(algebra.weight(k));
    }
    return w;
}

}  // namespace

LinearMap adjoint_map(const LinearMap& T) {
    Matrix A = inverse_pairing_matrix(T.domain()) * T.action().transpose() *
               trace_pairing_matrix(T.codomain());
    Provenance prov;
    prov.positive = T.provenance().positive;
    prov.two_positive = T.provenance().two_positive;
    prov.completely_positive = T.provenance().completely_positive;
    return LinearMap(T.codomain(), T.domain(), std::move(A), conjugate_exponent(T.exponent()), prov);
}

LinearMap compose(const LinearMap& S, const LinearMap& T) {
    if (!(S.domain() == T.codomain())) throw StructuralError("compose: codomain/domain mismatch");
    Provenance prov;
    const auto& a = S.provenance();
    const auto& b = T.provenance();
    prov.positive = a.positive && b.positive;
    prov.two_positive = a.two_positive && b.two_positive;
    prov.completely_positive = a.completely_positive && b.completely_positive;
    prov.separating = a.separating && b.separating;
    return LinearMap(T.domain(), S.codomain(), S.action() * T.action(), T.exponent(), prov);
}

LinearMap scale(const LinearMap& T, double c) {
    Provenance prov = T.provenance();
    if (c < 0) prov.positive = prov.two_positive = prov.completely_positive = false;
    return LinearMap(T.domain(), T.codomain(), T.action() * Scalar(c), T.exponent(), prov);
}

LinearMap amplified_map(const LinearMap& T, int n) {
    if (n < 1) throw StructuralError("amplification order must be >= 1");
    const AlgebraDescriptor dom = amplify(T.domain(), n);
    const AlgebraDescriptor cod = amplify(T.codomain(), n);
    Provenance prov;
    prov.positive = prov.two_positive = prov.completely_positive = T.provenance().completely_positive;
    return LinearMap::from_function(
        dom, cod,
        [&](const Element& x) {
            std::vector<Element> entries;
            entries.reserve(static_cast<std::size_t>(n) * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) entries.push_back(T.apply(matrix_entry(x, T.domain(), n, i, j)));
            return embed_matrix(T.codomain(), n, entries);
        },
        T.exponent(), prov);
}

int action_rank(const LinearMap& T, const ToleranceConfig& cfg) {
    Eigen::JacobiSVD<Matrix> svd(T.action());
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0) return 0;
    int r = 0;
    for (Index i = 0; i < s.size(); ++i)
        if (s(i) > cfg.rank_cutoff * s(0) * 1e2) ++r;
    return r;
}

// ---- positivity ---------------------------------------------------------

double choi_min_eigenvalue(const LinearMap& T) {
    const auto& dom = T.domain();
    const auto& cod = T.codomain();
    double worst = 0, top = 0;
    for (std::size_t j = 0; j < dom.num_blocks(); ++j) {
        const int n = dom.dim(j);
        std::vector<Element> images;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) images.push_back(T.apply(Element::matrix_unit(dom, j, a, b)));
        for (std::size_t k = 0; k < cod.num_blocks(); ++k) {
            const int m = cod.dim(k);
            Matrix C(n * m, n * m);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) C.block(a * m, b * m, m, m) = images[a * n + b].block(k);
            const double skew = (C - C.adjoint()).cwiseAbs().maxCoeff();
            Eigen::SelfAdjointEigenSolver<Matrix> es((C + C.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
            const auto& ev = es.eigenvalues();
            // a non-Hermitian Choi matrix rules out positivity outright
            if (skew > 1e-9 * std::max(1.0, C.cwiseAbs().maxCoeff())) worst = std::min(worst, -skew);
            worst = std::min(worst, ev.minCoeff());
            top = std::max(top, ev.cwiseAbs().maxCoeff());
        }
    }
    return top > 0 ? worst / top : 0.0;
}

namespace {

// Choi input Σ E_ab ⊗ E_ab for domain block j, as an element of M_n(domain)
Element choi_input(const AlgebraDescriptor& dom, std::size_t j) {
    const int n = dom.dim(j);
    std::vector<Element> entries;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) entries.push_back(Element::matrix_unit(dom, j, a, b));
    return embed_matrix(dom, n, entries);
}

double min_image_eigenvalue(const Element& y, double& scale) {
    scale = y.operator_norm();
    double m = std::numeric_limits<double>::infinity();
    for (const auto& ev : eigenvalues(y))
        if (ev.size()) m = std::min(m, ev.minCoeff());
    return m;
}

Element rank_one(const AlgebraDescriptor& alg, std::size_t j, const Vector& xi) {
    Element x = Element::zero(alg);
    x.block(j) = xi * xi.adjoint();
    return x;
}

Vector random_unit(int n, Rng& rng) {
    Vector v = ginibre_matrix(n, 1, rng).col(0);
    return v / v.norm();
}

struct SearchOutcome {
    std::optional<Element> witness;
    double min_rel = 0;
    int samples = 0;
};

// Looks for a positive x with T(x) not positive: seesaw over product vectors
// (ξ in a domain block, η in a codomain block) plus Wishart samples.
SearchOutcome positivity_search(const LinearMap& T, const ToleranceConfig& cfg, std::uint64_t stream) {
    SearchOutcome out;
    const auto& dom = T.domain();
    const auto& cod = T.codomain();
    Rng rng(derive_seed(cfg.seed, stream));
    const double tol = 10 * cfg.algebraic_tol;

    auto check = [&](const Element& x) {
        ++out.samples;
        double scale = 0;
        const double m = min_image_eigenvalue(T.apply(x), scale);
        if (scale <= 0) return false;
        out.min_rel = std::min(out.min_rel, m / scale);
        if (m < -tol * scale) {
            out.witness = x;
            return true;
        }
        return false;
    };

    // matrix-unit projections first
    for (std::size_t j = 0; j < dom.num_blocks(); ++j)
        for (int a = 0; a < dom.dim(j); ++a)
            if (check(Element::matrix_unit(dom, j, a, a))) return out;

    const int budget = cfg.sample_budget;
    for (int s = 0; s < budget; ++s) {
        const std::size_t j = static_cast<std::size_t>(rng.integer(0, static_cast<int>(dom.num_blocks()) - 1));
        const std::size_t k = static_cast<std::size_t>(rng.integer(0, static_cast<int>(cod.num_blocks()) - 1));
        const int n = dom.dim(j);
        const int m = cod.dim(k);
        const Index off = dom.offset(j);
        Vector xi = random_unit(n, rng);
        double last = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 30; ++it) {
            const Element y = T.apply(rank_one(dom, j, xi));
            Eigen::SelfAdjointEigenSolver<Matrix> ey((y.block(k) + y.block(k).adjoint()) * 0.5);
            const Vector eta = ey.eigenvectors().col(0);
            // H with ξ* H ξ = η* T(ξξ*)_k η
            Matrix H(n, n);
            const Index coff = cod.offset(k);
            Vector v(static_cast<Index>(m) * m);
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c) v(r * m + c) = std::conj(eta(r)) * eta(c);
            const Matrix rows = T.action().block(coff, off, static_cast<Index>(m) * m, static_cast<Index>(n) * n);
            const Eigen::RowVectorXcd coef = v.transpose() * rows;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) H(b, a) = coef(a * n + b);
            Eigen::SelfAdjointEigenSolver<Matrix> eh((H + H.adjoint()) * 0.5);
            xi = eh.eigenvectors().col(0);
            const double val = eh.eigenvalues()(0);
            if (std::abs(last - val) <= 1e-13 * std::max(1.0, std::abs(val))) break;
            last = val;
        }
        if (check(rank_one(dom, j, xi))) return out;
        if (check(wishart(dom, rng, s % 2 == 0 ? 1 : 0))) return out;
    }
    return out;
}

PositivityResult from_search(const SearchOutcome& s) {
    PositivityResult r;
    r.method = "search";
    r.samples = s.samples;
    r.min_eigenvalue = s.min_rel;
    if (s.witness) {
        r.verdict = Verdict::falsified;
        r.witness = s.witness;
    }
    return r;
}

}  // namespace

PositivityResult positivity_tests(const LinearMap& T, PositivityLevel level, const ToleranceConfig& cfg) {
    PositivityResult r;
    const double choi = choi_min_eigenvalue(T);
    if (choi >= -cfg.algebraic_tol) {
        r.verdict = Verdict::certified;
        r.method = "choi";
        r.min_eigenvalue = choi;
        return r;
    }
    const auto& prov = T.provenance();
    if (level == PositivityLevel::completely_positive) {
        r.verdict = Verdict::falsified;
        r.method = "choi";
        r.min_eigenvalue = choi;
        // the Choi input of the offending domain block is the witness
        for (std::size_t j = 0; j < T.domain().num_blocks(); ++j) {
            const int n = T.domain().dim(j);
            const Element x = choi_input(T.domain(), j);
            double scale = 0;
            const double m = min_image_eigenvalue(amplified_map(T, n).apply(x), scale);
            if (scale > 0 && m < -cfg.algebraic_tol * scale) {
                r.witness = x;
                break;
            }
        }
        return r;
    }
    if (level == PositivityLevel::positive) {
        if (prov.positive || prov.two_positive || prov.completely_positive) {
            r.verdict = Verdict::certified;
            r.method = "provenance";
            return r;
        }
        return from_search(positivity_search(T, cfg, 11));
    }
    if (prov.two_positive || prov.completely_positive) {
        r.verdict = Verdict::certified;
        r.method = "provenance";
        return r;
    }
    return from_search(positivity_search(amplified_map(T, 2), cfg, 11));
}

const char* to_string(PositivityLevel level) {
    switch (level) {
        case PositivityLevel::positive: return "positive";
        case PositivityLevel::two_positive: return "two_positive";
        default: return "completely_positive";
    }
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::certified: return "certified";
        case Verdict::falsified: return "falsified";
        default: return "undetermined";
    }
}

// ---- operator norm ------------------------------------------------------

namespace {

// z with ‖z‖_{p'} = 1 and τ(yz) = ‖y‖_p
Element norming_dual(const Element& y, double p, const ToleranceConfig& cfg) {
    const auto& alg = y.algebra();
    if (std::isinf(p)) {
        std::size_t kb = 0;
        double best = -1;
        Eigen::JacobiSVD<Matrix> keep;
        for (std::size_t k = 0; k < alg.num_blocks(); ++k) {
            Eigen::JacobiSVD<Matrix> svd(y.block(k), Eigen::ComputeFullU | Eigen::ComputeFullV);
            if (svd.singularValues()(0) > best) {
                best = svd.singularValues()(0);
                kb = k;
                keep = svd;
            }
        }
        Element z = Element::zero(alg);
        z.block(kb) = keep.matrixV().col(0) * keep.matrixU().col(0).adjoint() / alg.weight(kb);
        return z;
    }
    const PolarDecomposition pd = polar_support(y, cfg);
    if (p == 1) return pd.u.adjoint();
    const double nrm = lp_norm(y, p);
    if (nrm == 0) return Element::zero(alg);
    Element m = positive_power(pd.m, p - 1.0, cfg);
    return m * pd.u.adjoint() * Scalar(std::pow(nrm, 1.0 - p));
}

double rank_one_l1_bound(const LinearMap& T) {
    const auto& dom = T.domain();
    double best = 0;
    for (std::size_t k = 0; k < dom.num_blocks(); ++k) {
        const int n = dom.dim(k);
        Eigen::MatrixXd C(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) C(a, b) = lp_norm(T.apply(Element::matrix_unit(dom, k, a, b)), 1.0);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(C);
        best = std::max(best, svd.singularValues()(0) / dom.weight(k));
    }
    return best;
}

bool positive_map(const LinearMap& T, const ToleranceConfig& cfg) {
    const auto& prov = T.provenance();
    return prov.positive || prov.two_positive || prov.completely_positive ||
           choi_min_eigenvalue(T) >= -cfg.algebraic_tol;
}

}  // namespace

NormInterval op_norm(const LinearMap& T, double p, const ToleranceConfig& cfg, Element* maximizer) {
    if (!(p >= 1)) throw DomainError("op_norm: exponent must be >= 1");
    NormInterval out;
    const auto& dom = T.domain();
    const auto& cod = T.codomain();

    const Eigen::VectorXd wd = coordinate_weights(dom).cwiseSqrt();
    const Eigen::VectorXd wc = coordinate_weights(cod).cwiseSqrt();
    const Matrix S = wc.cast<Scalar>().asDiagonal() * T.action() * wd.cwiseInverse().cast<Scalar>().asDiagonal();
    Eigen::JacobiSVD<Matrix> svd(S, Eigen::ComputeThinV);
    const double norm2 = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    Element x2 = Element::from_coordinates(
        dom, wd.cwiseInverse().cast<Scalar>().asDiagonal() * svd.matrixV().col(0));

    if (p == 2) {
        out.lower = out.upper = norm2;
        out.certified_exact = true;
        if (maximizer) *maximizer = x2 * Scalar(1.0 / lp_norm(x2, 2));
        return out;
    }

    // certified upper bounds
    const bool pos = positive_map(T, cfg);
    const LinearMap Ts = adjoint_map(T);
    double u1 = rank_one_l1_bound(T);
    double uinf = rank_one_l1_bound(Ts);
    double e1 = -1, einf = -1;
    if (pos) {
        e1 = Ts.apply(Element::identity(cod)).operator_norm();
        einf = T.apply(Element::identity(dom)).operator_norm();
        u1 = std::min(u1, e1);
        uinf = std::min(uinf, einf);
    }
    double upper = std::numeric_limits<double>::infinity();
    if (p == 1) {
        upper = u1;
    } else if (std::isinf(p)) {
        upper = uinf;
    } else {
        const double ip = 1.0 / p;
        upper = std::pow(u1, ip) * std::pow(uinf, 1.0 - ip);
        if (p < 2) {
            upper = std::min(upper, std::pow(u1, 2 * ip - 1) * std::pow(norm2, 2 - 2 * ip));
            upper = std::min(upper, std::pow(cod.trace_of_unit(), ip - 0.5) * norm2 *
                                        std::pow(dom.min_weight(), 0.5 - ip));
        } else {
            upper = std::min(upper, std::pow(norm2, 2 * ip) * std::pow(uinf, 1 - 2 * ip));
            upper = std::min(upper, std::pow(cod.min_weight(), ip - 0.5) * norm2 *
                                        std::pow(dom.trace_of_unit(), 0.5 - ip));
        }
    }

    // lower bound: dual power iteration from several starts
    const double pd = conjugate_exponent(p);
    double best = 0;
    Element arg = Element::zero(dom);
    auto ratio = [&](const Element& x) {
        const double nx = lp_norm(x, p);
        if (nx == 0) return 0.0;
        return lp_norm(T.apply(x), p) / nx;
    };
    auto consider = [&](const Element& x) {
        const double r = ratio(x);
        if (r > best) {
            best = r;
            arg = x * Scalar(1.0 / lp_norm(x, p));
        }
    };
    std::vector<Element> starts{x2, Element::identity(dom)};
    for (std::size_t k = 0; k < dom.num_blocks(); ++k)
        for (int a = 0; a < dom.dim(k); ++a)
            for (int b = 0; b < dom.dim(k); ++b) consider(Element::matrix_unit(dom, k, a, b));
    starts.push_back(arg);
    Rng rng(derive_seed(cfg.seed, 21));
    for (int r = 0; r < cfg.restarts; ++r) starts.push_back(ginibre(dom, rng));
    for (Element x : starts) {
        consider(x);
        double prev = -1;
        for (int it = 0; it < 200; ++it) {
            const Element y = T.apply(x);
            if (y.operator_norm() == 0) break;
            const Element z = norming_dual(y, p, cfg);
            const Element w = Ts.apply(z);
            if (w.operator_norm() == 0) break;
            x = norming_dual(w, pd, cfg);
            const double r = ratio(x);
            consider(x);
            if (r <= prev * (1 + 1e-13)) break;
            prev = r;
        }
    }
    if (pos && p == 1) {
        // attained at (1/w_k) ξξ* with ξ a top eigenvector of T*(1)
        const Element t1 = Ts.apply(Element::identity(cod));
        std::size_t kb = 0;
        double top = -1;
        Vector xi;
        for (std::size_t k = 0; k < dom.num_blocks(); ++k) {
            Eigen::SelfAdjointEigenSolver<Matrix> es((t1.block(k) + t1.block(k).adjoint()) * 0.5);
            if (es.eigenvalues()(dom.dim(k) - 1) > top) {
                top = es.eigenvalues()(dom.dim(k) - 1);
                kb = k;
                xi = es.eigenvectors().col(dom.dim(k) - 1);
            }
        }
        Element x = Element::zero(dom);
        x.block(kb) = xi * xi.adjoint() / dom.weight(kb);
        consider(x);
        upper = e1;
    }
    if (pos && std::isinf(p)) {
        consider(Element::identity(dom));
        upper = einf;
    }

    out.lower = best;
    out.upper = upper;
    // clamp round-off
    if (out.lower > out.upper && out.lower - out.upper <= 1e-12 * out.upper) out.lower = out.upper;
    out.certified_exact = out.upper - out.lower <= cfg.opt_tol * out.upper;
    if (maximizer) *maximizer = arg;
    return out;
}

}  // namespace nclp
