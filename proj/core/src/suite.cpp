#include "nclp/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "nclp/certify.hpp"
#include "nclp/errors.hpp"
#include "nclp/examples.hpp"
#include "nclp/generate.hpp"
#include "nclp/io.hpp"
#include "nclp/linear_map.hpp"
#include "nclp/lp.hpp"
#include "nclp/random.hpp"
#include "nclp/sequence.hpp"
#include "nclp/yeadon.hpp"

namespace nclp {

namespace {

struct Context {
    Rng rng;
    ToleranceConfig cfg;
    int budget;
    PropertyRecord* rec;

    void pass(double residual = 0.0) {
        ++rec->instances;
        ++rec->passed;
        note(residual);
    }
    void fail(const std::string& why, double residual = 0.0) {
        ++rec->instances;
        ++rec->failed;
        note(residual);
        if (rec->note.empty()) rec->note = why;
    }
    void undetermined() {
        ++rec->instances;
        ++rec->undetermined;
    }
    void check(bool ok, double residual, const std::string& why) { ok ? pass(residual) : fail(why, residual); }
    std::uint64_t seed() { return rng.engine()(); }

private:
    void note(double r) {
        if (std::isfinite(r)) rec->max_residual = std::max(rec->max_residual, r);
    }
};

using Body = std::function<void(Context&)>;

struct Property {
    PropertyInfo info;
    Body body;
};

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

const double kExponents[] = {1.0, 1.5, 2.0, 3.0, kInf};

double pick_p(Context& c, bool finite = false) {
    return kExponents[c.rng.integer(0, finite ? 3 : 4)];
}

// Separating maps with their exact norms.
LinearMap random_separating(Context& c, double p) {
    if (c.rng.integer(0, 3) == 0) return examples::transpose(c.rng.integer(2, 3), p);
    const AlgebraDescriptor dom = generate::random_algebra(c.rng, 2, 2);
    std::vector<Block> cb;
    const int k = c.rng.integer(1, 2);
    for (int i = 0; i < k; ++i) cb.push_back({c.rng.integer(2, 4), c.rng.uniform(0.5, 2.0)});
    return examples::random_yeadon(dom, AlgebraDescriptor(cb), c.rng, false, p).T;
}

// ---- algebra_core --------------------------------------------------------

void faithfulness(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const AlgebraDescriptor alg = generate::random_algebra(c.rng, 3, 4);
        Element x = ginibre(alg, c.rng) * Scalar(std::pow(10.0, c.rng.uniform(-4, 2)));
        const double t = (x.adjoint() * x).trace().real();
        const double n2 = std::pow(x.operator_norm(), 2) * alg.min_weight();
        c.check(t >= n2 * (1 - 1e-12), 0.0, "τ(x*x) below min weight · ‖x‖²");
    }
}

void adjoint_norms(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const AlgebraDescriptor alg = generate::random_algebra(c.rng, 2, 4);
        const Element x = ginibre(alg, c.rng);
        const double p = pick_p(c);
        const double n = lp_norm(x, p);
        const double r = std::max(rel(lp_norm(abs(x), p), n), rel(lp_norm(x.adjoint(), p), n));
        c.check(r <= c.cfg.algebraic_tol, r, "‖x‖_p differs from ‖x*‖_p or ‖|x|‖_p at p=" + fmt(p));
    }
}

void spectral_disjoint(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const AlgebraDescriptor alg = generate::random_algebra(c.rng, 2, 4);
        const Element x = random_self_adjoint(alg, c.rng);
        const double cut = c.rng.uniform(-1.0, 1.0);
        const Element P = spectral_projection(x, Interval::below(cut), c.cfg);
        const Element Q = spectral_projection(x, Interval::at_least(cut), c.cfg);
        const double r = std::max((P * Q).operator_norm(), distance(P + Q, Element::identity(alg)));
        c.check(r <= c.cfg.algebraic_tol, r, "χ_I(x)χ_J(x) ≠ 0");
    }
}

void polar_roundtrip(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const AlgebraDescriptor alg = generate::random_algebra(c.rng, 2, 4);
        Element x = ginibre(alg, c.rng) * random_projection(alg, c.rng);
        const auto pd = polar_support(x, c.cfg);
        const double scale = std::max(x.operator_norm(), 1.0);
        const double r = std::max({distance(pd.u * pd.m, x) / scale, distance(pd.u.adjoint() * pd.u, pd.s),
                                   distance(pd.s * pd.m, pd.m) / scale});
        c.check(r <= c.cfg.algebraic_tol, r, "polar roundtrip residual " + fmt(r));
    }
}

// ---- lp_spaces -----------------------------------------------------------

void disjointness_moduli(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const AlgebraDescriptor alg = generate::random_algebra(c.rng, 2, 4);
        const bool make_disjoint = i % 2 == 0;
        auto [a, b] = make_disjoint ? generate::disjoint_pair(alg, c.rng)
                                    : generate::overlapping_pair(alg, c.rng, 1e-3);
        const double tol = 1e3 * c.cfg.algebraic_tol;
        const bool lhs = disjoint(a, b, tol);
        const bool rhs = disjoint(abs(a), abs(b), tol) && disjoint(abs(a.adjoint()), abs(b.adjoint()), tol);
        c.check(lhs == rhs && lhs == make_disjoint, 0.0,
                std::string("disjointness of (a, b) disagrees with its moduli on a ") +
                    (make_disjoint ? "disjoint" : "perturbed") + " pair");
    }
}

void ortho_trace(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const AlgebraDescriptor alg = generate::random_algebra(c.rng, 2, 4);
        const bool make_disjoint = i % 2 == 0;
        auto [a, b] = make_disjoint ? generate::disjoint_pair(alg, c.rng, true)
                                    : generate::overlapping_pair(alg, c.rng, 1e-3, true);
        const double scale = lp_norm(a, 2) * lp_norm(b, 2);
        const double t = scale > 0 ? std::abs(duality_pair(a, b)) / scale : 0.0;
        const double prod = (a * b).operator_norm() / std::max(a.operator_norm() * b.operator_norm(), 1e-300);
        const double tol = 1e3 * c.cfg.algebraic_tol;
        c.check((t <= tol) == (prod <= tol) && (t <= tol) == make_disjoint, t, "τ(ab) = 0 disagrees with ab = 0");
    }
}

void norm_axioms(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const AlgebraDescriptor alg = generate::random_algebra(c.rng, 2, 4);
        const Element x = ginibre(alg, c.rng), y = ginibre(alg, c.rng);
        const double p = pick_p(c);
        const Scalar s = c.rng.complex_normal() * 3.0;
        const double tri = lp_norm(x + y, p) - lp_norm(x, p) - lp_norm(y, p);
        const double hom = rel(lp_norm(x * s, p), std::abs(s) * lp_norm(x, p));
        const double r = std::max(tri / (lp_norm(x, p) + lp_norm(y, p)), hom);
        c.check(r <= c.cfg.algebraic_tol, std::max(r, 0.0), "triangle or homogeneity fails at p=" + fmt(p));
    }
}

// ---- sequence_spaces -----------------------------------------------------

void l1_positive(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const AlgebraDescriptor alg = generate::random_algebra(c.rng, 2, 3);
        const auto x = generate::random_sequence(alg, c.rng.integer(1, 5), c.rng, true);
        const double p = pick_p(c, true);
        const double value = lp_norm(x.sum(), p);
        const NormInterval iv = l1_norm_bounds(x, p, c.cfg);
        const double lower = l1_lower_bound(x, p);
        const double r = std::max({rel(iv.lower, value), rel(iv.upper, value), iv.gap() / value});
        c.check(r <= c.cfg.opt_tol && lower >= value * (1 - 1e-12), r,
                "interval misses ‖Σ x_n‖_p at p=" + fmt(p));
    }
}

void l1_holder(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const AlgebraDescriptor alg = generate::random_algebra(c.rng, 2, 2);
        const auto x = generate::random_sequence(alg, c.rng.integer(1, 3), c.rng, false);
        const double p = pick_p(c, true);
        L1Trace trace;
        L1Options opts;
        opts.max_iterations = 60;
        opts.random_restarts = false;
        opts.trace = &trace;
        const NormInterval iv = l1_norm_bounds(x, p, c.cfg, opts);
        double worst = 0.0;
        for (const auto& v : trace.visits) worst = std::max(worst, (v.product_norm - v.bound) / v.bound);
        const bool ok = worst <= c.cfg.algebraic_tol && iv.lower <= iv.upper &&
                        (trace.polar_upper == 0.0 || iv.upper <= trace.polar_upper * (1 + 1e-12));
        c.check(ok, std::max(worst, 0.0), "visited factorization violates the Hölder bound at p=" + fmt(p));
    }
}

void l1_invariance(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const AlgebraDescriptor alg = generate::random_algebra(c.rng, 1, 2);
        const auto x = generate::random_sequence(alg, c.rng.integer(2, 3), c.rng, false);
        const double p = pick_p(c, true);
        std::vector<Element> perm = x.items();
        std::reverse(perm.begin(), perm.end());
        const Scalar s = c.rng.complex_normal() * 2.0;
        std::vector<Element> scaled;
        for (const auto& e : x.items()) scaled.push_back(e * s);
        L1Options opts;
        opts.max_iterations = 80;
        opts.random_restarts = false;
        const NormInterval a = l1_norm_bounds(x, p, c.cfg, opts);
        const NormInterval b = l1_norm_bounds(ElementSequence(perm), p, c.cfg, opts);
        NormInterval d = l1_norm_bounds(ElementSequence(scaled), p, c.cfg, opts);
        d.lower /= std::abs(s);
        d.upper /= std::abs(s);
        const double slack = 1 + c.cfg.opt_tol;
        const double lo = std::max({a.lower, b.lower, d.lower});
        const double hi = std::min({a.upper, b.upper, d.upper});
        c.check(lo <= hi * slack, std::max(0.0, lo / hi - 1), "permuted or scaled intervals are disjoint");
    }
}

void dinq_pairs(Context& c, bool interval_form) {
    int undetermined = 0;
    for (int i = 0; i < c.budget; ++i) {
        const AlgebraDescriptor alg = generate::random_algebra(c.rng, 2, 3);
        const bool make_disjoint = i % 2 == 0;
        auto [a, b] = make_disjoint ? generate::disjoint_pair(alg, c.rng)
                                    : generate::overlapping_pair(alg, c.rng, c.rng.uniform(0.05, 0.5));
        const DinqResult r = dinq_disjoint_test(a, b, c.cfg);
        const double thr = r.threshold;
        if (interval_form) {
            if (make_disjoint) {
                const double excess = r.interval.upper / thr - 1;
                c.check(excess <= c.cfg.opt_tol, std::max(excess, 0.0), "disjoint pair exceeds the ℓ¹₂ threshold");
            } else if (r.interval.lower > thr) {
                c.pass(r.interval.lower / thr - 1);
            } else if (r.interval.upper <= thr * (1 + c.cfg.opt_tol)) {
                c.fail("overlapping pair has ℓ¹₂ norm at the threshold");
            } else {
                c.undetermined();
                ++undetermined;
            }
        } else {
            if (r.verdict == DinqVerdict::undetermined) {
                c.undetermined();
                ++undetermined;
            } else {
                const bool said = r.verdict == DinqVerdict::disjoint;
                c.check(said == r.algebraic && said == make_disjoint, 0.0,
                        std::string("dinq verdict ") + to_string(r.verdict) + " disagrees with disjoint()");
            }
        }
    }
    if (c.budget > 0 && undetermined * 10 >= c.budget) {
        c.rec->failed += 1;
        if (c.rec->note.empty()) c.rec->note = "undetermined rate " + fmt(double(undetermined) / c.budget) + " ≥ 10%";
    }
}

// ---- operator_maps -------------------------------------------------------

LinearMap random_map(Context& c, const AlgebraDescriptor& dom, const AlgebraDescriptor& cod, double p = 2.0) {
    return LinearMap(dom, cod, ginibre_matrix(int(cod.space_dim()), int(dom.space_dim()), c.rng), p);
}

void adjoint_involution(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        std::vector<Block> db, cb;
        for (int k = c.rng.integer(1, 2); k > 0; --k) db.push_back({c.rng.integer(1, 3), 1.0});
        for (int k = c.rng.integer(1, 2); k > 0; --k) cb.push_back({c.rng.integer(1, 3), 1.0});
        const LinearMap T = random_map(c, AlgebraDescriptor(db), AlgebraDescriptor(cb));
        const LinearMap T2 = adjoint_map(adjoint_map(T));
        const double r = (T2.action() - T.action()).norm() / T.action().norm();
        c.check(r <= c.cfg.algebraic_tol, r, "(T*)* ≠ T");
    }
}

LinearMap random_cp(Context& c) {
    switch (c.rng.integer(0, 3)) {
        case 0: return examples::random_cp_contraction(c.rng.integer(2, 3), c.rng);
        case 1: return examples::depolarizing(generate::random_algebra(c.rng, 2, 3), c.rng.uniform(0, 1));
        case 2: return examples::star_homomorphism(c.rng.integer(2, 3), c.rng.integer(1, 2));
        default: {
            const AlgebraDescriptor alg = generate::random_algebra(c.rng, 2, 3);
            return examples::unitary_conjugation(haar_unitary(alg, c.rng));
        }
    }
}

void cp_certified(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const LinearMap T = random_cp(c).with_provenance({});
        bool ok = true;
        for (auto level : {PositivityLevel::positive, PositivityLevel::two_positive,
                           PositivityLevel::completely_positive}) {
            ok = ok && positivity_tests(T, level, c.cfg).verdict == Verdict::certified;
        }
        c.check(ok, 0.0, "completely positive map not certified at every level");
    }
}

LinearMap library_map(Context& c, int i) {
    const int n = c.rng.integer(2, 3);
    switch (i % 7) {
        case 0: return examples::transpose(n);
        case 1: return examples::reduction_map(n);
        case 2: return examples::random_positive_map(n, c.rng, c.rng.uniform(0.0, 0.6));
        case 3: return examples::random_cp_contraction(n, c.rng);
        case 4: return examples::trace_removal(n);
        case 5: return examples::jordan_direct_sum(n);
        default: return examples::rotation_mixing(c.rng.uniform(0.1, 1.5));
    }
}

void amplification_agreement(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const LinearMap T = library_map(c, i);
        const Verdict two = positivity_tests(T, PositivityLevel::two_positive, c.cfg).verdict;
        const Verdict amp = positivity_tests(amplified_map(T, 2), PositivityLevel::positive, c.cfg).verdict;
        c.check((two == Verdict::falsified) == (amp == Verdict::falsified), 0.0,
                std::string("2-positivity ") + to_string(two) + " but amplified positivity " + to_string(amp));
    }
}

// ---- yeadon_engine -------------------------------------------------------

double element_rel(const Element& a, const Element& b) {
    return distance(a, b) / std::max({a.operator_norm(), b.operator_norm(), 1e-300});
}

void yeadon_roundtrip(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const AlgebraDescriptor dom = generate::random_algebra(c.rng, 2, 2);
        std::vector<Block> cb;
        for (int k = c.rng.integer(1, 3); k > 0; --k) cb.push_back({c.rng.integer(2, 4), c.rng.uniform(0.5, 2)});
        const auto data = examples::random_yeadon(dom, AlgebraDescriptor(cb), c.rng, c.rng.integer(0, 1) == 1);
        const ExtractionResult ex = extract_yeadon(data.T, c.cfg);
        if (!ex.ok()) {
            c.fail("extraction failed at " + ex.failure, ex.residual);
            continue;
        }
        const auto& t = *ex.triple;
        const double r = std::max({element_rel(t.w, data.w), element_rel(t.B, data.B),
                                   (t.J.action() - data.J.action()).norm() / data.J.action().norm()});
        c.check(r <= 10 * c.cfg.algebraic_tol, r, "recovered triple differs from its input by " + fmt(r));
    }
}

void separating_soundness(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const LinearMap T = random_separating(c, 2.0);
        const SeparatingResult s = certify_separating(T, c.cfg);
        if (s.verdict != Verdict::certified) {
            c.fail(std::string("separating map reported ") + to_string(s.verdict));
            continue;
        }
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            auto [a, b] = generate::disjoint_pair(T.domain(), c.rng, k % 2 == 0);
            const Element ta = T(a), tb = T(b);
            const double norms = std::max(ta.operator_norm() * tb.operator_norm(), 1e-300);
            worst = std::max({worst, (ta.adjoint() * tb).operator_norm() / norms,
                              (ta * tb.adjoint()).operator_norm() / norms});
        }
        c.check(worst <= 1e3 * c.cfg.algebraic_tol, worst, "certified map sends a disjoint pair to an overlapping one");
    }
}

void separating_consistency(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        LinearMap T;
        switch (i % 3) {
            case 0: T = random_separating(c, 2.0); break;
            case 1: T = examples::rotation_mixing(c.rng.uniform(0.1, 1.5)); break;
            default: T = library_map(c, c.rng.integer(0, 6)); break;
        }
        bool cert = false, fals = false;
        for (int r = 0; r < 3; ++r) {
            ToleranceConfig cfg = c.cfg;
            cfg.seed = c.seed();
            const Verdict v = certify_separating(T, cfg).verdict;
            cert = cert || v == Verdict::certified;
            fals = fals || v == Verdict::falsified;
        }
        c.check(!(cert && fals), 0.0, "certified and falsified on the same map");
    }
}

void central_laws(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const AlgebraDescriptor dom = generate::random_algebra(c.rng, 2, 2);
        std::vector<Block> cb;
        for (int k = c.rng.integer(1, 3); k > 0; --k) cb.push_back({c.rng.integer(2, 4), 1.0});
        const auto data = examples::random_yeadon(dom, AlgebraDescriptor(cb), c.rng);
        const CentralDecomposition d = central_decompose(data.J, c.cfg);
        const Element one = data.J(Element::identity(dom));
        double r = std::max((d.g * d.f).operator_norm(), distance(d.g + d.f, one));
        for (int k = 0; k < 4; ++k) {
            const Element x = ginibre(dom, c.rng), y = ginibre(dom, c.rng);
            const double s = x.operator_norm() * y.operator_norm();
            r = std::max(r, distance(d.pi(x * y), d.pi(x) * d.pi(y)) / s);
            r = std::max(r, distance(d.sigma(x * y), d.sigma(y) * d.sigma(x)) / s);
        }
        c.check(r <= c.cfg.algebraic_tol, r, "central decomposition laws fail by " + fmt(r));
    }
}

// ---- ell1_certify --------------------------------------------------------

RatioOptions quick_ratios(int samples) {
    RatioOptions o;
    o.samples = samples;
    o.max_length = 3;
    o.optimizer_iterations = 40;
    return o;
}

LinearMap certifiable_map(Context& c, int i, double& p) {
    switch (i % 5) {
        case 0: p = pick_p(c, true); return random_separating(c, p);
        case 1: p = pick_p(c, true); return examples::random_cp_contraction(c.rng.integer(2, 3), c.rng, p);
        case 2: p = pick_p(c, true); return examples::random_positive_map(2, c.rng, 0.3, p);
        case 3: {
            p = 2.0;
            const int m = c.rng.integer(2, 3);
            return examples::commutative_matrix(ginibre_matrix(m, m, c.rng));
        }
        default: {
            p = 1.0;
            const AlgebraDescriptor alg = generate::random_algebra(c.rng, 2, 2);
            return random_map(c, alg, alg, 1.0);
        }
    }
}

void ratio_bound(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        double p = 2.0;
        const LinearMap T = certifiable_map(c, i, p);
        ToleranceConfig cfg = c.cfg;
        cfg.seed = c.seed();
        const L1Certificate cert = certify_l1_norm(T, p, cfg, quick_ratios(8));
        if (cert.route == L1Route::sampled_only) {
            c.undetermined();
            continue;
        }
        const double excess = cert.ratios.best - cert.value.upper;
        c.check(!cert.inconsistency && excess <= c.cfg.opt_tol * std::max(1.0, cert.value.upper),
                std::max(excess, 0.0) / std::max(cert.value.upper, 1e-300),
                std::string("sampled ratio above the certified upper bound on route ") + to_string(cert.route));
    }
}

void separating_sharpness(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const double p = kExponents[c.rng.integer(1, 3)];
        const LinearMap T = random_separating(c, p);
        const L1Certificate cert = certify_l1_norm(T, p, c.cfg, quick_ratios(6));
        if (cert.route != L1Route::separating) {
            c.fail(std::string("separating map certified by route ") + to_string(cert.route));
            continue;
        }
        const double norm = cert.value.upper;
        const double reach = cert.ratios.best_of("positive_singleton") / norm;
        c.check(reach >= 0.95 && cert.ratios.best <= norm * (1 + c.cfg.opt_tol), 1 - std::min(reach, 1.0),
                "positive singleton ratio reaches only " + fmt(reach) + "·‖T‖");
    }
}

LinearMap isometry_battery(Context& c, int i, bool& positive) {
    positive = false;
    switch (i % 5) {
        case 0: {
            positive = true;
            const AlgebraDescriptor alg = generate::random_algebra(c.rng, 2, 3);
            return examples::unitary_conjugation(haar_unitary(alg, c.rng));
        }
        case 1: positive = true; return examples::transpose(c.rng.integer(2, 3));
        case 2: {
            positive = true;
            std::vector<Block> b;
            for (int k = c.rng.integer(1, 2); k > 0; --k) b.push_back({c.rng.integer(1, 2), 1.0});
            return examples::block_embedding(AlgebraDescriptor(b));
        }
        case 3: {
            // halved weights make x ↦ x ⊕ xᵀ isometric on L²
            positive = true;
            const LinearMap J = examples::jordan_direct_sum(2);
            return LinearMap(J.domain(), AlgebraDescriptor({{2, 0.5}, {2, 0.5}}), J.action());
        }
        default: return examples::rotation_mixing(c.rng.uniform(0.2, 1.4));
    }
}

void isometry_routes(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        bool positive = false;
        const LinearMap T = isometry_battery(c, i, positive);
        ToleranceConfig cfg = c.cfg;
        cfg.seed = c.seed();
        const IsometryResult r = classify_l2_isometry(T, cfg);
        if (r.inconsistency) {
            c.fail("routes (i) and (ii) disagree: " + r.note);
        } else if (positive && r.verdict != IsometryVerdict::ytf) {
            c.fail(std::string("positive isometry classified ") + to_string(r.verdict));
        } else if (r.verdict == IsometryVerdict::undetermined) {
            c.undetermined();
        } else {
            c.pass(r.isometry_defect);
        }
    }
}

void positive_4x(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const double p = pick_p(c, true);
        const LinearMap T = i % 3 == 0 ? examples::reduction_map(c.rng.integer(2, 3), p)
                                       : examples::random_positive_map(c.rng.integer(2, 3), c.rng, 0.3, p);
        RatioReport rep;
        const double best = l1_ratio_lower(T, p, c.cfg, &rep, quick_ratios(6));
        const NormInterval op = op_norm(T, p, c.cfg);
        const auto x = generate::random_sequence(T.domain(), 2, c.rng, false);
        const NormInterval iv = l1_norm_bounds(x, p, c.cfg, {60, false, nullptr});
        double recon = 0.0;
        if (iv.witness) recon = polarization_witness(x, *iv.witness, p).reconstruction_residual;
        const double limit = 4 * op.upper * (1 + c.cfg.opt_tol);
        c.check(best <= limit && recon <= c.cfg.algebraic_tol, recon,
                "ratio " + fmt(best) + " vs 4‖T‖ " + fmt(limit) + ", polarization residual " + fmt(recon));
    }
}

void two_positive_contraction(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const double p = pick_p(c, true);
        const LinearMap T = examples::random_cp_contraction(c.rng.integer(2, 3), c.rng, p);
        const double best = l1_ratio_lower(T, p, c.cfg, nullptr, quick_ratios(6));
        const auto x = generate::random_sequence(T.domain(), 2, c.rng, false);
        const NormInterval iv = l1_norm_bounds(x, p, c.cfg, {60, false, nullptr});
        double residual = 0.0;
        if (iv.witness) residual = two_positive_sqrt(T, *iv.witness, p, c.cfg).residual;
        c.check(best <= 1 + c.cfg.opt_tol && residual <= 10 * c.cfg.algebraic_tol, residual,
                "ratio " + fmt(best) + ", square-root residual " + fmt(residual));
    }
}

void comm_regular(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const int m = c.rng.integer(2, 4), k = c.rng.integer(2, 4);
        std::vector<double> dw, cw;
        for (int j = 0; j < m; ++j) dw.push_back(c.rng.uniform(0.5, 2));
        for (int j = 0; j < k; ++j) cw.push_back(c.rng.uniform(0.5, 2));
        const LinearMap T = examples::commutative_matrix(ginibre_matrix(k, m, c.rng), dw, cw);
        const L1Certificate cert = certify_l1_norm(T, 2.0, c.cfg, quick_ratios(6));
        const NormInterval reg = regular_norm_commutative(T, 2.0, c.cfg);
        const double r = rel(cert.value.upper, reg.upper);
        c.check(cert.route == L1Route::commutative_regular && r <= c.cfg.algebraic_tol &&
                    cert.ratios.best <= reg.upper * (1 + c.cfg.opt_tol),
                r, "commutative certificate differs from the regular norm");
    }
}

void p_one(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const AlgebraDescriptor dom = generate::random_algebra(c.rng, 2, 2);
        const AlgebraDescriptor cod = generate::random_algebra(c.rng, 2, 2);
        const LinearMap T = random_map(c, dom, cod, 1.0);
        const L1Certificate cert = certify_l1_norm(T, 1.0, c.cfg, quick_ratios(6));
        const double reach = cert.ratios.best_of("positive_singleton") / cert.op.upper;
        c.check(cert.route == L1Route::p_equals_one && cert.ratios.best <= cert.op.upper * (1 + c.cfg.opt_tol), 0.0,
                "ratio above ‖T‖ at p = 1 (positive singleton reach " + fmt(reach) + ")");
    }
}

void transpose_example(Context& c) {
    for (int i = 0; i < c.budget; ++i) {
        const int n = c.rng.integer(1, 64);
        const double q = c.rng.uniform(1.0, 6.0);
        // rank-n projection inside M_64, rotated by a Haar unitary
        Matrix Q = Matrix::Zero(64, 64);
        Q.topLeftCorner(n, n).setIdentity();
        const Matrix U = haar_unitary_matrix(64, c.rng);
        const Element e(AlgebraDescriptor::full(64), {U * Q * U.adjoint()});
        const double r = rel(lp_norm(e, q), std::pow(double(n), 1.0 / q));
        c.check(r <= 1e-12, r, "‖Q_n‖_q ≠ n^{1/q} at n=" + std::to_string(n));
    }
    for (double p : {1.5, 2.0, 3.0}) {
        const double best = l1_ratio_lower(examples::transpose(2, p), p, c.cfg, nullptr, quick_ratios(6));
        c.check(best <= 1 + c.cfg.opt_tol, std::max(best - 1, 0.0), "transpose ratio above 1 at p=" + fmt(p));
    }
}

// ---- cli_and_io ----------------------------------------------------------

void io_roundtrip(Context& c) {
    const auto kinds = generate::instance_kinds();
    for (int i = 0; i < c.budget; ++i) {
        generate::InstanceParams params;
        params.kind = kinds[std::size_t(i) % kinds.size()];
        params.n = c.rng.integer(1, 4);
        params.dim = c.rng.integer(1, 3);
        params.seed = c.seed();
        if (params.kind == "yeadon" && params.dim == 1) params.dim = 2;
        const std::string text = io::serialize_instance(generate::random_instance(params));
        const std::string again = io::serialize_instance(io::parse_instance(text));
        c.check(text == again, 0.0, "serialize(parse(f)) differs for kind " + params.kind);
    }
}

const std::vector<Property>& registry() {
    static const std::vector<Property> props = {
        {{"faithfulness.trace", "algebra_core", "τ(x*x) > 0 for every x ≠ 0", 200}, faithfulness},
        {{"adjoint.norms", "algebra_core", "‖a*‖_p = ‖a‖_p = ‖|a|‖_p", 200}, adjoint_norms},
        {{"spectral.disjoint_intervals", "algebra_core", "χ_I(x)χ_J(x) = 0 for disjoint intervals I, J", 200},
         spectral_disjoint},
        {{"polar.roundtrip", "algebra_core", "x = u|x| with u*u = s(|x|)", 1000}, polar_roundtrip},
        {{"disjointness.moduli", "lp_spaces", "a, b disjoint iff |a|, |b| and |a*|, |b*| are disjoint", 200},
         disjointness_moduli},
        {{"ortho.trace", "lp_spaces", "for positive a, b: τ(ab) = 0 iff ab = 0", 200}, ortho_trace},
        {{"lp.norm_axioms", "lp_spaces", "‖x + y‖_p ≤ ‖x‖_p + ‖y‖_p and ‖cx‖_p = |c|‖x‖_p", 200}, norm_axioms},
        {{"l1.positive", "sequence_spaces", "‖(x_n)‖ = ‖Σ x_n‖_p for positive x_n", 200}, l1_positive},
        {{"l1.holder", "sequence_spaces", "‖Σ a_n b_n‖_p ≤ ‖Σ a_n a_n*‖_p^{1/2} ‖Σ b_n* b_n‖_p^{1/2}", 40},
         l1_holder},
        {{"l1.invariance", "sequence_spaces", "‖(x_n)‖ is invariant under permutation and absolutely homogeneous",
          20},
         l1_invariance},
        {{"dinq.agreement", "sequence_spaces",
          "at p = 2, a, b disjoint iff ‖(a, b)‖ = (‖a‖₂² + ‖b‖₂²)^{1/2}", 100},
         [](Context& c) { dinq_pairs(c, false); }},
        {{"dinq.both_directions", "ell1_certify",
          "at p = 2, ‖(a, b)‖ ≤ (‖a‖₂² + ‖b‖₂²)^{1/2} with equality only for disjoint a, b", 100},
         [](Context& c) { dinq_pairs(c, true); }},
        {{"maps.adjoint_involution", "operator_maps", "(T*)* = T", 100}, adjoint_involution},
        {{"maps.cp_levels", "operator_maps", "a completely positive map is positive and 2-positive", 40},
         cp_certified},
        {{"maps.amplification", "operator_maps", "T is 2-positive iff I ⊗ T on M_2 is positive", 21},
         amplification_agreement},
        {{"yeadon.roundtrip", "yeadon_engine", "the Yeadon triple of a separating operator is unique", 60},
         yeadon_roundtrip},
        {{"yeadon.soundness", "yeadon_engine", "a separating operator maps disjoint pairs to disjoint pairs", 20},
         separating_soundness},
        {{"yeadon.consistency", "yeadon_engine", "a map is never both certified and falsified separating", 15},
         separating_consistency},
        {{"yeadon.central", "yeadon_engine",
          "J = π + σ with π multiplicative, σ anti-multiplicative, g f = 0 and g + f = J(1)", 40},
         central_laws},
        {{"ell1.ratio_bound", "ell1_certify", "sampled ℓ¹ ratios never exceed a certified upper bound", 20},
         ratio_bound},
        {{"ell1.separating", "ell1_certify", "a separating operator is ℓ¹-bounded with ‖T‖_{ℓ¹} = ‖T‖", 12},
         separating_sharpness},
        {{"isometry.routes", "ell1_certify",
          "an L²-isometry has a Yeadon factorization iff it is ℓ¹₂-contractive", 15},
         isometry_routes},
        {{"ell1.positive", "ell1_certify", "a positive map T is ℓ¹-bounded with ‖T‖_{ℓ¹} ≤ 4‖T‖", 9},
         positive_4x},
        {{"ell1.two_positive", "ell1_certify", "a contractive 2-positive map is ℓ¹-contractive", 9},
         two_positive_contraction},
        {{"ell1.commutative", "ell1_certify", "on commutative algebras ‖T‖_{ℓ¹} is the regular norm", 15},
         comm_regular},
        {{"ell1.p_one", "ell1_certify", "at p = 1 every bounded map has ‖T‖_{ℓ¹} = ‖T‖", 10}, p_one},
        {{"transpose.contractive", "ell1_certify", "transposition is ℓ¹-contractive and ‖Q_n‖_q = n^{1/q}", 64},
         transpose_example},
        {{"io.roundtrip", "cli_and_io", "serialize ∘ parse is the identity on canonical instance files", 30},
         io_roundtrip},
    };
    return props;
}

std::uint64_t hash_id(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) h = (h ^ ch) * 1099511628211ULL;
    return h;
}

bool selected(const PropertyInfo& info, const std::vector<std::string>& only) {
    if (only.empty()) return true;
    const std::string group = info.id.substr(0, info.id.find('.'));
    return std::any_of(only.begin(), only.end(),
                       [&](const std::string& o) { return o == info.id || o == group || o == info.module; });
}

}  // namespace

bool SuiteReport::pass() const { return failures() == 0 && !records.empty(); }

int SuiteReport::failures() const {
    return std::accumulate(records.begin(), records.end(), 0,
                           [](int s, const PropertyRecord& r) { return s + r.failed; });
}

int SuiteReport::undetermined() const {
    return std::accumulate(records.begin(), records.end(), 0,
                           [](int s, const PropertyRecord& r) { return s + r.undetermined; });
}

std::vector<PropertyInfo> suite_properties() {
    std::vector<PropertyInfo> out;
    for (const auto& p : registry()) out.push_back(p.info);
    return out;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
    cfg.tolerances.validate();
    if (!(cfg.budget_scale > 0)) throw DomainError("suite budget scale must be positive");
    SuiteReport report;
    report.seed = cfg.seed;
    for (const auto& prop : registry()) {
        if (!selected(prop.info, cfg.only)) continue;
        PropertyRecord rec;
        rec.info = prop.info;
        const auto start = std::chrono::steady_clock::now();
        Context ctx{Rng(derive_seed(cfg.seed, hash_id(prop.info.id))), cfg.tolerances,
                    std::max(1, int(std::lround(prop.info.default_instances * cfg.budget_scale))), &rec};
        ctx.cfg.seed = derive_seed(cfg.seed, hash_id(prop.info.id) + 1);
        try {
            prop.body(ctx);
        } catch (const std::exception& e) {
            rec.failed += 1;
            if (rec.note.empty()) rec.note = std::string("exception: ") + e.what();
        }
        rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.records.push_back(std::move(rec));
    }
    if (report.records.empty()) throw StructuralError("suite: --only selects no property");
    return report;
}

nlohmann::json suite_report_json(const SuiteReport& report, bool timing) {
    nlohmann::json props = nlohmann::json::array();
    double total = 0.0;
    for (const auto& r : report.records) {
        nlohmann::json j = {{"id", r.info.id},
                            {"module", r.info.module},
                            {"anchor", r.info.anchor},
                            {"instances", r.instances},
                            {"passed", r.passed},
                            {"failed", r.failed},
                            {"undetermined", r.undetermined},
                            {"max_residual", io::number(r.max_residual)},
                            {"verdict", r.failed > 0 ? "fail" : "pass"}};
        if (!r.note.empty()) j["note"] = r.note;
        if (timing) j["wall_seconds"] = r.wall_seconds;
        total += r.wall_seconds;
        props.push_back(std::move(j));
    }
    nlohmann::json out = {{"seed", report.seed},
                          {"verdict", report.pass() ? "pass" : "fail"},
                          {"failures", report.failures()},
                          {"undetermined", report.undetermined()},
                          {"properties", props}};
    if (timing) out["wall_seconds"] = total;
    return out;
}

}  // namespace nclp
