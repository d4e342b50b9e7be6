// Acceptance checks: one PASS/FAIL line per criterion. Exit status 1 on any failure
// not marked as known.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nclp/certify.hpp"
#include "nclp/examples.hpp"
#include "nclp/generate.hpp"
#include "nclp/lp.hpp"
#include "nclp/random.hpp"
#include "nclp/sequence.hpp"
#include "nclp/yeadon.hpp"
#include "oracles.hpp"

using namespace nclp;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
    // documented unattainable criterion
    bool known_failure = false;
};

struct Tally {
    int checked = 0;
    int failed = 0;
    std::string first;
    void expect(bool ok, const std::string& what) {
        ++checked;
        if (!ok) {
            ++failed;
            if (first.empty()) first = what;
        }
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Element element(const AlgebraDescriptor& a, std::vector<Matrix> blocks) { return Element(a, std::move(blocks)); }

using generate::disjoint_pair;
using generate::random_algebra;

bool cross_products_vanish(const Element& a, const Element& b, double tol) {
    const double s = std::max(a.operator_norm() * b.operator_norm(), 1e-300);
    return (a.adjoint() * b).operator_norm() <= tol * s && (a * b.adjoint()).operator_norm() <= tol * s;
}

// For T = wBJ(·) and unit ξ, ‖T(ξξ*)‖_p^p = w_k ξ*D_kξ for a Hermitian D_k on each
// domain block and ‖T‖^p = max_k λ_max(D_k). D_k is recovered by polarization.
double separating_norm_oracle(const LinearMap& T, double p) {
    const auto& dom = T.domain();
    double best = 0;
    for (std::size_t k = 0; k < dom.num_blocks(); ++k) {
        const int n = dom.dim(k);
        // extended from unit vectors by homogeneity of degree 2
        auto q = [&](const Eigen::VectorXcd& v) {
            const Eigen::VectorXcd xi = v.normalized();
            std::vector<Matrix> blocks;
            for (std::size_t j = 0; j < dom.num_blocks(); ++j)
                blocks.push_back(j == k ? Matrix(xi * xi.adjoint()) : Matrix::Zero(dom.dim(j), dom.dim(j)));
            return v.squaredNorm() * std::pow(oracle::schatten(T.apply(Element(dom, blocks)), p), p);
        };
        Matrix D(n, n);
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXcd ei = Eigen::VectorXcd::Zero(n);
            ei(i) = 1;
            D(i, i) = q(ei);
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n), w = Eigen::VectorXcd::Zero(n);
                v(i) = 1;
                v(j) = 1;
                w(i) = 1;
                w(j) = Scalar(0, 1);
                const double re = 0.5 * (q(v) - D(i, i).real() - D(j, j).real());
                const double im = -0.5 * (q(w) - D(i, i).real() - D(j, j).real());
                D(i, j) = Scalar(re, im);
                D(j, i) = std::conj(D(i, j));
            }
        Eigen::SelfAdjointEigenSolver<Matrix> es(D);
        best = std::max(best, es.eigenvalues().maxCoeff() / dom.weight(k));
    }
    return std::pow(best, 1.0 / p);
}

RatioOptions ratio_options(int samples) {
    RatioOptions o;
    o.samples = samples;
    o.max_length = 4;
    o.optimizer_iterations = 40;
    return o;
}

// ---- criteria ------------------------------------------------------------

Outcome positive_sequences() {
    const auto start = Clock::now();
    Rng rng(101);
    Tally t;
    const double ps[] = {1.0, 1.5, 2.0, 3.0};
    double worst_gap = 0;
    for (int i = 0; i < 200; ++i) {
        const AlgebraDescriptor alg = random_algebra(rng, 2, 4);
        std::vector<Element> xs;
        for (int n = rng.integer(1, 6); n > 0; --n) xs.push_back(wishart(alg, rng, rng.integer(1, 4)));
        const double p = ps[i % 4];
        const double ref = oracle::schatten(oracle::sum(xs), p);
        const NormInterval iv = l1_norm_bounds(ElementSequence(xs), p);
        const double slack = 1e-12 * ref;
        worst_gap = std::max(worst_gap, iv.gap() / ref);
        t.expect(iv.lower <= ref + slack && ref <= iv.upper + slack, "interval misses ‖Σx_n‖ at p=" + fmt(p));
        t.expect(iv.gap() <= 1e-6 * ref, "gap " + fmt(iv.gap() / ref) + " at p=" + fmt(p));
    }
    const double secs = seconds_since(start);
    t.expect(secs < 60, "runtime " + fmt(secs) + " s");
    return {t.failed == 0, "200 sequences, max relative gap " + fmt(worst_gap) + ", " + fmt(secs) + " s" +
                               (t.first.empty() ? "" : "; " + t.first)};
}

Outcome visited_factorizations() {
    Rng rng(102);
    Tally t;
    double worst = 0, polar_gap = 0;
    int visits = 0;
    for (int i = 0; i < 100; ++i) {
        const AlgebraDescriptor alg = random_algebra(rng, 2, 3);
        std::vector<Element> xs;
        for (int n = rng.integer(1, 4); n > 0; --n) xs.push_back(ginibre(alg, rng));
        const double p = std::vector<double>{1.0, 1.5, 2.0, 3.0}[std::size_t(i % 4)];
        L1Trace trace;
        L1Options opts;
        opts.trace = &trace;
        const ElementSequence x(xs);
        const NormInterval iv = l1_norm_bounds(x, p, {}, opts);
        for (const auto& v : trace.visits) {
            ++visits;
            worst = std::max(worst, v.product_norm / v.bound - 1);
            t.expect(v.product_norm <= v.bound * (1 + 1e-9), "visited factorization breaks the Hölder bound");
        }
        t.expect(iv.upper <= trace.polar_upper * (1 + 1e-12), "final upper above the polar initialization");
        // polar factors a = |x*|^{1/2}, b = u|x|^{1/2}
        std::vector<Element> left, right;
        for (const auto& e : xs) {
            std::vector<Matrix> l, r;
            for (const auto& b : e.blocks()) {
                l.push_back(oracle::psd_sqrt(b * b.adjoint()));
                r.push_back(oracle::psd_sqrt(b.adjoint() * b));
            }
            left.push_back(element(alg, l));
            right.push_back(element(alg, r));
        }
        const double polar = std::sqrt(oracle::schatten(oracle::sum(left), p) * oracle::schatten(oracle::sum(right), p));
        polar_gap = std::max(polar_gap, std::abs(trace.polar_upper - polar) / polar);
    }
    return {t.failed == 0, std::to_string(visits) + " visits, max Hölder excess " + fmt(std::max(worst, 0.0)) +
                               "; polar start vs ‖Σ|x*|‖^½‖Σ|x|‖^½ rel. diff " + fmt(polar_gap) + " (diagnostic)" +
                               (t.first.empty() ? "" : "; " + t.first)};
}

Outcome dinq_pairs() {
    Rng rng(103);
    Tally t;
    int undetermined = 0, lower_above = 0;
    for (int i = 0; i < 500; ++i) {
        const AlgebraDescriptor alg = random_algebra(rng, 2, 3);
        auto [a, b] = disjoint_pair(alg, rng);
        const double thr = std::hypot(oracle::schatten(a, 2), oracle::schatten(b, 2));
        const NormInterval iv = l12_norm(a, b, 2.0);
        t.expect(iv.upper <= thr * (1 + 1e-6), "disjoint pair upper " + fmt(iv.upper / thr) + "·threshold");
    }
    for (int i = 0; i < 500; ++i) {
        const AlgebraDescriptor alg = random_algebra(rng, 2, 3);
        Element a, b;
        if (i % 2 == 0) {
            a = ginibre(alg, rng);
            b = ginibre(alg, rng);
        } else {
            std::tie(a, b) = disjoint_pair(alg, rng);
            if (a.operator_norm() == 0) std::swap(a, b);
            const Element e = ginibre(alg, rng);
            b += e * Scalar(rng.uniform(0.05, 0.5) * std::max(a.operator_norm(), b.operator_norm()) / e.operator_norm());
        }
        if (cross_products_vanish(a, b, 1e-6)) continue;
        const double thr = std::hypot(oracle::schatten(a, 2), oracle::schatten(b, 2));
        const DinqResult r = dinq_disjoint_test(a, b);
        if (r.interval.lower > thr) {
            ++lower_above;
        } else if (r.verdict == DinqVerdict::undetermined) {
            ++undetermined;
        } else {
            t.expect(false, "non-disjoint pair with lower bound at or below the threshold");
        }
    }
    const double rate = undetermined / 500.0;
    t.expect(rate < 0.10, "undetermined rate " + fmt(rate));
    return {t.failed == 0, "500 disjoint + 500 non-disjoint pairs; " + std::to_string(lower_above) +
                               " strictly above, undetermined rate " + fmt(rate) +
                               (t.first.empty() ? "" : "; " + t.first)};
}

struct SeparatingCase {
    LinearMap T;
    double p;
};

std::vector<SeparatingCase> g_separating;

Outcome yeadon_roundtrip() {
    Rng rng(104);
    Tally t;
    double worst = 0;
    const double ps[] = {1.5, 2.0, 3.0};
    for (int i = 0; i < 200; ++i) {
        const AlgebraDescriptor dom = random_algebra(rng, 2, 2);
        std::vector<Block> cb;
        for (int k = rng.integer(2, 3); k > 0; --k) cb.push_back({rng.integer(2, 4), rng.uniform(0.5, 2.0)});
        const double p = ps[i % 3];
        const auto data = examples::random_yeadon(dom, AlgebraDescriptor(cb), rng, false, p);
        const LinearMap T = data.T.with_provenance({});
        ToleranceConfig cfg;
        cfg.seed = std::uint64_t(i);
        const SeparatingResult s = certify_separating(T, cfg);
        t.expect(s.verdict == Verdict::certified, "synthetic map not certified separating");
        if (!s.triple) continue;
        const double r = std::max({distance(s.triple->w, data.w),
                                   distance(s.triple->B, data.B) / data.B.operator_norm(),
                                   (s.triple->J.action() - data.J.action()).norm() / data.J.action().norm()});
        worst = std::max(worst, r);
        t.expect(r <= 1e-8, "recovered triple off by " + fmt(r));
        g_separating.push_back({T, p});
    }
    int witnesses = 0;
    for (int i = 0; i < 100; ++i) {
        const double theta = rng.uniform(0.05, std::numbers::pi / 2 - 0.05);
        const LinearMap R = examples::rotation_mixing(theta).with_provenance({});
        ToleranceConfig cfg;
        cfg.seed = std::uint64_t(1000 + i);
        const SeparatingResult s = certify_separating(R, cfg);
        bool ok = s.verdict == Verdict::falsified && s.witness.has_value();
        if (ok) {
            const auto& [a, b] = *s.witness;
            ok = cross_products_vanish(a, b, 1e-9) && !cross_products_vanish(R(a), R(b), 1e-6);
            witnesses += ok;
        }
        t.expect(ok, "rotation by " + fmt(theta) + " not falsified with a checked witness");
    }
    return {t.failed == 0, "200 synthetic maps, max triple residual " + fmt(worst) + "; " + std::to_string(witnesses) +
                               "/100 rotations falsified with verified witnesses" +
                               (t.first.empty() ? "" : "; " + t.first)};
}

Outcome separating_ratios() {
    Tally t;
    double lowest_reach = 1e300, worst = 0;
    int i = 0;
    for (const auto& c : g_separating) {
        const double norm = separating_norm_oracle(c.T, c.p);
        ToleranceConfig cfg;
        cfg.seed = std::uint64_t(i++);
        RatioReport rep;
        l1_ratio_lower(c.T, c.p, cfg, &rep, ratio_options(50));
        for (const auto& s : rep.samples) {
            worst = std::max(worst, s.ratio / norm - 1);
            t.expect(s.ratio <= norm * (1 + 1e-6), s.family + " ratio " + fmt(s.ratio / norm) + "·‖T‖");
        }
        const double reach = rep.best_of("positive_singleton") / norm;
        lowest_reach = std::min(lowest_reach, reach);
        t.expect(reach >= 0.95, "positive singleton reaches " + fmt(reach) + "·‖T‖");
    }
    t.expect(!g_separating.empty(), "no certified separating maps");
    return {t.failed == 0, std::to_string(g_separating.size()) + " maps × 50 samples; max ratio/‖T‖ − 1 = " +
                               fmt(std::max(worst, 0.0)) + ", min positive-singleton reach " + fmt(lowest_reach) +
                               (t.first.empty() ? "" : "; " + t.first)};
}

Outcome isometry_routes() {
    Rng rng(106);
    Tally t;
    int ytf = 0, no_ytf = 0, undetermined = 0, positive = 0;
    for (int i = 0; i < 50; ++i) {
        LinearMap T;
        bool is_positive_map = true;
        switch (i % 5) {
            case 0: T = examples::unitary_conjugation(haar_unitary(random_algebra(rng, 2, 3), rng)); break;
            case 1: {
                std::vector<Block> b;
                for (int k = rng.integer(1, 2); k > 0; --k) b.push_back({rng.integer(1, 3), 1.0});
                T = examples::block_embedding(AlgebraDescriptor(b));
                break;
            }
            case 2: T = examples::transpose(rng.integer(2, 3)); break;
            case 3: {
                const int n = rng.integer(2, 3);
                const LinearMap J = examples::jordan_direct_sum(n);
                T = LinearMap(J.domain(), AlgebraDescriptor({{n, 0.5}, {n, 0.5}}), J.action());
                break;
            }
            default:
                T = examples::rotation_mixing(rng.uniform(0.1, 1.45));
                is_positive_map = false;
                break;
        }
        ToleranceConfig cfg;
        cfg.seed = std::uint64_t(i);
        const IsometryResult r = classify_l2_isometry(T, cfg);
        t.expect(!r.inconsistency, "routes disagree: " + r.note);
        t.expect(r.verdict != IsometryVerdict::not_isometry, "battery map is not an isometry");
        if (is_positive_map) {
            ++positive;
            t.expect(r.verdict == IsometryVerdict::ytf, "positive isometry classified " + std::string(to_string(r.verdict)));
        }
        ytf += r.verdict == IsometryVerdict::ytf;
        no_ytf += r.verdict == IsometryVerdict::no_ytf;
        undetermined += r.verdict == IsometryVerdict::undetermined;
    }
    return {t.failed == 0, "50 isometries (" + std::to_string(positive) + " positive): ytf " + std::to_string(ytf) +
                               ", no_ytf " + std::to_string(no_ytf) + ", undetermined " + std::to_string(undetermined) +
                               (t.first.empty() ? "" : "; " + t.first)};
}

double choi_min_eigenvalue_oracle(const LinearMap& T) {
    const auto& dom = T.domain();
    double worst = 1e300;
    for (std::size_t k = 0; k < dom.num_blocks(); ++k) {
        const int n = dom.dim(k);
        const auto& cod = T.codomain();
        for (std::size_t c = 0; c < cod.num_blocks(); ++c) {
            const int m = cod.dim(c);
            Matrix choi(n * m, n * m);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    choi.block(i * m, j * m, m, m) = T(Element::matrix_unit(dom, k, i, j)).block(c);
            worst = std::min(worst, oracle::min_eigenvalue(choi) / std::max(1e-300, choi.norm()));
        }
    }
    return worst;
}

Outcome two_positive_maps() {
    Rng rng(107);
    Tally t;
    double worst_ratio = 0, worst_residual = 0;
    for (int i = 0; i < 50; ++i) {
        const double p = std::vector<double>{1.5, 2.0, 3.0}[std::size_t(i % 3)];
        const LinearMap T = examples::random_cp_contraction(rng.integer(2, 3), rng, p).with_provenance({});
        t.expect(choi_min_eigenvalue_oracle(T) >= -1e-12, "Choi matrix not positive");
        const PositivityResult cp = positivity_tests(T, PositivityLevel::completely_positive);
        t.expect(cp.verdict == Verdict::certified && cp.method == "choi", "not Choi-certified");
        ToleranceConfig cfg;
        cfg.seed = std::uint64_t(i);
        RatioReport rep;
        l1_ratio_lower(T, p, cfg, &rep, ratio_options(30));
        worst_ratio = std::max(worst_ratio, rep.best);
        t.expect(rep.best <= 1 + 1e-6, "ratio " + fmt(rep.best));
        std::vector<Element> xs;
        for (int n = 0; n < 3; ++n) xs.push_back(ginibre(T.domain(), rng));
        const NormInterval iv = l1_norm_bounds(ElementSequence(xs), p);
        if (!iv.witness) {
            t.expect(false, "no factorization witness");
            continue;
        }
        const SqrtWitness w = two_positive_sqrt(T, *iv.witness, p);
        worst_residual = std::max(worst_residual, w.residual);
        t.expect(w.residual <= 1e-8, "square-root residual " + fmt(w.residual));
    }
    return {t.failed == 0, "50 CP contractions: max ratio " + fmt(worst_ratio) + ", max square-root residual " +
                               fmt(worst_residual) + (t.first.empty() ? "" : "; " + t.first)};
}

Outcome positive_maps() {
    Rng rng(108);
    Tally t;
    double worst = 0, worst_polar = 0;
    for (int i = 0; i < 50; ++i) {
        const double p = std::vector<double>{1.5, 2.0, 3.0}[std::size_t(i % 3)];
        const int n = rng.integer(2, 3);
        const LinearMap T = i % 5 == 0 ? examples::reduction_map(n, p) : examples::random_positive_map(n, rng, 0.3, p);
        t.expect(T.provenance().positive, "missing positive provenance");
        ToleranceConfig cfg;
        cfg.seed = std::uint64_t(i);
        t.expect(positivity_tests(T.with_provenance({}), PositivityLevel::positive, cfg).verdict != Verdict::falsified,
                 "sampling falsifies positivity");
        const NormInterval op = op_norm(T, p, cfg);
        RatioReport rep;
        l1_ratio_lower(T, p, cfg, &rep, ratio_options(30));
        worst = std::max(worst, rep.best / op.upper);
        t.expect(rep.best <= 4 * op.upper * (1 + 1e-6), "ratio " + fmt(rep.best / op.upper) + "·‖T‖");
        std::vector<Element> xs;
        for (int k = 0; k < 3; ++k) xs.push_back(ginibre(T.domain(), rng));
        const ElementSequence x(xs);
        const NormInterval iv = l1_norm_bounds(x, p);
        if (!iv.witness) {
            t.expect(false, "no factorization witness");
            continue;
        }
        const PolarizationWitness pw = polarization_witness(x, *iv.witness, p);
        worst_polar = std::max(worst_polar, pw.reconstruction_residual);
        t.expect(pw.reconstruction_residual <= 1e-9, "polarization residual " + fmt(pw.reconstruction_residual));
    }
    return {t.failed == 0, "50 positive maps: max ratio/‖T‖ " + fmt(worst) + " (limit 4), max polarization residual " +
                               fmt(worst_polar) + (t.first.empty() ? "" : "; " + t.first)};
}

Outcome transpose_example() {
    Tally t;
    double worst = 0;
    for (double p : {1.5, 2.0, 3.0}) {
        RatioReport rep;
        l1_ratio_lower(examples::transpose(2, p), p, {}, &rep, ratio_options(60));
        l1_ratio_lower(examples::transpose(3, p), p, {}, &rep, ratio_options(60));
        worst = std::max(worst, rep.best);
        t.expect(rep.best <= 1 + 1e-6, "transpose ratio " + fmt(rep.best) + " at p=" + fmt(p));
    }
    double arith = 0;
    for (int n = 1; n <= 64; ++n) {
        Matrix q = Matrix::Zero(64, 64);
        q.topLeftCorner(n, n).setIdentity();
        const Element Q(AlgebraDescriptor::full(64), {q});
        for (double qq : {1.25, 1.5, 2.0, 3.0, 4.0, 6.0}) {
            const double r = std::abs(lp_norm(Q, qq) - std::pow(double(n), 1.0 / qq)) / std::pow(double(n), 1.0 / qq);
            arith = std::max(arith, r);
            t.expect(r <= 1e-12, "‖Q_n‖_q off at n=" + std::to_string(n));
        }
    }
    // n ≤ K n^{1/p} fails once n^{1-1/p} > K
    std::ostringstream demo;
    for (double p : {1.5, 2.0, 3.0})
        for (double K : {1.0, 10.0, 100.0}) {
            long n = 1;
            while (double(n) <= K * std::pow(double(n), 1.0 / p)) ++n;
            demo << " (p=" << p << ",K=" << K << ")→n=" << n;
            t.expect(double(n) > K * std::pow(double(n), 1.0 / p), "demonstration");
        }
    return {t.failed == 0, "max ratio " + fmt(worst) + ", max |‖Q_n‖_q − n^{1/q}| rel " + fmt(arith) +
                               "; n ≤ K n^{1/p} first fails at" + demo.str() + (t.first.empty() ? "" : "; " + t.first)};
}

double regular_norm_oracle(const LinearMap& T) {
    const auto& d = T.domain();
    const auto& c = T.codomain();
    Eigen::VectorXd dm(d.num_blocks()), dn(c.num_blocks());
    for (std::size_t k = 0; k < d.num_blocks(); ++k) dm(Index(k)) = std::sqrt(d.weight(k));
    for (std::size_t k = 0; k < c.num_blocks(); ++k) dn(Index(k)) = std::sqrt(c.weight(k));
    const Eigen::MatrixXd mod = T.action().cwiseAbs();
    return Eigen::JacobiSVD<Eigen::MatrixXd>(dn.asDiagonal() * mod * dm.cwiseInverse().asDiagonal()).singularValues()(0);
}

Outcome commutative_maps() {
    Rng rng(110);
    Tally t;
    double worst = 0, worst_ratio = 0;
    for (int i = 0; i < 100; ++i) {
        const int m = rng.integer(2, 5), k = rng.integer(2, 5);
        std::vector<double> dw, cw;
        for (int j = 0; j < m; ++j) dw.push_back(rng.uniform(0.5, 2.0));
        for (int j = 0; j < k; ++j) cw.push_back(rng.uniform(0.5, 2.0));
        const LinearMap T = examples::commutative_matrix(ginibre_matrix(k, m, rng), dw, cw);
        ToleranceConfig cfg;
        cfg.seed = std::uint64_t(i);
        const L1Certificate c = certify_l1_norm(T, 2.0, cfg, ratio_options(20));
        const double ref = regular_norm_oracle(T);
        const double err = std::abs(c.value.upper - ref) / ref;
        worst = std::max(worst, err);
        worst_ratio = std::max(worst_ratio, c.ratios.best / ref - 1);
        t.expect(c.route == L1Route::commutative_regular, "route " + std::string(to_string(c.route)));
        t.expect(err <= 1e-9, "regular norm off by " + fmt(err));
        t.expect(c.ratios.best <= ref + 1e-6, "ratio above the regular norm");
    }
    return {t.failed == 0, "100 maps: max rel. error vs regular norm " + fmt(worst) + ", max ratio excess " +
                               fmt(std::max(worst_ratio, 0.0)) + (t.first.empty() ? "" : "; " + t.first)};
}

Outcome p_equals_one() {
    Rng rng(111);
    Tally t;
    int short_positive = 0;
    double worst = 0, lowest_reach = 1e300, lowest_positive = 1e300;
    for (int i = 0; i < 100; ++i) {
        const AlgebraDescriptor dom = random_algebra(rng, 2, 3), cod = random_algebra(rng, 2, 3);
        const LinearMap T(dom, cod, ginibre_matrix(int(cod.space_dim()), int(dom.space_dim()), rng), 1.0);
        ToleranceConfig cfg;
        cfg.seed = std::uint64_t(i);
        const L1Certificate c = certify_l1_norm(T, 1.0, cfg, ratio_options(20));
        const double ref = std::max(oracle::norm_one_to_one(T, 6, 5000 + std::uint64_t(i)), c.op.lower);
        const L1Route expected = dom.is_commutative() && cod.is_commutative() ? L1Route::commutative_regular
                                                                               : L1Route::p_equals_one;
        t.expect(c.route == expected, "route " + std::string(to_string(c.route)));
        t.expect(ref <= c.op.upper * (1 + 1e-9), "oracle above the certified operator norm");
        for (const auto& s : c.ratios.samples) {
            worst = std::max(worst, s.ratio / c.op.upper - 1);
            t.expect(s.ratio <= c.op.upper * (1 + 1e-6), "ratio above ‖T‖");
        }
        const double reach = c.ratios.best_of("singleton") / ref;
        lowest_reach = std::min(lowest_reach, reach);
        t.expect(reach >= 0.95, "singleton reaches " + fmt(reach) + "·‖T‖");
        const double positive = c.ratios.best_of("positive_singleton") / ref;
        lowest_positive = std::min(lowest_positive, positive);
        short_positive += positive < 0.95;
    }
    // x ↦ Tr(x E₂₁) E₁₁ on M₂: ‖T‖ = 1 at x = E₁₂, but |x₁₂| ≤ Tr(x)/2 for x ≥ 0
    const AlgebraDescriptor m2 = AlgebraDescriptor::full(2);
    Matrix a = Matrix::Zero(4, 4);
    a(0, 1) = 1;
    const LinearMap S(m2, m2, a, 1.0);
    RatioReport rep;
    l1_ratio_lower(S, 1.0, {}, &rep, ratio_options(40));
    const double s_norm = oracle::norm_one_to_one(S, 6, 77);
    const double s_positive = rep.best_of("positive_singleton");
    t.expect(std::abs(s_norm - 1) <= 1e-9 && s_positive <= 0.5 + 1e-9, "counterexample");
    Outcome o;
    o.pass = t.failed == 0 && short_positive == 0;
    o.known_failure = t.failed == 0 && short_positive > 0;
    o.detail = "100 maps: max ratio/‖T‖ − 1 = " + fmt(std::max(worst, 0.0)) + ", min positive-singleton reach " +
               fmt(lowest_positive) + " (" + std::to_string(short_positive) + " below 0.95), min singleton reach " +
               fmt(lowest_reach) + "; positive inputs cannot exceed ½‖T‖ for x ↦ Tr(xE₂₁)E₁₁ (oracle ‖T‖ = " +
               fmt(s_norm) + ", best positive singleton " + fmt(s_positive) + ")" +
               (t.first.empty() ? "" : "; " + t.first);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"positive sequences: interval contains ‖Σx_n‖_p, gap ≤ 1e-6", positive_sequences},
        {"visited factorizations obey the Hölder bound", visited_factorizations},
        {"ℓ¹₂ norm separates disjoint from non-disjoint pairs at p = 2", dinq_pairs},
        {"synthetic Yeadon maps certified and recovered; rotations falsified", yeadon_roundtrip},
        {"separating maps: ratios ≤ ‖T‖, positive singletons reach 0.95‖T‖", separating_ratios},
        {"L² isometries: routes agree, positive isometries factor", isometry_routes},
        {"CP contractions: ratios ≤ 1, square-root identities hold", two_positive_maps},
        {"positive maps: ratios ≤ 4‖T‖, polarization reconstructs", positive_maps},
        {"transposition: ratios ≤ 1, ‖Q_n‖_q = n^{1/q}", transpose_example},
        {"commutative maps: certified value is the regular norm", commutative_maps},
        {"p = 1: ratios ≤ ‖T‖, positive singletons reach 0.95‖T‖", p_equals_one},
    };
    int failures = 0, known = 0;
    const auto start = Clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        known += o.known_failure;
        std::printf("[%s] criterion %2zu: %s | %s%s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), o.detail.c_str(), o.known_failure ? " [known: unattainable]" : "",
                    seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("acceptance: %zu criteria, %d failed (%d known unattainable), %.1f s total\n", criteria.size(), failures,
                known, seconds_since(start));
    return failures == known ? 0 : 1;
}
