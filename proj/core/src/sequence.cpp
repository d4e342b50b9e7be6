#include "nclp/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "nclp/errors.hpp"
#include "nclp/lp.hpp"
#include "nclp/random.hpp"

namespace nclp {

ElementSequence::ElementSequence(std::vector<Element> items) : items_(std::move(items)) {
    if (items_.empty()) throw StructuralError("sequence must have at least one element");
    for (std::size_t n = 1; n < items_.size(); ++n) {
        if (!(items_[n].algebra() == items_[0].algebra())) {
            throw StructuralError("sequence item " + std::to_string(n) + " lives in a different algebra");
        }
    }
}

Element ElementSequence::sum() const {
    Element s = items_.front();
    for (std::size_t n = 1; n < items_.size(); ++n) s += items_[n];
    return s;
}

double Factorization::cost(double p) const {
    Element X = a.front() * a.front().adjoint();
    Element Y = b.front().adjoint() * b.front();
    for (std::size_t n = 1; n < a.size(); ++n) {
        X += a[n] * a[n].adjoint();
        Y += b[n].adjoint() * b[n];
    }
    return std::sqrt(lp_norm(X, p) * lp_norm(Y, p));
}

double Factorization::residual(const ElementSequence& x) const {
    double r = 0;
    for (std::size_t n = 0; n < x.size(); ++n) r = std::max(r, distance(a[n] * b[n], x[n]));
    return r;
}

double column_row_norm(const ElementSequence& seq, double p, Side side) {
    if (!(p >= 1)) throw DomainError("column_row_norm: exponent must be >= 1");
    Element s = Element::zero(seq.algebra());
    for (const auto& x : seq.items()) s += side == Side::column ? x.adjoint() * x : x * x.adjoint();
    return std::sqrt(detail::lp_quasi_norm(s, p / 2.0));
}

double l1_norm_positive(const ElementSequence& seq, double p, const ToleranceConfig& cfg) {
    for (std::size_t n = 0; n < seq.size(); ++n) {
        if (!is_positive(seq[n], cfg.algebraic_tol)) {
            throw DomainError("l1_norm_positive: item " + std::to_string(n) + " is not positive");
        }
    }
    return lp_norm(seq.sum(), p);
}

namespace {

struct Eig {
    Eigen::VectorXd val;
    Matrix vec;
};

Eig eig(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((h + h.adjoint()) * 0.5);
    if (es.info() != Eigen::Success) throw NumericError("eigendecomposition failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

template <class F>
Matrix apply(const Eig& e, F f) {
    Eigen::VectorXd v(e.val.size());
    for (Index i = 0; i < v.size(); ++i) v(i) = f(e.val(i));
    return e.vec * v.cast<Scalar>().asDiagonal() * e.vec.adjoint();
}

// Q_n > 0 on its support; a_n = Q_n^{1/2}, b_n = Q_n^{+1/2} x_n.
using State = std::vector<std::vector<Matrix>>;  // [n][k]

class L1Problem {
public:
    L1Problem(const ElementSequence& seq, double p, const ToleranceConfig& cfg)
        : seq_(seq), alg_(seq.algebra()), p_(p), q_(std::isinf(p) ? 32.0 : p), cfg_(cfg) {
        scale_ = 0;
        for (const auto& x : seq.items()) scale_ = std::max(scale_, x.operator_norm());
    }

    struct Eval {
        bool ok = false;
        double phi = std::numeric_limits<double>::infinity();
        std::vector<std::vector<Matrix>> half, invhalf;  // Q^{1/2}, Q^{+1/2}
        std::vector<Matrix> X, Y;
    };

    Eval evaluate(const State& Q) const {
        Eval ev;
        const std::size_t N = Q.size(), K = alg_.num_blocks();
        ev.half.assign(N, std::vector<Matrix>(K));
        ev.invhalf.assign(N, std::vector<Matrix>(K));
        ev.X.assign(K, Matrix());
        ev.Y.assign(K, Matrix());
        for (std::size_t k = 0; k < K; ++k) {
            ev.X[k] = Matrix::Zero(alg_.dim(k), alg_.dim(k));
            ev.Y[k] = ev.X[k];
        }
        for (std::size_t n = 0; n < N; ++n) {
            std::vector<Eig> es;
            double top = 0;
            for (std::size_t k = 0; k < K; ++k) {
                es.push_back(eig(Q[n][k]));
                if (es.back().val.size()) top = std::max(top, es.back().val.maxCoeff());
            }
            const double cut = cfg_.rank_cutoff * top;
            for (std::size_t k = 0; k < K; ++k) {
                ev.half[n][k] = apply(es[k], [&](double t) { return t > cut ? std::sqrt(t) : 0.0; });
                ev.invhalf[n][k] = apply(es[k], [&](double t) { return t > cut ? 1.0 / std::sqrt(t) : 0.0; });
                const Matrix b = ev.invhalf[n][k] * seq_[n].block(k);
                // the factorisation must reproduce x_n exactly
                const double miss = (ev.half[n][k] * b - seq_[n].block(k)).cwiseAbs().maxCoeff();
                if (miss > 1e3 * cfg_.algebraic_tol * std::max(scale_, 1e-300)) return ev;
                ev.X[k] += ev.half[n][k] * ev.half[n][k];
                ev.Y[k] += b.adjoint() * b;
            }
        }
        ev.phi = log_trace_power(ev.X) + log_trace_power(ev.Y);
        ev.ok = std::isfinite(ev.phi);
        return ev;
    }

    /// Riemannian gradient Δ_n = Q^{1/2} G_n Q^{1/2} per block.
    State direction(const State& Q, const Eval& ev, double& sq) const {
        (void)Q;
        const std::size_t N = ev.half.size(), K = alg_.num_blocks();
        std::vector<Matrix> gx(K), gy(K);
        const double sx = trace_power(ev.X), sy = trace_power(ev.Y);
        for (std::size_t k = 0; k < K; ++k) {
            gx[k] = power_normalized(ev.X[k], sx, ev.X);
            gy[k] = power_normalized(ev.Y[k], sy, ev.Y);
        }
        State d(N, std::vector<Matrix>(K));
        sq = 0;
        for (std::size_t n = 0; n < N; ++n) {
            for (std::size_t k = 0; k < K; ++k) {
                const Matrix& h = ev.half[n][k];
                const Matrix qx = ev.invhalf[n][k] * ev.invhalf[n][k] * seq_[n].block(k);
                const Matrix G = alg_.weight(k) * (gx[k] - qx * gy[k] * qx.adjoint());
                Matrix D = h * G * h;
                D = (D + D.adjoint()).eval() * 0.5;
                sq += D.squaredNorm();
                d[n][k] = std::move(D);
            }
        }
        return d;
    }

    State step(const Eval& ev, const State& D, double eta) const {
        State out(D.size(), std::vector<Matrix>(D.front().size()));
        for (std::size_t n = 0; n < D.size(); ++n) {
            for (std::size_t k = 0; k < D[n].size(); ++k) {
                const Eig e = eig(-eta * D[n][k]);
                const Matrix ex = apply(e, [](double t) { return std::exp(t); });
                Matrix q = ev.half[n][k] * ex * ev.half[n][k];
                out[n][k] = (q + q.adjoint()) * 0.5;
            }
        }
        return out;
    }

    Factorization factorization(const Eval& ev) const {
        Factorization f;
        for (std::size_t n = 0; n < seq_.size(); ++n) {
            Element a = Element::zero(alg_), b = Element::zero(alg_);
            for (std::size_t k = 0; k < alg_.num_blocks(); ++k) {
                a.block(k) = ev.half[n][k];
                b.block(k) = ev.invhalf[n][k] * seq_[n].block(k);
            }
            f.a.push_back(std::move(a));
            f.b.push_back(std::move(b));
        }
        return f;
    }

    /// Exact value at exponent p of the factorisation encoded by ev.
    double value(const Eval& ev) const {
        Element X(alg_, ev.X), Y(alg_, ev.Y);
        return std::sqrt(lp_norm(X, p_) * lp_norm(Y, p_));
    }

private:
    // log τ(X^q)^{1/q}, scaled to avoid overflow
    double log_trace_power(const std::vector<Matrix>& X) const {
        double top = 0;
        std::vector<Eigen::VectorXd> vals;
        for (const auto& m : X) {
            vals.push_back(eig(m).val.cwiseMax(0.0));
            if (vals.back().size()) top = std::max(top, vals.back().maxCoeff());
        }
        if (top <= 0) return -std::numeric_limits<double>::infinity();
        double s = 0;
        for (std::size_t k = 0; k < vals.size(); ++k)
            s += alg_.weight(k) * (vals[k] / top).array().pow(q_).sum();
        return std::log(top) + std::log(s) / q_;
    }

    // τ(X^q) / top^q with top the largest eigenvalue over blocks; returns top too
    double trace_power(const std::vector<Matrix>& X) const {
        double top = 0;
        for (const auto& m : X) {
            const auto v = eig(m).val;
            if (v.size()) top = std::max(top, v.maxCoeff());
        }
        return top;
    }

    // X^{q-1} / τ(X^q), computed from eigenvalues relative to `top`
    Matrix power_normalized(const Matrix& Xk, double top, const std::vector<Matrix>& X) const {
        double s = 0;
        for (std::size_t k = 0; k < X.size(); ++k)
            s += alg_.weight(k) * (eig(X[k]).val.cwiseMax(0.0) / top).array().pow(q_).sum();
        const Eig e = eig(Xk);
        const double qm1 = q_ - 1.0;
        return apply(e, [&](double t) {
                   const double r = std::max(t, 0.0) / top;
                   return qm1 == 0 ? 1.0 : std::pow(r, qm1);
               }) /
               (top * s);
    }

    const ElementSequence& seq_;
    AlgebraDescriptor alg_;
    double p_;
    double q_;
    ToleranceConfig cfg_;
    double scale_;
};

struct RunResult {
    bool ok = false;
    double value = std::numeric_limits<double>::infinity();
    State Q;
};

RunResult descend(const L1Problem& prob, State Q, const L1Options& opts, const ElementSequence& seq,
                  double p) {
    RunResult best;
    auto ev = prob.evaluate(Q);
    if (!ev.ok) {
        if (opts.trace) ++opts.trace->rejected;
        return best;
    }
    auto record = [&](const L1Problem::Eval& e) {
        if (!opts.trace) return;
        const Factorization f = prob.factorization(e);
        Element prod = f.a.front() * f.b.front();
        for (std::size_t n = 1; n < f.a.size(); ++n) prod += f.a[n] * f.b[n];
        opts.trace->visits.push_back({lp_norm(prod, p), f.cost(p), f.residual(seq)});
    };
    record(ev);
    best = {true, prob.value(ev), Q};
    double eta = 1.0;
    for (int it = 0; it < opts.max_iterations; ++it) {
        if (opts.trace) ++opts.trace->iterations;
        double sq = 0;
        const State D = prob.direction(Q, ev, sq);
        if (sq < 1e-24) break;
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls) {
            State cand = prob.step(ev, D, eta);
            auto ce = prob.evaluate(cand);
            if (ce.ok && ce.phi <= ev.phi - 1e-4 * eta * sq) {
                const double gain = ev.phi - ce.phi;
                Q = std::move(cand);
                ev = std::move(ce);
                record(ev);
                const double v = prob.value(ev);
                if (v < best.value) best = {true, v, Q};
                eta = std::min(eta * 2.0, 1e6);
                moved = gain > 1e-15;
                break;
            }
            if (opts.trace && !ce.ok) ++opts.trace->rejected;
            eta *= 0.5;
        }
        if (!moved) break;
    }
    return best;
}

double sign_search(const ElementSequence& seq, double p) {
    const std::size_t N = seq.size();
    if (N == 1) return lp_norm(seq[0], p);
    constexpr int kGrid = 16;
    std::vector<Scalar> phases(kGrid);
    for (int g = 0; g < kGrid; ++g) phases[g] = std::polar(1.0, 2.0 * std::numbers::pi * g / kGrid);

    std::function<double(const std::vector<Scalar>&)> eval;
    Eigen::MatrixXcd gram;
    if (p == 2) {
        gram.resize(N, N);
        for (std::size_t n = 0; n < N; ++n)
            for (std::size_t m = 0; m < N; ++m) gram(n, m) = duality_pair(seq[n].adjoint(), seq[m]);
        eval = [&](const std::vector<Scalar>& eps) {
            Eigen::VectorXcd e = Eigen::Map<const Eigen::VectorXcd>(eps.data(), N);
            return std::sqrt(std::max(0.0, (e.adjoint() * gram * e)(0, 0).real()));
        };
    } else {
        eval = [&](const std::vector<Scalar>& eps) {
            Element s = seq[0] * eps[0];
            for (std::size_t n = 1; n < N; ++n) s += seq[n] * eps[n];
            return lp_norm(s, p);
        };
    }

    std::vector<Scalar> eps(N, Scalar(1.0));
    double best = eval(eps);
    if (N <= 4) {
        std::vector<int> idx(N, 0);
        while (true) {
            std::size_t c = 1;
            while (c < N && ++idx[c] == kGrid) idx[c++] = 0;
            if (c == N) break;
            for (std::size_t n = 1; n < N; ++n) eps[n] = phases[idx[n]];
            best = std::max(best, eval(eps));
        }
        return best;
    }
    for (int sweep = 0; sweep < 6; ++sweep) {
        bool improved = false;
        for (std::size_t n = 1; n < N; ++n) {
            const Scalar keep = eps[n];
            Scalar arg = keep;
            for (const auto& ph : phases) {
                eps[n] = ph;
                const double v = eval(eps);
                if (v > best * (1 + 1e-14)) {
                    best = v;
                    arg = ph;
                    improved = true;
                }
            }
            eps[n] = arg;
        }
        if (!improved) break;
    }
    return best;
}

// Quantitative converse of the p = 2 disjointness criterion.
double cross_term_bound(const ElementSequence& seq) {
    double s = 0, cross = 0;
    for (std::size_t n = 0; n < seq.size(); ++n) {
        const double v = lp_norm(seq[n], 2);
        s += v * v;
        for (std::size_t m = n + 1; m < seq.size(); ++m) {
            const double l = lp_norm(seq[n].adjoint() * seq[m], 1);
            const double r = lp_norm(seq[n] * seq[m].adjoint(), 1);
            cross += l * l + r * r;
        }
    }
    return std::pow(s * s + 4.0 * cross, 0.25);
}

bool all_positive(const ElementSequence& seq, double tol) {
    return std::all_of(seq.items().begin(), seq.items().end(),
                       [&](const Element& x) { return is_positive(x, tol); });
}

}  // namespace

double l1_lower_bound(const ElementSequence& seq, double p) {
    if (!(p >= 1)) throw DomainError("l1 norm: exponent must be >= 1");
    double lower = 0;
    for (const auto& x : seq.items()) lower = std::max(lower, lp_norm(x, p));
    lower = std::max(lower, sign_search(seq, p));
    if (p == 2 && seq.size() > 1) lower = std::max(lower, cross_term_bound(seq));
    return lower;
}

NormInterval l1_norm_bounds(const ElementSequence& seq, double p, const ToleranceConfig& cfg,
                            const L1Options& opts) {
    if (!(p >= 1)) throw DomainError("l1 norm: exponent must be >= 1");
    cfg.validate();
    NormInterval out;
    const AlgebraDescriptor& alg = seq.algebra();

    if (all_positive(seq, cfg.algebraic_tol)) {
        const double v = lp_norm(seq.sum(), p);
        out.lower = out.upper = v;
        out.certified_exact = true;
        Factorization f;
        for (const auto& x : seq.items()) {
            f.a.push_back(sqrt_positive(x, cfg));
            f.b.push_back(f.a.back());
        }
        out.witness = std::move(f);
        if (opts.trace) opts.trace->polar_upper = v;
        return out;
    }

    out.lower = l1_lower_bound(seq, p);

    bool all_zero = true;
    for (const auto& x : seq.items()) all_zero = all_zero && x.operator_norm() == 0;
    if (all_zero) {
        out.lower = out.upper = 0;
        out.certified_exact = true;
        return out;
    }

    L1Problem prob(seq, p, cfg);
    const std::size_t N = seq.size(), K = alg.num_blocks();

    // stage 0: Q_n = |x_n*|
    State polar(N, std::vector<Matrix>(K));
    for (std::size_t n = 0; n < N; ++n) {
        const Element r = abs(seq[n].adjoint());
        for (std::size_t k = 0; k < K; ++k) polar[n][k] = r.block(k);
    }
    RunResult best;
    bool done = false;
    {
        const auto ev0 = prob.evaluate(polar);
        if (ev0.ok) {
            const double v0 = prob.value(ev0);
            if (opts.trace) opts.trace->polar_upper = v0;
            // the polar factorization already meets the lower bound
            if (v0 - out.lower <= cfg.opt_tol * v0 && !opts.trace) {
                best = {true, v0, polar};
                done = true;
            }
        }
    }
    if (!done) best = descend(prob, polar, opts, seq, p);

    // stage 1: enlarge supports
    if (best.ok && !done) {
        State aug = best.Q;
        for (std::size_t n = 0; n < N; ++n) {
            double top = 0;
            for (std::size_t k = 0; k < K; ++k) top = std::max(top, eig(aug[n][k]).val.maxCoeff());
            for (std::size_t k = 0; k < K; ++k) {
                const Eig e = eig(aug[n][k]);
                aug[n][k] += apply(e, [&](double t) { return t > cfg.rank_cutoff * top ? 0.0 : 0.1 * top; });
            }
        }
        RunResult r = descend(prob, aug, opts, seq, p);
        if (r.ok && r.value < best.value) best = std::move(r);
    }

    // further stages: random full-rank starts
    if (opts.random_restarts && !done) {
        for (int r = 0; r < cfg.restarts; ++r) {
            Rng rng(derive_seed(cfg.seed, 1000 + static_cast<std::uint64_t>(r)));
            State Q(N, std::vector<Matrix>(K));
            for (std::size_t n = 0; n < N; ++n) {
                const Element w = wishart(alg, rng);
                for (std::size_t k = 0; k < K; ++k) Q[n][k] = w.block(k);
            }
            RunResult rr = descend(prob, Q, opts, seq, p);
            if (rr.ok && rr.value < best.value) best = std::move(rr);
        }
    }

    if (!best.ok) {
        // cannot happen for the polar start unless x_n is numerically degenerate
        out.upper = std::numeric_limits<double>::infinity();
        return out;
    }

    auto ev = prob.evaluate(best.Q);
    Factorization f = prob.factorization(ev);
    Element X = Element::zero(alg), Y = Element::zero(alg);
    for (std::size_t n = 0; n < N; ++n) {
        X += f.a[n] * f.a[n].adjoint();
        Y += f.b[n].adjoint() * f.b[n];
    }
    const double nx = lp_norm(X, p), ny = lp_norm(Y, p);
    if (nx > 0 && ny > 0) {
        const double t = std::pow(ny / nx, 0.25);
        for (std::size_t n = 0; n < N; ++n) {
            f.a[n] *= Scalar(t);
            f.b[n] *= Scalar(1.0 / t);
        }
    }
    out.upper = std::sqrt(nx * ny);
    // clamp round-off
    if (out.lower > out.upper && out.lower - out.upper <= 1e-12 * out.upper) out.lower = out.upper;
    out.certified_exact = out.upper - out.lower <= cfg.opt_tol * out.upper;
    out.witness = std::move(f);
    return out;
}

NormInterval l12_norm(const Element& a, const Element& b, double p, const ToleranceConfig& cfg,
                      const L1Options& opts) {
    return l1_norm_bounds(ElementSequence({a, b}), p, cfg, opts);
}

DinqResult dinq_disjoint_test(const Element& a, const Element& b, const ToleranceConfig& cfg,
                              const L1Options& opts) {
    DinqResult r;
    const double na = lp_norm(a, 2), nb = lp_norm(b, 2);
    r.threshold = std::sqrt(na * na + nb * nb);
    r.algebraic = disjoint(a, b, cfg.algebraic_tol);
    r.interval = l12_norm(a, b, 2.0, cfg, opts);
    const double edge = r.threshold * (1 + cfg.opt_tol);
    if (r.interval.upper <= edge)
        r.verdict = DinqVerdict::disjoint;
    else if (r.interval.lower > edge)
        r.verdict = DinqVerdict::not_disjoint;
    else
        r.verdict = DinqVerdict::undetermined;
    return r;
}

const char* to_string(DinqVerdict v) {
    switch (v) {
        case DinqVerdict::disjoint: return "disjoint";
        case DinqVerdict::not_disjoint: return "not_disjoint";
        default: return "undetermined";
    }
}

}  // namespace nclp
