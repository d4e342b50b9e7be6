#include "nclp_cli/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "nclp/certify.hpp"
#include "nclp/errors.hpp"
#include "nclp/examples.hpp"
#include "nclp/generate.hpp"
#include "nclp/io.hpp"
#include "nclp/lp.hpp"
#include "nclp/suite.hpp"
#include "nclp/yeadon.hpp"

namespace nclp::cli {

namespace {

using io::Json;

struct Options {
    std::optional<double> p;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<int> restarts;
    std::optional<int> budget;
    std::string out;
    std::string input;
    // command specific
    std::string elem, seq, map, a = "a", b = "b";
    std::string kind = "positive-seq";
    int n = 3;
    int dim = 2;
    double theta = 0.7853981633974483;
    double lambda = 0.5;
    double scale = 1.0;
    std::vector<std::string> only;
    bool timing = false;
    bool witness = false;
};

struct Result {
    Json doc;
    int code = kComputed;
};

std::optional<std::uint64_t> env_seed() {
    const char* s = std::getenv("NCLP_SEED");
    if (s == nullptr || *s == '\0') return std::nullopt;
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (s[pos] != '\0') throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw StructuralError(std::string("NCLP_SEED is not an unsigned integer: ") + s);
    }
}

// Precedence: flag, instance file, NCLP_SEED, built-in default.
ToleranceConfig tolerances(const Options& o, const io::InstanceFile* inst) {
    ToleranceConfig cfg;
    if (auto s = env_seed()) cfg.seed = *s;
    if (inst != nullptr) cfg = io::apply_overrides(cfg, *inst);
    if (o.tol) cfg.algebraic_tol = *o.tol;
    if (o.seed) cfg.seed = *o.seed;
    if (o.restarts) cfg.restarts = *o.restarts;
    if (o.budget) cfg.sample_budget = *o.budget;
    cfg.validate();
    return cfg;
}

io::InstanceFile read_instance(const Options& o, std::istream& in) {
    std::stringstream buf;
    if (o.input.empty() || o.input == "-") {
        buf << in.rdbuf();
    } else {
        std::ifstream f(o.input);
        if (!f) throw StructuralError("cannot open '" + o.input + "'");
        buf << f.rdbuf();
    }
    return io::parse_instance(buf.str());
}

template <class MapT>
const typename MapT::mapped_type& pick(const MapT& m, const std::string& name, const char* what) {
    if (!name.empty()) {
        auto it = m.find(name);
        if (it == m.end()) throw StructuralError(std::string("no ") + what + " named '" + name + "'");
        return it->second;
    }
    if (m.size() != 1) {
        throw StructuralError(std::string("instance has ") + std::to_string(m.size()) + " " + what +
                              "s; select one by name");
    }
    return m.begin()->second;
}

const Element& element(const io::InstanceFile& inst, const std::string& name) {
    auto it = inst.elements.find(name);
    if (it == inst.elements.end()) throw StructuralError("no element named '" + name + "'");
    return it->second.value;
}

double exponent(const Options& o, double fallback) {
    const double p = o.p.value_or(fallback);
    if (!(p >= 1.0)) throw DomainError("--p must be at least 1");
    return p;
}

Json verdict_doc(const std::string& command, const std::string& verdict) {
    return {{"command", command}, {"verdict", verdict}};
}

Json pair_json(const std::pair<Element, Element>& w) {
    return {{"a", io::to_json(w.first)}, {"b", io::to_json(w.second)}};
}

Result cmd_norm(const Options& o, std::istream& in) {
    const auto inst = read_instance(o, in);
    const Element& x = pick(inst.elements, o.elem, "element").value;
    const double p = exponent(o, 2.0);
    Result r;
    r.doc = {{"command", "norm"}, {"p", io::number(p)}, {"value", io::number(lp_norm(x, p))}};
    r.doc["evidence"] = {{"operator_norm", x.operator_norm()}, {"trace_of_unit", x.algebra().trace_of_unit()}};
    return r;
}

Result cmd_seqnorm(const Options& o, std::istream& in) {
    const auto inst = read_instance(o, in);
    const ToleranceConfig cfg = tolerances(o, &inst);
    std::string name = o.seq;
    if (name.empty()) {
        if (inst.sequences.size() != 1) throw StructuralError("instance must hold exactly one sequence or use --seq");
        name = inst.sequences.begin()->first;
    }
    const ElementSequence x = inst.sequence(name);
    const double p = exponent(o, 2.0);
    const NormInterval iv = l1_norm_bounds(x, p, cfg);
    Result r;
    r.doc = {{"command", "seqnorm"},
             {"p", io::number(p)},
             {"interval", io::to_json(iv, o.witness)},
             {"certified_exact", iv.certified_exact},
             {"value", iv.certified_exact ? io::number(iv.upper) : Json(nullptr)}};
    Json ev = {{"length", x.size()},
               {"sum_norm", io::number(lp_norm(x.sum(), p))},
               {"column_norm", io::number(column_row_norm(x, p, Side::column))},
               {"row_norm", io::number(column_row_norm(x, p, Side::row))}};
    if (iv.witness) ev["witness_residual"] = iv.witness->residual(x);
    r.doc["evidence"] = ev;
    return r;
}

Result cmd_disjoint(const Options& o, std::istream& in) {
    const auto inst = read_instance(o, in);
    const ToleranceConfig cfg = tolerances(o, &inst);
    const Element& a = element(inst, o.a);
    const Element& b = element(inst, o.b);
    const bool d = disjoint(a, b, cfg.algebraic_tol);
    Result r;
    r.doc = verdict_doc("disjoint", d ? "disjoint" : "not_disjoint");
    r.doc["evidence"] = {{"a_star_b", (a.adjoint() * b).operator_norm()},
                         {"a_b_star", (a * b.adjoint()).operator_norm()},
                         {"tolerance", cfg.algebraic_tol}};
    r.code = d ? kComputed : kNegative;
    return r;
}

Result cmd_dinq(const Options& o, std::istream& in) {
    const auto inst = read_instance(o, in);
    const ToleranceConfig cfg = tolerances(o, &inst);
    const DinqResult d = dinq_disjoint_test(element(inst, o.a), element(inst, o.b), cfg);
    Result r;
    r.doc = verdict_doc("dinq", to_string(d.verdict));
    r.doc["interval"] = io::to_json(d.interval);
    r.doc["evidence"] = {{"threshold", io::number(d.threshold)}, {"algebraic_disjoint", d.algebraic}};
    r.code = d.verdict == DinqVerdict::disjoint ? kComputed
             : d.verdict == DinqVerdict::not_disjoint ? kNegative
                                                      : kUndetermined;
    return r;
}

Result cmd_yeadon(const Options& o, std::istream& in) {
    const auto inst = read_instance(o, in);
    const ToleranceConfig cfg = tolerances(o, &inst);
    const LinearMap& T = pick(inst.maps, o.map, "map").map;
    const ExtractionResult ex = extract_yeadon(T, cfg);
    Result r;
    r.doc = verdict_doc("yeadon", ex.ok() ? "extracted" : "no_factorization");
    if (ex.ok()) r.doc["value"] = io::to_json(*ex.triple);
    r.doc["evidence"] = {{"failure", ex.failure}, {"residual", io::number(ex.residual)}};
    r.code = ex.ok() ? kComputed : kNegative;
    return r;
}

Result cmd_separating(const Options& o, std::istream& in) {
    const auto inst = read_instance(o, in);
    const ToleranceConfig cfg = tolerances(o, &inst);
    const LinearMap& T = pick(inst.maps, o.map, "map").map;
    const SeparatingResult s = certify_separating(T, cfg);
    Result r;
    r.doc = verdict_doc("separating", to_string(s.verdict));
    Json ev = {{"pairs_tried", s.pairs_tried}, {"extraction_failure", s.extraction_failure}};
    if (s.triple) ev["triple"] = io::to_json(*s.triple);
    if (s.witness) ev["witness"] = pair_json(*s.witness);
    r.doc["evidence"] = ev;
    r.code = s.verdict == Verdict::certified ? kComputed
             : s.verdict == Verdict::falsified ? kNegative
                                               : kUndetermined;
    return r;
}

Result cmd_certify(const Options& o, std::istream& in) {
    const auto inst = read_instance(o, in);
    const ToleranceConfig cfg = tolerances(o, &inst);
    const LinearMap& T = pick(inst.maps, o.map, "map").map;
    const double p = exponent(o, T.exponent());
    const L1Certificate c = certify_l1_norm(T, p, cfg);
    Result r;
    r.doc = {{"command", "certify"},
             {"p", io::number(p)},
             {"route", to_string(c.route)},
             {"interval", io::to_json(c.value)}};
    Json ev = {{"op_norm", io::to_json(c.op)},
               {"best_ratio", io::number(c.ratios.best)},
               {"samples", c.ratios.samples.size()},
               {"inconsistency", c.inconsistency}};
    if (!c.note.empty()) ev["note"] = c.note;
    if (c.positivity) {
        ev["positivity"] = {{"verdict", to_string(c.positivity->verdict)}, {"method", c.positivity->method}};
    }
    if (c.triple) ev["triple"] = io::to_json(*c.triple);
    if (c.regular) ev["regular_norm"] = io::to_json(*c.regular);
    r.doc["evidence"] = ev;
    r.code = c.inconsistency ? kNegative : c.route == L1Route::sampled_only ? kUndetermined : kComputed;
    return r;
}

Result cmd_classify(const Options& o, std::istream& in) {
    const auto inst = read_instance(o, in);
    const ToleranceConfig cfg = tolerances(o, &inst);
    const LinearMap& T = pick(inst.maps, o.map, "map").map;
    const IsometryResult c = classify_l2_isometry(T, cfg);
    Result r;
    r.doc = verdict_doc("classify-l2", to_string(c.verdict));
    Json ev = {{"isometry_defect", io::number(c.isometry_defect)},
               {"route_i", c.route_i},
               {"extraction_failure", c.extraction_failure},
               {"route_ii_pairs", c.route_ii_pairs},
               {"route_ii_undetermined", c.route_ii_undetermined},
               {"positive", c.positive},
               {"inconsistency", c.inconsistency}};
    if (!c.note.empty()) ev["note"] = c.note;
    if (c.witness) ev["witness"] = pair_json(*c.witness);
    if (c.triple) ev["triple"] = io::to_json(*c.triple);
    r.doc["evidence"] = ev;
    r.code = c.verdict == IsometryVerdict::ytf ? kComputed
             : c.verdict == IsometryVerdict::undetermined ? kUndetermined
                                                          : kNegative;
    if (c.inconsistency) r.code = kUndetermined;
    return r;
}

Result cmd_gen(const Options& o) {
    generate::InstanceParams params;
    params.kind = o.kind;
    params.n = o.n;
    params.dim = o.dim;
    params.seed = tolerances(o, nullptr).seed;
    Result r;
    r.doc = io::instance_to_json(generate::random_instance(params));
    return r;
}

Result cmd_example(const Options& o) {
    examples::ExampleParams params;
    params.n = o.n;
    params.theta = o.theta;
    params.lambda = o.lambda;
    params.p = exponent(o, 2.0);
    params.seed = tolerances(o, nullptr).seed;
    const LinearMap T = examples::make_example(o.kind, params);
    io::InstanceFile inst;
    const bool same = T.domain() == T.codomain();
    inst.add_map("T", "M", same ? "M" : "N", T);
    Result r;
    r.doc = io::instance_to_json(inst);
    return r;
}

Result cmd_suite(const Options& o) {
    SuiteConfig sc;
    sc.tolerances = tolerances(o, nullptr);
    sc.seed = sc.tolerances.seed;
    sc.budget_scale = o.scale;
    for (const auto& s : o.only) {
        std::stringstream ss(s);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (!part.empty()) sc.only.push_back(part);
        }
    }
    const SuiteReport rep = run_suite(sc);
    Result r;
    r.doc = suite_report_json(rep, o.timing);
    r.doc["command"] = "suite";
    r.code = rep.pass() ? kComputed : kNegative;
    return r;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--p", o.p, "exponent p (1 ≤ p ≤ inf)");
    sub->add_option("--tol", o.tol, "algebraic tolerance");
    sub->add_option("--seed", o.seed, "random seed (default: NCLP_SEED or 0)");
    sub->add_option("--restarts", o.restarts, "optimizer restarts");
    sub->add_option("--budget", o.budget, "sample budget");
    sub->add_option("--out", o.out, "write the result to a file");
}

void add_input(CLI::App* sub, Options& o) { sub->add_option("input", o.input, "instance file (default: stdin)"); }

}  // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Norms of sequences and l1-bounded maps on finite-dimensional noncommutative Lp spaces", "nclp"};
    app.require_subcommand(1, 1);

    auto* norm = app.add_subcommand("norm", "‖x‖_p of an element");
    norm->add_option("--elem", o.elem, "element name");
    auto* seqnorm = app.add_subcommand("seqnorm", "bounds on the L^p(ℓ¹) norm of a sequence");
    seqnorm->add_option("--seq", o.seq, "sequence name");
    seqnorm->add_flag("--witness", o.witness, "include the optimal factorization");
    auto* disj = app.add_subcommand("disjoint", "algebraic disjointness of two elements");
    auto* dinq = app.add_subcommand("dinq", "disjointness from the ℓ¹₂ norm at p = 2");
    for (auto* s : {disj, dinq}) {
        s->add_option("--a", o.a, "first element");
        s->add_option("--b", o.b, "second element");
    }
    auto* yeadon = app.add_subcommand("yeadon", "extract a Yeadon triple");
    auto* separating = app.add_subcommand("separating", "certify or falsify separation");
    auto* certify = app.add_subcommand("certify", "certify the ℓ¹-bounded norm of a map");
    auto* classify = app.add_subcommand("classify-l2", "classify an L² isometry");
    for (auto* s : {yeadon, separating, certify, classify}) s->add_option("--map", o.map, "map name");
    for (auto* s : {norm, seqnorm, disj, dinq, yeadon, separating, certify, classify}) add_input(s, o);

    auto* gen = app.add_subcommand("gen", "random instance");
    gen->add_option("--kind", o.kind, "instance kind")->check(CLI::IsMember(generate::instance_kinds()));
    gen->add_option("--n", o.n, "sequence length");
    gen->add_option("--dim", o.dim, "block dimension");
    auto* example = app.add_subcommand("example", "named example map");
    example->add_option("kind", o.kind, "example kind")->required()->check(CLI::IsMember(examples::example_kinds()));
    example->add_option("--n", o.n, "matrix size");
    example->add_option("--theta", o.theta, "rotation angle");
    example->add_option("--lambda", o.lambda, "depolarizing parameter");
    auto* suite = app.add_subcommand("suite", "run the property suite");
    suite->add_option("--only", o.only, "property ids, groups or modules (comma separated)");
    suite->add_option("--scale", o.scale, "instance budget multiplier");
    suite->add_flag("--timing", o.timing, "include wall times");

    for (auto* s : {norm, seqnorm, disj, dinq, yeadon, separating, certify, classify, gen, example, suite})
        add_common(s, o);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kComputed;
    } catch (const CLI::ParseError& e) {
        err << "nclp: " << e.what() << "\n";
        return kInputError;
    }

    Result r;
    try {
        if (*norm) r = cmd_norm(o, in);
        else if (*seqnorm) r = cmd_seqnorm(o, in);
        else if (*disj) r = cmd_disjoint(o, in);
        else if (*dinq) r = cmd_dinq(o, in);
        else if (*yeadon) r = cmd_yeadon(o, in);
        else if (*separating) r = cmd_separating(o, in);
        else if (*certify) r = cmd_certify(o, in);
        else if (*classify) r = cmd_classify(o, in);
        else if (*gen) r = cmd_gen(o);
        else if (*example) r = cmd_example(o);
        else r = cmd_suite(o);
    } catch (const io::ParseError& e) {
        err << "nclp: input error at " << e.what() << "\n";
        return kInputError;
    } catch (const NumericError& e) {
        r.doc = {{"verdict", "undetermined"}, {"evidence", {{"error", e.what()}}}};
        r.code = kUndetermined;
    } catch (const std::exception& e) {
        err << "nclp: " << e.what() << "\n";
        return kInputError;
    }

    const std::string text = io::dump(r.doc);
    if (o.out.empty()) {
        out << text;
    } else {
        std::ofstream f(o.out);
        if (!f) {
            err << "nclp: cannot write '" << o.out << "'\n";
            return kInputError;
        }
        f << text;
    }
    return r.code;
}

}  // namespace nclp::cli
