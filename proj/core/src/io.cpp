#include "nclp/io.hpp"

#include <cmath>
#include <limits>

#include "nclp/lp.hpp"

namespace nclp::io {

namespace {

const Json& field(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw ParseError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(path + "." + key, "missing field");
    return *it;
}

double as_double(const Json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "Infinity") return std::numeric_limits<double>::infinity();
    }
    throw ParseError(path, "expected a number");
}

std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path, "expected a string");
    return j.get<std::string>();
}

int as_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
    return j.get<int>();
}

AlgebraDescriptor algebra_from_json(const Json& j, const std::string& path) {
    const Json& blocks = field(j, "blocks", path);
    if (!blocks.is_array()) throw ParseError(path + ".blocks", "expected an array");
    std::vector<Block> bs;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        const std::string bp = path + ".blocks[" + std::to_string(k) + "]";
        Block b;
        b.dim = as_int(field(blocks[k], "dim", bp), bp + ".dim");
        b.weight = blocks[k].contains("weight") ? as_double(blocks[k]["weight"], bp + ".weight") : 1.0;
        bs.push_back(b);
    }
    try {
        return AlgebraDescriptor(std::move(bs));
    } catch (const StructuralError& e) {
        throw ParseError(path, e.what());
    }
}

Json json_exponent(double p) { return std::isinf(p) ? Json("inf") : Json(p); }

}  // namespace

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError(path, "expected an array of rows");
    const Index rows = static_cast<Index>(j.size());
    Index cols = -1;
    Matrix m;
    for (Index i = 0; i < rows; ++i) {
        const std::string rp = path + "[" + std::to_string(i) + "]";
        const Json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array()) throw ParseError(rp, "expected an array");
        if (cols < 0) {
            cols = static_cast<Index>(row.size());
            m.resize(rows, cols);
        } else if (static_cast<Index>(row.size()) != cols) {
            throw ParseError(rp, "ragged matrix row");
        }
        for (Index c = 0; c < cols; ++c) {
            const std::string cp = rp + "[" + std::to_string(c) + "]";
            const Json& z = row[static_cast<std::size_t>(c)];
            if (z.is_number()) {
                m(i, c) = Scalar(z.get<double>(), 0.0);
            } else if (z.is_array() && z.size() == 2) {
                m(i, c) = Scalar(as_double(z[0], cp + "[0]"), as_double(z[1], cp + "[1]"));
            } else {
                throw ParseError(cp, "expected [re, im]");
            }
        }
    }
    if (rows == 0) m.resize(0, 0);
    return m;
}

Json to_json(const AlgebraDescriptor& a) {
    Json blocks = Json::array();
    for (const auto& b : a.blocks()) blocks.push_back({{"dim", b.dim}, {"weight", b.weight}});
    return {{"blocks", blocks}};
}

Json to_json(const Element& x) {
    Json blocks = Json::array();
    for (const auto& b : x.blocks()) blocks.push_back(matrix_to_json(b));
    return {{"blocks", blocks}};
}

Json to_json(const NormInterval& v, bool with_witness) {
    Json j = {{"lower", number(v.lower)}, {"upper", number(v.upper)}, {"certified_exact", v.certified_exact}};
    if (with_witness && v.witness) {
        Json a = Json::array(), b = Json::array();
        for (const auto& e : v.witness->a) a.push_back(to_json(e));
        for (const auto& e : v.witness->b) b.push_back(to_json(e));
        j["witness"] = {{"a", a}, {"b", b}};
    }
    return j;
}

Json to_json(const Provenance& p) {
    return {{"positive", p.positive},
            {"two_positive", p.two_positive},
            {"completely_positive", p.completely_positive},
            {"separating", p.separating}};
}

Json to_json(const YeadonTriple& t) {
    return {{"w", to_json(t.w)},
            {"B", to_json(t.B)},
            {"J", matrix_to_json(t.J.action())},
            {"g", to_json(t.g)},
            {"f", to_json(t.f)},
            {"jordan_certified", t.jordan_certified},
            {"residuals",
             {{"a", number(t.residual_a)},
              {"b", number(t.residual_b)},
              {"c", number(t.residual_c)},
              {"jordan", number(t.jordan_defect)}}}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void InstanceFile::add_algebra(const std::string& name, const AlgebraDescriptor& algebra) {
    auto it = algebras.find(name);
    if (it != algebras.end() && !(it->second == algebra)) {
        throw StructuralError("algebra '" + name + "' already defined differently");
    }
    algebras[name] = algebra;
}

void InstanceFile::add_element(const std::string& name, const std::string& algebra, const Element& x, bool positive) {
    add_algebra(algebra, x.algebra());
    elements[name] = NamedElement{algebra, x, positive};
}

void InstanceFile::add_sequence(const std::string& name, const std::string& algebra, const ElementSequence& seq) {
    NamedSequence ns{algebra, {}};
    for (std::size_t n = 0; n < seq.size(); ++n) {
        const std::string item = name + "_" + std::to_string(n);
        add_element(item, algebra, seq[n], is_positive(seq[n]));
        ns.items.push_back(item);
    }
    sequences[name] = std::move(ns);
}

void InstanceFile::add_map(const std::string& name, const std::string& domain, const std::string& codomain,
                           const LinearMap& map) {
    add_algebra(domain, map.domain());
    add_algebra(codomain, map.codomain());
    maps[name] = NamedMap{domain, codomain, map};
}

ElementSequence InstanceFile::sequence(const std::string& name) const {
    auto it = sequences.find(name);
    if (it == sequences.end()) throw StructuralError("unknown sequence '" + name + "'");
    std::vector<Element> items;
    for (const auto& e : it->second.items) items.push_back(elements.at(e).value);
    return ElementSequence(std::move(items));
}

InstanceFile instance_from_json(const Json& j) {
    InstanceFile inst;
    if (!j.is_object()) throw ParseError("$", "expected an object");
    inst.version = as_string(field(j, "version", "$"), "$.version");
    if (inst.version != kInstanceVersion) throw ParseError("$.version", "unrecognized version '" + inst.version + "'");

    if (j.contains("algebras")) {
        for (const auto& [name, a] : j["algebras"].items())
            inst.algebras[name] = algebra_from_json(a, "$.algebras." + name);
    }
    auto algebra = [&](const std::string& name, const std::string& path) -> const AlgebraDescriptor& {
        auto it = inst.algebras.find(name);
        if (it == inst.algebras.end()) throw ParseError(path, "unknown algebra '" + name + "'");
        return it->second;
    };

    if (j.contains("elements")) {
        for (const auto& [name, e] : j["elements"].items()) {
            const std::string path = "$.elements." + name;
            NamedElement ne;
            ne.algebra = as_string(field(e, "algebra", path), path + ".algebra");
            const AlgebraDescriptor& alg = algebra(ne.algebra, path + ".algebra");
            const Json& blocks = field(e, "blocks", path);
            if (!blocks.is_array()) throw ParseError(path + ".blocks", "expected an array");
            std::vector<Matrix> ms;
            for (std::size_t k = 0; k < blocks.size(); ++k)
                ms.push_back(matrix_from_json(blocks[k], path + ".blocks[" + std::to_string(k) + "]"));
            try {
                ne.value = Element(alg, std::move(ms));
            } catch (const StructuralError& err) {
                throw ParseError(path + ".blocks", err.what());
            }
            if (e.contains("positive")) {
                if (!e["positive"].is_boolean()) throw ParseError(path + ".positive", "expected a boolean");
                ne.positive = e["positive"].get<bool>();
                if (ne.positive && !is_positive(ne.value)) {
                    throw ParseError(path, "declared positive but is not a positive (Hermitian, nonnegative) element");
                }
            }
            inst.elements[name] = std::move(ne);
        }
    }

    if (j.contains("sequences")) {
        for (const auto& [name, s] : j["sequences"].items()) {
            const std::string path = "$.sequences." + name;
            NamedSequence ns;
            ns.algebra = as_string(field(s, "algebra", path), path + ".algebra");
            algebra(ns.algebra, path + ".algebra");
            const Json& items = field(s, "items", path);
            if (!items.is_array() || items.empty()) throw ParseError(path + ".items", "expected a nonempty array");
            for (std::size_t n = 0; n < items.size(); ++n) {
                const std::string ip = path + ".items[" + std::to_string(n) + "]";
                const std::string ref = as_string(items[n], ip);
                auto it = inst.elements.find(ref);
                if (it == inst.elements.end()) throw ParseError(ip, "unknown element '" + ref + "'");
                if (it->second.algebra != ns.algebra) throw ParseError(ip, "element lives in another algebra");
                ns.items.push_back(ref);
            }
            inst.sequences[name] = std::move(ns);
        }
    }

    if (j.contains("maps")) {
        for (const auto& [name, m] : j["maps"].items()) {
            const std::string path = "$.maps." + name;
            NamedMap nm;
            nm.domain = as_string(field(m, "domain", path), path + ".domain");
            nm.codomain = as_string(field(m, "codomain", path), path + ".codomain");
            const AlgebraDescriptor& dom = algebra(nm.domain, path + ".domain");
            const AlgebraDescriptor& cod = algebra(nm.codomain, path + ".codomain");
            const double p = m.contains("p") ? as_double(m["p"], path + ".p") : 2.0;
            Matrix action = matrix_from_json(field(m, "action", path), path + ".action");
            Provenance prov;
            if (m.contains("provenance")) {
                const Json& pj = m["provenance"];
                const std::string pp = path + ".provenance";
                for (const auto& [key, val] : pj.items()) {
                    if (!val.is_boolean()) throw ParseError(pp + "." + key, "expected a boolean");
                    const bool b = val.get<bool>();
                    if (key == "positive") prov.positive = b;
                    else if (key == "two_positive") prov.two_positive = b;
                    else if (key == "completely_positive") prov.completely_positive = b;
                    else if (key == "separating") prov.separating = b;
                    else throw ParseError(pp + "." + key, "unknown provenance flag");
                }
            }
            try {
                nm.map = LinearMap(dom, cod, std::move(action), p, prov);
            } catch (const std::exception& err) {
                throw ParseError(path, err.what());
            }
            inst.maps[name] = std::move(nm);
        }
    }

    if (j.contains("tolerances")) {
        for (const auto& [key, val] : j["tolerances"].items()) {
            const std::string path = "$.tolerances." + key;
            if (key != "algebraic_tol" && key != "opt_tol" && key != "rank_cutoff" && key != "restarts" &&
                key != "sample_budget") {
                throw ParseError(path, "unknown tolerance");
            }
            inst.tolerances[key] = as_double(val, path);
        }
        try {
            apply_overrides({}, inst).validate();
        } catch (const StructuralError& err) {
            throw ParseError("$.tolerances", err.what());
        }
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
            throw ParseError("$.seed", "expected a nonnegative integer");
        }
        inst.seed = j["seed"].get<std::uint64_t>();
    }
    return inst;
}

InstanceFile parse_instance(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("$", std::string("invalid JSON: ") + e.what());
    }
    return instance_from_json(j);
}

Json instance_to_json(const InstanceFile& inst) {
    Json j;
    j["version"] = inst.version;
    if (!inst.algebras.empty()) {
        Json a = Json::object();
        for (const auto& [name, alg] : inst.algebras) a[name] = to_json(alg);
        j["algebras"] = a;
    }
    if (!inst.elements.empty()) {
        Json e = Json::object();
        for (const auto& [name, ne] : inst.elements) {
            Json x = to_json(ne.value);
            x["algebra"] = ne.algebra;
            if (ne.positive) x["positive"] = true;
            e[name] = x;
        }
        j["elements"] = e;
    }
    if (!inst.sequences.empty()) {
        Json s = Json::object();
        for (const auto& [name, ns] : inst.sequences) s[name] = {{"algebra", ns.algebra}, {"items", ns.items}};
        j["sequences"] = s;
    }
    if (!inst.maps.empty()) {
        Json m = Json::object();
        for (const auto& [name, nm] : inst.maps) {
            m[name] = {{"domain", nm.domain},
                       {"codomain", nm.codomain},
                       {"p", json_exponent(nm.map.exponent())},
                       {"action", matrix_to_json(nm.map.action())},
                       {"provenance", to_json(nm.map.provenance())}};
        }
        j["maps"] = m;
    }
    if (!inst.tolerances.empty()) {
        Json t = Json::object();
        for (const auto& [k, v] : inst.tolerances) {
            if (k == "restarts" || k == "sample_budget")
                t[k] = static_cast<int>(v);
            else
                t[k] = v;
        }
        j["tolerances"] = t;
    }
    if (inst.seed) j["seed"] = *inst.seed;
    return j;
}

std::string serialize_instance(const InstanceFile& inst) { return dump(instance_to_json(inst)); }

ToleranceConfig apply_overrides(ToleranceConfig cfg, const InstanceFile& inst) {
    for (const auto& [k, v] : inst.tolerances) {
        if (k == "algebraic_tol") cfg.algebraic_tol = v;
        else if (k == "opt_tol") cfg.opt_tol = v;
        else if (k == "rank_cutoff") cfg.rank_cutoff = v;
        else if (k == "restarts") cfg.restarts = static_cast<int>(v);
        else if (k == "sample_budget") cfg.sample_budget = static_cast<int>(v);
    }
    if (inst.seed) cfg.seed = *inst.seed;
    return cfg;
}

}  // namespace nclp::io
