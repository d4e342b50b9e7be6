#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nclp/algebra.hpp"
#include "nclp/errors.hpp"
#include "nclp/linear_map.hpp"
#include "nclp/sequence.hpp"
#include "nclp/yeadon.hpp"

namespace nclp::io {

using Json = nlohmann::json;

inline constexpr const char* kInstanceVersion = "nclp-instance/1";

/// Schema or validation failure; `path` locates the offending value.
class ParseError : public StructuralError {
public:
    ParseError(std::string path, const std::string& message)
        : StructuralError(path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct NamedElement {
    std::string algebra;
    Element value;
    bool positive = false;
};

struct NamedSequence {
    std::string algebra;
    std::vector<std::string> items;
};

struct NamedMap {
    std::string domain;
    std::string codomain;
    LinearMap map;
};

struct InstanceFile {
    std::string version = kInstanceVersion;
    std::map<std::string, AlgebraDescriptor> algebras;
    std::map<std::string, NamedElement> elements;
    std::map<std::string, NamedSequence> sequences;
    std::map<std::string, NamedMap> maps;
    std::map<std::string, double> tolerances;  // ToleranceConfig field overrides
    std::optional<std::uint64_t> seed;

    /// Registers an algebra, reusing an equal one under the same name.
    void add_algebra(const std::string& name, const AlgebraDescriptor& algebra);
    void add_element(const std::string& name, const std::string& algebra, const Element& x, bool positive = false);
    void add_sequence(const std::string& name, const std::string& algebra, const ElementSequence& seq);
    void add_map(const std::string& name, const std::string& domain, const std::string& codomain,
                 const LinearMap& map);

    ElementSequence sequence(const std::string& name) const;
};

InstanceFile parse_instance(const std::string& text);
InstanceFile instance_from_json(const Json& j);
Json instance_to_json(const InstanceFile& inst);
/// Canonical text: sorted keys, two-space indent, shortest round-trip doubles.
std::string serialize_instance(const InstanceFile& inst);

/// Applies tolerance overrides and the seed of an instance.
ToleranceConfig apply_overrides(ToleranceConfig cfg, const InstanceFile& inst);

Json number(double v);  // non-finite values become null
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& path);
Json to_json(const AlgebraDescriptor& a);
Json to_json(const Element& x);
Json to_json(const NormInterval& v, bool with_witness = false);
Json to_json(const YeadonTriple& t);
Json to_json(const Provenance& p);

std::string dump(const Json& j);

}  // namespace nclp::io
