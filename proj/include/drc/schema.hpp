#pragma once

#include "drc/value.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace drc {

struct DomainDef {
    std::string name;
    Kind kind = Kind::String;
};

struct AttributeDef {
    std::string name;
    int domain = -1;
};

struct RelationDef {
    std::string name;
    std::vector<AttributeDef> attrs;
    int arity() const { return static_cast<int>(attrs.size()); }
};

struct ForeignKey {
    int from_rel = -1, from_attr = -1;
    int to_rel = -1, to_attr = -1;
};

// Tuples of `rel` agreeing on `attrs` agree everywhere.
struct KeyDef {
    int rel = -1;
    std::vector<int> attrs;
};

class Schema {
public:
    std::vector<DomainDef> domains;
    std::vector<RelationDef> relations;
    std::vector<ForeignKey> foreign_keys;
    std::vector<KeyDef> keys;

    std::optional<int> find_relation(std::string_view name) const;
    std::optional<int> find_domain(std::string_view name) const;

    // Domain index governing relation `rel` at `pos`; throws SchemaError.
    int domain_index(int rel, int pos) const;
    const DomainDef& domain_of(std::string_view relation, int pos) const;

    // FKs whose referencing side is `rel`.
    std::vector<const ForeignKey*> outgoing(int rel) const;
    std::vector<const KeyDef*> keys_of(int rel) const;

    std::string to_json() const;
};

using SchemaPtr = std::shared_ptr<const Schema>;

SchemaPtr load_schema(std::string_view text);
SchemaPtr load_schema_file(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace drc
