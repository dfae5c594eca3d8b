#include "drc/schema.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace drc {

using nlohmann::json;

std::optional<int> Schema::find_relation(std::string_view name) const {
    for (std::size_t i = 0; i < relations.size(); ++i)
        if (relations[i].name == name) return static_cast<int>(i);
    return std::nullopt;
}

std::optional<int> Schema::find_domain(std::string_view name) const {
    for (std::size_t i = 0; i < domains.size(); ++i)
        if (domains[i].name == name) return static_cast<int>(i);
    return std::nullopt;
}

int Schema::domain_index(int rel, int pos) const {
    if (rel < 0 || rel >= static_cast<int>(relations.size()))
        throw SchemaError("unknown relation index " + std::to_string(rel));
    const auto& r = relations[rel];
    if (pos < 0 || pos >= r.arity())
        throw SchemaError("position " + std::to_string(pos) + " out of range for " + r.name + "/" +
                          std::to_string(r.arity()));
    return r.attrs[pos].domain;
}

const DomainDef& Schema::domain_of(std::string_view relation, int pos) const {
    auto rel = find_relation(relation);
    if (!rel) throw SchemaError("unknown relation '" + std::string(relation) + "'");
    return domains[domain_index(*rel, pos)];
}

std::vector<const ForeignKey*> Schema::outgoing(int rel) const {
    std::vector<const ForeignKey*> out;
    for (const auto& fk : foreign_keys)
        if (fk.from_rel == rel) out.push_back(&fk);
    return out;
}

std::vector<const KeyDef*> Schema::keys_of(int rel) const {
    std::vector<const KeyDef*> out;
    for (const auto& k : keys)
        if (k.rel == rel) out.push_back(&k);
    return out;
}

std::string Schema::to_json() const {
    json doc;
    doc["domains"] = json::array();
    for (const auto& d : domains) doc["domains"].push_back({{"name", d.name}, {"kind", kind_name(d.kind)}});
    doc["relations"] = json::array();
    for (const auto& r : relations) {
        json attrs = json::array();
        for (const auto& a : r.attrs) attrs.push_back({{"name", a.name}, {"domain", domains[a.domain].name}});
        doc["relations"].push_back({{"name", r.name}, {"attrs", attrs}});
    }
    doc["foreign_keys"] = json::array();
    for (const auto& fk : foreign_keys) {
        const auto& f = relations[fk.from_rel];
        const auto& t = relations[fk.to_rel];
        doc["foreign_keys"].push_back({{"from_rel", f.name},
                                       {"from_attr", f.attrs[fk.from_attr].name},
                                       {"to_rel", t.name},
                                       {"to_attr", t.attrs[fk.to_attr].name}});
    }
    if (!keys.empty()) {
        doc["keys"] = json::array();
        for (const auto& k : keys) {
            const auto& r = relations[k.rel];
            json attrs = json::array();
            for (int a : k.attrs) attrs.push_back(r.attrs[a].name);
            doc["keys"].push_back({{"relation", r.name}, {"attrs", attrs}});
        }
    }
    return doc.dump(2);
}

namespace {

std::string str_field(const json& obj, const char* key, const char* what) {
    if (!obj.is_object() || !obj.contains(key) || !obj[key].is_string())
        throw SchemaError(std::string(what) + " entry lacks string field '" + key + "'");
    return obj[key].get<std::string>();
}

int attr_index(const RelationDef& r, const std::string& name) {
    for (int i = 0; i < r.arity(); ++i)
        if (r.attrs[i].name == name) return i;
    return -1;
}

void check_acyclic(const Schema& s) {
    std::size_t n = s.relations.size();
    std::vector<std::set<int>> adj(n);
    for (const auto& fk : s.foreign_keys) adj[fk.from_rel].insert(fk.to_rel);
    std::vector<int> state(n, 0);
    std::function<void(int)> visit = [&](int u) {
        state[u] = 1;
        for (int v : adj[u]) {
            if (state[v] == 1)
                throw SchemaError("cyclic foreign-key graph through '" + s.relations[v].name + "'");
            if (state[v] == 0) visit(v);
        }
        state[u] = 2;
    };
    for (std::size_t i = 0; i < n; ++i)
        if (state[i] == 0) visit(static_cast<int>(i));
}

}  // namespace

SchemaPtr load_schema(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("schema document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("schema document must be an object");
    auto s = std::make_shared<Schema>();

    auto list = [&](const char* key) {
        if (!doc.contains(key)) return json::array();
        if (!doc[key].is_array()) throw SchemaError(std::string("'") + key + "' must be a list");
        return doc[key];
    };

    for (const auto& d : list("domains")) {
        DomainDef def{str_field(d, "name", "domain"), parse_kind(str_field(d, "kind", "domain"))};
        if (s->find_domain(def.name)) throw SchemaError("duplicate domain '" + def.name + "'");
        s->domains.push_back(def);
    }
    for (const auto& r : list("relations")) {
        RelationDef rel{str_field(r, "name", "relation"), {}};
        if (s->find_relation(rel.name)) throw SchemaError("duplicate relation '" + rel.name + "'");
        if (!r.contains("attrs") || !r["attrs"].is_array())
            throw SchemaError("relation '" + rel.name + "' lacks an attrs list");
        for (const auto& a : r["attrs"]) {
            std::string an = str_field(a, "name", "attribute");
            std::string dn = str_field(a, "domain", "attribute");
            if (attr_index(rel, an) >= 0)
                throw SchemaError("duplicate attribute '" + an + "' in relation '" + rel.name + "'");
            auto dom = s->find_domain(dn);
            if (!dom) throw SchemaError("attribute '" + rel.name + "." + an + "' uses unknown domain '" + dn + "'");
            rel.attrs.push_back({an, *dom});
        }
        if (rel.attrs.empty()) throw SchemaError("relation '" + rel.name + "' has arity 0");
        s->relations.push_back(std::move(rel));
    }
    for (const auto& f : list("foreign_keys")) {
        std::string fr = str_field(f, "from_rel", "foreign key"), fa = str_field(f, "from_attr", "foreign key");
        std::string tr = str_field(f, "to_rel", "foreign key"), ta = str_field(f, "to_attr", "foreign key");
        std::string label = fr + "." + fa + " -> " + tr + "." + ta;
        auto from = s->find_relation(fr);
        auto to = s->find_relation(tr);
        if (!from || !to) throw SchemaError("dangling foreign key " + label);
        int fai = attr_index(s->relations[*from], fa);
        int tai = attr_index(s->relations[*to], ta);
        if (fai < 0 || tai < 0) throw SchemaError("dangling foreign key " + label);
        if (s->relations[*from].attrs[fai].domain != s->relations[*to].attrs[tai].domain)
            throw SchemaError("foreign key " + label + " joins different domains");
        s->foreign_keys.push_back({*from, fai, *to, tai});
    }
    for (const auto& k : list("keys")) {
        std::string rn = str_field(k, "relation", "key");
        auto rel = s->find_relation(rn);
        if (!rel) throw SchemaError("key on unknown relation '" + rn + "'");
        if (!k.contains("attrs") || !k["attrs"].is_array() || k["attrs"].empty())
            throw SchemaError("key on '" + rn + "' lacks an attrs list");
        KeyDef def{*rel, {}};
        for (const auto& a : k["attrs"]) {
            int ai = a.is_string() ? attr_index(s->relations[*rel], a.get<std::string>()) : -1;
            if (ai < 0) throw SchemaError("key on '" + rn + "' names an unknown attribute");
            def.attrs.push_back(ai);
        }
        s->keys.push_back(std::move(def));
    }
    check_acyclic(*s);
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SchemaPtr load_schema_file(const std::string& path) { return load_schema(read_file(path)); }

}  // namespace drc
