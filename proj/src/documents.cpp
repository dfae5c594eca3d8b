#include "drc/render.hpp"

#include <json.hpp>

namespace drc {

using nlohmann::ordered_json;

namespace {

ordered_json constant_json(const Constant& c) {
    if (!c.numeric()) return c.str;
    if (c.num.denominator() == 1) return c.num.numerator();
    std::string s = format_rational(c.num);
    if (s.find('/') != std::string::npos) return ordered_json{{"rational", s}};
    return ordered_json::parse(s);
}

ordered_json value_json(const CInstance& i, const Value& v) {
    if (v.is_null()) return ordered_json{{"null", i.null_name(v.null())}};
    return constant_json(v.constant());
}

Constant constant_from(const ordered_json& j, Kind kind, const std::string& where) {
    if (kind == Kind::String) {
        if (!j.is_string()) throw Error(where + ": expected a string");
        return Constant::string(j.get<std::string>());
    }
    Rational r;
    if (j.is_number())
        r = parse_decimal(j.dump());
    else if (j.is_string())
        r = parse_decimal(j.get<std::string>());
    else if (j.is_object() && j.contains("rational")) {
        std::string s = j["rational"].get<std::string>();
        auto slash = s.find('/');
        if (slash == std::string::npos) throw Error(where + ": malformed rational '" + s + "'");
        r = Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } else
        throw Error(where + ": expected a number");
    if (kind == Kind::Integer && r.denominator() != 1) throw Error(where + ": expected an integer");
    return Constant::number(r, kind);
}

ordered_json parse_doc(std::string_view text, const char* what) {
    try {
        return ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw Error(std::string(what) + " is not valid JSON: " + e.what());
    }
}

}  // namespace

std::string render_structured(const CInstance& i, const Coverage& coverage, const Query* q, const SyntaxTree* t) {
    const Schema& s = *i.schema;
    ordered_json doc;
    ordered_json tables = ordered_json::object();
    for (std::size_t r = 0; r < s.relations.size(); ++r) {
        ordered_json rows = ordered_json::array();
        for (const auto& tup : i.tables[r]) {
            ordered_json row = ordered_json::array();
            for (const auto& v : tup.cells) row.push_back(value_json(i, v));
            rows.push_back(row);
        }
        tables[s.relations[r].name] = rows;
    }
    doc["tables"] = tables;
    ordered_json cond = ordered_json::array(), atoms = ordered_json::array();
    for (const auto& c : i.conditions) {
        cond.push_back(i.condition_text(c));
        if (c.is_fact) {
            ordered_json args = ordered_json::array();
            for (const auto& v : c.args) args.push_back(value_json(i, v));
            atoms.push_back({{"not_fact", s.relations[c.rel].name}, {"args", args}});
        } else {
            atoms.push_back({{"op", std::string(op_text(c.op))},
                             {"lhs", value_json(i, c.lhs)},
                             {"rhs", value_json(i, c.rhs)},
                             {"negated", c.negated}});
        }
    }
    doc["condition"] = cond;
    doc["condition_atoms"] = atoms;
    doc["size"] = i.size();
    doc["coverage"] = ordered_json(std::vector<int>(coverage.begin(), coverage.end()));
    ordered_json legend = ordered_json::object();
    if (q && t)
        for (int k = 0; k < t->leaf_count(); ++k) legend[std::to_string(k)] = atom_text(*q, t->leaves[k]);
    doc["leaf_legend"] = legend;
    return doc.dump(2);
}

CInstance load_structured_instance(SchemaPtr schema, std::string_view text) {
    ordered_json doc = parse_doc(text, "instance document");
    const Schema& s = *schema;
    CInstance i = new_instance(schema);
    std::map<std::string, Null> nulls;
    auto value = [&](const ordered_json& j, int domain, const std::string& where) -> Value {
        if (j.is_object() && j.contains("null")) {
            std::string name = j["null"].get<std::string>();
            auto it = nulls.find(name);
            if (it != nulls.end()) {
                if (it->second.domain != domain) throw Error(where + ": null '" + name + "' used in two domains");
                return Value(it->second);
            }
            auto hash = name.rfind('#');
            if (hash == std::string::npos) throw Error(where + ": malformed null name '" + name + "'");
            Null n{domain, std::stoi(name.substr(hash + 1))};
            i.counters[domain] = std::max(i.counters[domain], n.index);
            nulls[name] = n;
            return Value(n);
        }
        return Value(constant_from(j, s.domains[domain].kind, where));
    };
    if (!doc.contains("tables") || !doc["tables"].is_object()) throw Error("instance document lacks 'tables'");
    // Tables are filled exactly as listed; foreign-key closure is already present.
    for (auto& [name, rows] : doc["tables"].items()) {
        auto rel = s.find_relation(name);
        if (!rel) throw Error("instance document: unknown relation '" + name + "'");
        const auto& def = s.relations[*rel];
        for (const auto& row : rows) {
            if (!row.is_array() || static_cast<int>(row.size()) != def.arity())
                throw Error("instance document: row of '" + name + "' has the wrong arity");
            std::vector<Value> cells;
            for (int a = 0; a < def.arity(); ++a) cells.push_back(value(row[a], def.attrs[a].domain, name));
            i.insert_tuple(*rel, std::move(cells), true);
        }
    }
    if (doc.contains("condition_atoms"))
        for (const auto& a : doc["condition_atoms"]) {
            if (a.contains("not_fact")) {
                auto rel = s.find_relation(a["not_fact"].get<std::string>());
                if (!rel) throw Error("instance document: unknown relation in negated fact");
                const auto& def = s.relations[*rel];
                std::vector<Value> args;
                for (int k = 0; k < def.arity(); ++k) args.push_back(value(a["args"][k], def.attrs[k].domain, def.name));
                i.add_condition(Condition::negated_fact(*rel, std::move(args)));
                continue;
            }
            std::string op = a["op"].get<std::string>();
            CmpOp cmp = CmpOp::Eq;
            bool found = false;
            for (CmpOp o : {CmpOp::Eq, CmpOp::Ne, CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge, CmpOp::Like})
                if (op_text(o) == op) {
                    cmp = o;
                    found = true;
                }
            if (!found) throw Error("instance document: unknown operator '" + op + "'");
            // Operand domains follow the null side; constants take that domain's kind.
            int domain = -1;
            for (const char* side : {"lhs", "rhs"})
                if (a[side].is_object() && a[side].contains("null")) {
                    auto it = nulls.find(a[side]["null"].get<std::string>());
                    if (it != nulls.end()) domain = it->second.domain;
                }
            if (domain < 0) throw Error("instance document: condition '" + op + "' has no known null operand");
            Value l = value(a["lhs"], domain, "condition");
            Value r = cmp == CmpOp::Like ? Value(Constant::string(a["rhs"].get<std::string>())) : value(a["rhs"], domain, "condition");
            i.add_condition(Condition::compare(l, cmp, r, a.value("negated", false)));
        }
    if (doc.contains("coverage"))
        for (const auto& id : doc["coverage"]) i.tracked.insert(id.get<int>());
    return i;
}

GroundInstance load_ground_instance(SchemaPtr schema, std::string_view text) {
    ordered_json doc = parse_doc(text, "ground instance document");
    if (!doc.is_object() || !doc.contains("tables") || !doc["tables"].is_object())
        throw Error("ground instance document lacks a 'tables' object");
    const Schema& s = *schema;
    GroundInstance k = GroundInstance::empty(schema);
    for (auto& [name, rows] : doc["tables"].items()) {
        auto rel = s.find_relation(name);
        if (!rel) throw Error("ground instance: unknown relation '" + name + "'");
        const auto& def = s.relations[*rel];
        if (!rows.is_array()) throw Error("ground instance: '" + name + "' must be a list of rows");
        for (const auto& row : rows) {
            if (!row.is_array() || static_cast<int>(row.size()) != def.arity())
                throw Error("ground instance: row of '" + name + "' has the wrong arity");
            std::vector<Constant> t;
            for (int a = 0; a < def.arity(); ++a)
                t.push_back(constant_from(row[a], s.domains[def.attrs[a].domain].kind, name + "." + def.attrs[a].name));
            k.tables[*rel].insert(std::move(t));
        }
    }
    return k;
}

}  // namespace drc
