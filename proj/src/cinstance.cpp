#include "drc/cinstance.hpp"

#include <algorithm>

namespace drc {

Condition Condition::compare(Value l, CmpOp op, Value r, bool negated_like) {
    Condition c;
    if (op == CmpOp::Gt || op == CmpOp::Ge) {
        std::swap(l, r);
        op = mirror(op);
    }
    if ((op == CmpOp::Eq || op == CmpOp::Ne) && r < l) std::swap(l, r);
    c.op = op;
    c.lhs = std::move(l);
    c.rhs = std::move(r);
    c.negated = op == CmpOp::Like && negated_like;
    return c;
}

Condition Condition::negated_fact(int rel, std::vector<Value> args) {
    Condition c;
    c.is_fact = true;
    c.rel = rel;
    c.args = std::move(args);
    return c;
}

CInstance CInstance::empty(SchemaPtr schema) {
    CInstance i;
    i.tables.resize(schema->relations.size());
    i.counters.assign(schema->domains.size(), 0);
    i.members.resize(schema->domains.size());
    i.schema = std::move(schema);
    return i;
}

CInstance new_instance(SchemaPtr schema) { return CInstance::empty(std::move(schema)); }

Null CInstance::fresh_null(int domain) { return Null{domain, ++counters.at(domain)}; }

bool CInstance::has_tuple(int rel, const std::vector<Value>& cells) const {
    for (const auto& t : tables[rel])
        if (t.cells == cells) return true;
    return false;
}

bool CInstance::is_member(int domain, const Value& v) const {
    const auto& m = members[domain];
    return std::find(m.begin(), m.end(), v) != m.end();
}

void CInstance::note_member(int domain, const Value& v) {
    if (!is_member(domain, v)) members[domain].push_back(v);
}

void CInstance::anchor(int rel, int attr, const Value& key) {
    for (const auto& t : tables[rel])
        if (t.cells[attr] == key) return;
    const auto& r = schema->relations[rel];
    std::vector<Value> cells;
    for (int a = 0; a < r.arity(); ++a) cells.push_back(a == attr ? key : Value(fresh_null(r.attrs[a].domain)));
    insert_tuple(rel, std::move(cells), false);
}

void CInstance::insert_tuple(int rel, std::vector<Value> cells, bool core) {
    for (auto& t : tables[rel])
        if (t.cells == cells) {
            t.core = t.core || core;
            return;
        }
    const auto& r = schema->relations[rel];
    for (int a = 0; a < r.arity(); ++a) note_member(r.attrs[a].domain, cells[a]);
    tables[rel].push_back({cells, core});
    for (const ForeignKey* fk : schema->outgoing(rel)) anchor(fk->to_rel, fk->to_attr, cells[fk->from_attr]);
}

bool CInstance::has_condition(const Condition& c) const {
    return std::find(conditions.begin(), conditions.end(), c) != conditions.end();
}

void CInstance::add_condition(Condition c) {
    if (has_condition(c)) return;
    conditions.push_back(c);
    if (c.is_fact)
        for (const ForeignKey* fk : schema->outgoing(c.rel)) anchor(fk->to_rel, fk->to_attr, c.args[fk->from_attr]);
}

int CInstance::tuple_count() const {
    int n = 0;
    for (const auto& t : tables) n += static_cast<int>(t.size());
    return n;
}

int CInstance::search_size() const {
    int n = static_cast<int>(conditions.size());
    for (const auto& tab : tables)
        for (const auto& t : tab) n += t.core ? 1 : 0;
    return n;
}

int instance_size(const CInstance& i) { return i.size(); }

std::string CInstance::null_name(const Null& n) const {
    return schema->domains[n.domain].name + "#" + std::to_string(n.index);
}

std::string CInstance::value_text(const Value& v) const {
    return v.is_null() ? null_name(v.null()) : v.constant().literal();
}

std::string CInstance::condition_text(const Condition& c) const {
    if (c.is_fact) {
        std::string s = "¬" + schema->relations[c.rel].name + "(";
        for (std::size_t k = 0; k < c.args.size(); ++k) s += (k ? ", " : "") + value_text(c.args[k]);
        return s + ")";
    }
    std::string op = c.op == CmpOp::Ne ? "≠" : c.op == CmpOp::Le ? "≤" : std::string(op_text(c.op));
    std::string body = value_text(c.lhs) + " " + op + " " + value_text(c.rhs);
    return c.negated ? "¬(" + body + ")" : body;
}

std::vector<Null> CInstance::nulls() const {
    std::set<Null> s;
    auto add = [&](const Value& v) {
        if (v.is_null()) s.insert(v.null());
    };
    for (const auto& tab : tables)
        for (const auto& t : tab)
            for (const auto& v : t.cells) add(v);
    for (const auto& c : conditions) {
        if (c.is_fact)
            for (const auto& v : c.args) add(v);
        else {
            add(c.lhs);
            add(c.rhs);
        }
    }
    return {s.begin(), s.end()};
}

Value image(const Term& t, const Homomorphism& h) {
    if (!t.is_var()) return Value(t.c);
    if (t.var >= static_cast<int>(h.size()) || !h[t.var])
        throw Error("add_to_ins: variable #" + std::to_string(t.var) + " is not mapped");
    return *h[t.var];
}

Condition condition_of(const Atom& a, const Homomorphism& h) {
    if (a.relational) {
        std::vector<Value> args;
        for (const auto& t : a.args) args.push_back(image(t, h));
        return Condition::negated_fact(a.rel, std::move(args));
    }
    return Condition::compare(image(a.lhs, h), a.op, image(a.rhs, h), a.negated);
}

CInstance add_to_ins(const CInstance& i, const Conjunction& conj, const Homomorphism& h) {
    CInstance j = i;
    for (const auto& lit : conj) {
        const Atom& a = lit.atom;
        if (a.relational && !a.negated) {
            std::vector<Value> cells;
            for (const auto& t : a.args) cells.push_back(image(t, h));
            j.insert_tuple(a.rel, std::move(cells), true);
        } else {
            j.add_condition(condition_of(a, h));
        }
        if (!lit.flipped) j.tracked.insert(lit.leaf_id);
    }
    return j;
}

CInstance merge_instances(const CInstance& a, const CInstance& b) {
    if (a.schema != b.schema) throw Error("merge_instances: instances over different schemas");
    CInstance m = a;
    for (std::size_t d = 0; d < m.counters.size(); ++d) m.counters[d] = std::max(a.counters[d], b.counters[d]);
    for (std::size_t r = 0; r < b.tables.size(); ++r)
        for (const auto& t : b.tables[r]) m.insert_tuple(static_cast<int>(r), t.cells, t.core);
    for (const auto& c : b.conditions) m.add_condition(c);
    m.tracked.insert(b.tracked.begin(), b.tracked.end());
    return m;
}

GroundInstance GroundInstance::empty(SchemaPtr schema) {
    GroundInstance k;
    k.tables.resize(schema->relations.size());
    k.schema = std::move(schema);
    return k;
}

std::vector<std::vector<Constant>> GroundInstance::active_domain() const {
    std::vector<std::set<Constant>> sets(schema->domains.size());
    for (std::size_t r = 0; r < tables.size(); ++r) {
        const auto& rel = schema->relations[r];
        for (const auto& t : tables[r])
            for (int a = 0; a < rel.arity(); ++a) sets[rel.attrs[a].domain].insert(t[a]);
    }
    std::vector<std::vector<Constant>> out;
    for (auto& s : sets) out.emplace_back(s.begin(), s.end());
    return out;
}

std::string GroundInstance::to_text() const {
    std::string out;
    for (std::size_t r = 0; r < tables.size(); ++r)
        for (const auto& t : tables[r]) {
            out += schema->relations[r].name + "(";
            for (std::size_t k = 0; k < t.size(); ++k) out += (k ? ", " : "") + t[k].literal();
            out += ")\n";
        }
    return out;
}

}  // namespace drc
