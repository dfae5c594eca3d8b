#include "support/random.hpp"

#include <algorithm>
#include <map>

namespace drc::testing {

SchemaPtr tiny_schema() {
    static SchemaPtr s = load_schema(R"({
        "domains": [{"name": "s", "kind": "string"}, {"name": "r", "kind": "rational"},
                    {"name": "n", "kind": "integer"}],
        "relations": [{"name": "S", "attrs": [{"name": "k", "domain": "s"}, {"name": "v", "domain": "r"}]},
                      {"name": "T", "attrs": [{"name": "k", "domain": "s"}, {"name": "c", "domain": "n"}]},
                      {"name": "U", "attrs": [{"name": "k", "domain": "s"}]}]
    })");
    return s;
}

namespace {

int pick(std::mt19937& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
bool coin(std::mt19937& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

Constant random_constant(Kind k, std::mt19937& rng) {
    if (k == Kind::String) {
        static const char* words[] = {"a", "ab", "abc", "b", "ba"};
        return Constant::string(words[pick(rng, 5)]);
    }
    if (k == Kind::Integer) return Constant::number(pick(rng, 5) - 1, Kind::Integer);
    return Constant::number(Rational(pick(rng, 9) - 2, 2));
}

}  // namespace

CInstance random_instance(const SchemaPtr& schema, std::mt19937& rng, int max_nulls) {
    const Schema& s = *schema;
    CInstance i = new_instance(schema);
    std::vector<std::vector<Value>> vals(s.domains.size());
    auto value = [&](int d) -> Value {
        int total = 0;
        for (const auto& v : vals) total += static_cast<int>(v.size());
        if (!vals[d].empty() && (total >= max_nulls || coin(rng, 0.4))) return vals[d][pick(rng, vals[d].size())];
        if (total >= max_nulls) return Value(random_constant(s.domains[d].kind, rng));
        Value v(i.fresh_null(d));
        vals[d].push_back(v);
        return v;
    };
    int tuples = 1 + pick(rng, 3);
    for (int k = 0; k < tuples; ++k) {
        int r = pick(rng, s.relations.size());
        std::vector<Value> cells;
        for (const auto& a : s.relations[r].attrs) cells.push_back(value(a.domain));
        i.insert_tuple(r, cells);
    }
    int conds = pick(rng, 5);
    for (int k = 0; k < conds; ++k) {
        int d = pick(rng, s.domains.size());
        Kind kind = s.domains[d].kind;
        int what = pick(rng, 4);
        if (what == 0) {
            int r = pick(rng, s.relations.size());
            std::vector<Value> args;
            for (const auto& a : s.relations[r].attrs) args.push_back(value(a.domain));
            i.add_condition(Condition::negated_fact(r, args));
            continue;
        }
        Value l = value(d);
        if (kind == Kind::String && what == 1) {
            static const char* pats[] = {"a%", "ab%", "b%", "ab", "a"};
            i.add_condition(Condition::compare(l, CmpOp::Like, Value(Constant::string(pats[pick(rng, 5)])), coin(rng)));
            continue;
        }
        Value r = coin(rng, 0.7) ? value(d) : Value(random_constant(kind, rng));
        static const CmpOp num_ops[] = {CmpOp::Eq, CmpOp::Ne, CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge};
        CmpOp op = kind == Kind::String ? (coin(rng) ? CmpOp::Eq : CmpOp::Ne) : num_ops[pick(rng, 6)];
        i.add_condition(Condition::compare(l, op, r));
    }
    return i;
}

namespace {

struct QueryGen {
    std::mt19937& rng;
    int quantifiers_left;
    int atoms_left;
    int next_var = 0;
    std::vector<std::pair<std::string, int>> scope;  // name, domain

    std::string fresh(int domain) {
        std::string n = "v" + std::to_string(next_var++);
        scope.emplace_back(n, domain);
        return n;
    }
    std::string var_of(int domain) {
        std::vector<std::string> c;
        for (const auto& [n, d] : scope)
            if (d == domain) c.push_back(n);
        if (c.empty()) return "";
        return c[pick(rng, c.size())];
    }
    std::string term(int domain, Kind kind) {
        std::string v = var_of(domain);
        if (v.empty() || coin(rng, 0.15)) {
            Constant c = random_constant(kind, rng);
            return c.literal();
        }
        return v;
    }

    std::string atom() {
        --atoms_left;
        const Schema& s = *tiny_schema();
        if (coin(rng, 0.6)) {
            int r = pick(rng, s.relations.size());
            std::string out = s.relations[r].name + "(";
            for (int a = 0; a < s.relations[r].arity(); ++a) {
                int d = s.relations[r].attrs[a].domain;
                out += (a ? ", " : "") + term(d, s.domains[d].kind);
            }
            out += ")";
            return coin(rng, 0.3) ? "not " + out : out;
        }
        int d = pick(rng, s.domains.size());
        Kind k = s.domains[d].kind;
        std::string l = var_of(d);
        if (l.empty()) return "U(" + term(0, Kind::String) + ")";
        if (k == Kind::String) {
            if (coin(rng)) return std::string(coin(rng, 0.3) ? "not " : "") + l + " LIKE '" + (coin(rng) ? "a%" : "ab%") + "'";
            return l + (coin(rng) ? " = " : " != ") + term(d, k);
        }
        static const char* ops[] = {"<", "<=", ">", ">=", "=", "!="};
        return l + " " + ops[pick(rng, 6)] + " " + term(d, k);
    }

    std::string formula(int depth) {
        if (atoms_left <= 1 || depth > 3) return atom();
        int c = pick(rng, 4);
        if ((c == 2 || c == 3) && quantifiers_left > 0) {
            --quantifiers_left;
            const Schema& s = *tiny_schema();
            int r = pick(rng, s.relations.size());
            std::size_t mark = scope.size();
            std::string v = fresh(0);
            // The quantified variable gets a relational guard so the query stays safe.
            std::string guard = s.relations[r].name + "(" + v;
            for (int a = 1; a < s.relations[r].arity(); ++a) {
                int d = s.relations[r].attrs[a].domain;
                guard += ", " + term(d, s.domains[d].kind);
            }
            guard += ")";
            --atoms_left;
            std::string body = atoms_left > 0 ? formula(depth + 1) : "";
            scope.resize(mark);
            if (c == 2) return "exists " + v + " (" + guard + (body.empty() ? "" : " and " + body) + ")";
            return "forall " + v + " (not " + guard + (body.empty() ? "" : " or " + body) + ")";
        }
        int left_budget = std::max(1, atoms_left / 2);
        int saved = atoms_left;
        atoms_left = left_budget;
        std::string l = formula(depth + 1);
        atoms_left = saved - left_budget;
        if (atoms_left <= 0) return l;
        std::string r = formula(depth + 1);
        return "(" + l + (coin(rng, 0.6) ? " and " : " or ") + r + ")";
    }
};

}  // namespace

Query random_query(std::mt19937& rng, int max_quantifiers, int max_atoms) {
    for (;;) {
        QueryGen g{rng, pick(rng, max_quantifiers + 1), 0, 0, {}};
        int atoms = 2 + pick(rng, max_atoms - 1);
        std::string out = g.fresh(0);
        g.atoms_left = atoms - 1;
        std::string text;
        if (g.atoms_left > 0) {
            std::string value = g.fresh(1);
            std::string rest = g.formula(0);
            text = "{(" + out + ") | exists " + value + " (S(" + out + ", " + value + ") and " + rest + ")}";
        } else {
            text = "{(" + out + ") | U(" + out + ")}";
        }
        try {
            Query q = normalize_query(parse_query(text, tiny_schema()));
            if (!check_safety(q).ok) continue;
            SyntaxTree t = build_syntax_tree(q);
            QueryMetrics m = complexity_metrics(t.root);
            if (t.leaf_count() > max_atoms || m.quantifier_count > max_quantifiers) continue;
            return q;
        } catch (const Error&) {
            continue;
        }
    }
}

CInstance random_renaming(const CInstance& i, std::mt19937& rng) {
    std::map<Null, Null> to;
    std::map<int, std::vector<Null>> by_domain;
    for (const Null& n : i.nulls()) by_domain[n.domain].push_back(n);
    for (auto& [d, ns] : by_domain) {
        std::vector<Null> shuffled = ns;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (std::size_t k = 0; k < ns.size(); ++k) to[ns[k]] = Null{d, shuffled[k].index + 100};
    }
    auto map = [&](const Value& v) { return v.is_null() ? Value(to.at(v.null())) : v; };
    CInstance j = new_instance(i.schema);
    for (std::size_t r = 0; r < i.tables.size(); ++r) {
        std::vector<Tuple> rows = i.tables[r];
        std::shuffle(rows.begin(), rows.end(), rng);
        for (auto& t : rows) {
            for (auto& v : t.cells) v = map(v);
            j.tables[r].push_back(t);
        }
    }
    std::vector<Condition> conds = i.conditions;
    std::shuffle(conds.begin(), conds.end(), rng);
    for (auto c : conds) {
        if (c.is_fact)
            for (auto& v : c.args) v = map(v);
        else
            c = Condition::compare(map(c.lhs), c.op, map(c.rhs), c.negated);
        j.conditions.push_back(c);
    }
    return j;
}

}  // namespace drc::testing
