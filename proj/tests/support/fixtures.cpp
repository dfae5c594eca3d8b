#include "support/fixtures.hpp"

#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace drc::testing {

std::string fixture_path(const std::string& name) { return std::string(DRC_FIXTURE_DIR) + "/" + name; }

SchemaPtr beers() {
    static SchemaPtr s = load_schema_file(fixture_path("beers.json"));
    return s;
}

SchemaPtr beers_freq() {
    static SchemaPtr s = load_schema_file(fixture_path("beers_freq.json"));
    return s;
}

Query fixture_query(const std::string& file, const SchemaPtr& schema) {
    return parse_query_file(fixture_path(file), schema);
}

Query diff_ba() {
    return difference_query(fixture_query("qB.drc", beers()), fixture_query("qA.drc", beers()));
}

Query diff_q2() {
    return difference_query(fixture_query("q2B.drc", beers_freq()), fixture_query("q2A.drc", beers_freq()));
}

GroundInstance k0() { return load_ground_instance(beers(), read_file(fixture_path("k0.json"))); }

CInstance build_instance(const SchemaPtr& schema, const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        auto b = line.find_first_not_of(" \t");
        if (b != std::string::npos) lines.push_back(line.substr(b));
    }
    if (lines.empty()) return new_instance(schema);
    std::string body;
    for (const auto& l : lines) body += (body.empty() ? "" : " and ") + l;

    // The header lists every identifier so the parser types each one.
    std::string idents;
    std::set<std::string> seen;
    auto keyword = [](const std::string& w) { return w == "not" || w == "and" || w == "LIKE" || w == "like"; };
    for (std::size_t k = 0; k < body.size();) {
        if (body[k] == '\'') {
            k = body.find('\'', k + 1) + 1;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(body[k])) || body[k] == '_') {
            std::size_t e = k;
            while (e < body.size() && (std::isalnum(static_cast<unsigned char>(body[e])) || body[e] == '_')) ++e;
            std::string w = body.substr(k, e - k);
            bool relation = e < body.size() && body[e] == '(';
            if (!relation && !keyword(w) && seen.insert(w).second) idents += (idents.empty() ? "" : ", ") + w;
            k = e;
            continue;
        }
        ++k;
    }
    Query q = parse_query("{(" + idents + ") | " + body + "}", schema);

    CInstance i = new_instance(schema);
    Homomorphism h(q.vars.size());
    Conjunction conj;
    std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& f) {
        if (f->kind == FKind::And) {
            walk(f->left);
            walk(f->right);
            return;
        }
        Atom a;
        if (f->kind == FKind::Atom)
            a = f->atom;
        else if (f->kind == FKind::Not && f->left->kind == FKind::Atom)
            a = negate_atom(f->left->atom);
        else
            throw Error("build_instance: each line must be an atom or a negated atom");
        auto bind = [&](const Term& t) {
            if (t.is_var() && !h[t.var]) h[t.var] = Value(i.fresh_null(q.var_domain(t.var)));
        };
        if (a.relational)
            for (const auto& t : a.args) bind(t);
        else {
            bind(a.lhs);
            bind(a.rhs);
        }
        conj.push_back({a, -1, true});
    };
    walk(q.formula);
    CInstance out = add_to_ins(i, conj, h);
    out.tracked.clear();
    return out;
}

CInstance instance_i0() {
    return build_instance(beers(), R"(
        Likes(d1, b1)
        Serves(x1, b1, p1)
        Serves(x2, b1, p2)
        Serves(x3, b1, p3)
        d1 LIKE 'Eve%'
        p1 > p2
        p3 > p1
    )");
}

CInstance instance_i1() {
    return build_instance(beers(), R"(
        Likes(d1, b1)
        Serves(x1, b1, p1)
        Serves(x2, b1, p2)
        d1 LIKE 'Eve%'
        not d1 LIKE 'Eve %'
        p1 > p2
    )");
}

CInstance instance_third() {
    return build_instance(beers(), R"(
        Likes(d1, b1)
        Serves(x1, b1, p1)
        Serves(x2, b1, p2)
        d1 LIKE 'Eve%'
        not d1 LIKE 'Eve %'
        not Likes(d2, b1)
        p1 < p2
    )");
}

CInstance instance_i2() {
    return build_instance(beers(), R"(
        Likes(d1, b1)
        Serves(x1, b1, p1)
        Serves(x2, b1, p2)
        Serves(x3, b1, p3)
        d1 LIKE 'Eve%'
        d1 LIKE 'Eve %'
        not Likes(d2, b1)
        not d2 LIKE 'Eve %'
        p1 > p2
        p2 > p3
    )");
}

std::vector<CInstance> case_study_q2() {
    const char* rows[] = {
        R"(Likes(d1, b1)
           Frequents(d1, x1, t1))",
        R"(Likes(d1, b1)
           Serves(x1, b1, p1)
           Frequents(d1, x2, t1)
           not Frequents(d1, x1, t1))",
        R"(Beer(b1, r1)
           Frequents(d1, x1, t1))",
        R"(Likes(d1, b1)
           Serves(x1, b1, p1)
           Frequents(d1, x1, t1)
           Frequents(d1, x2, t1))",
        R"(Serves(x1, b1, p1)
           Frequents(d1, x2, t1)
           not Likes(d1, b1)
           not Frequents(d1, x1, t1))",
        R"(Likes(d2, b1)
           Serves(x1, b1, p1)
           Frequents(d2, x2, t1)
           not Frequents(d2, x1, t1)
           not Likes(d1, b1))",
        R"(Likes(d1, b1)
           Serves(x1, b1, p1)
           Frequents(d1, x1, t1)
           Frequents(d1, x2, t1)
           not Likes(d1, b2))",
    };
    std::vector<CInstance> out;
    for (const char* r : rows) out.push_back(build_instance(beers_freq(), r));
    return out;
}

}  // namespace drc::testing
