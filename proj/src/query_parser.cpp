#include "drc/query.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <optional>

namespace drc {

namespace {

enum class Tok { Ident, Number, String, Punct, End };

struct Token {
    Tok type = Tok::End;
    std::string text;
    std::size_t pos = 0;
};

// Unicode connectives are folded into their ASCII keywords.
const std::pair<const char*, const char*> kSymbols[] = {
    {"∃", "exists"}, {"∀", "forall"}, {"∧", "and"}, {"∨", "or"}, {"¬", "not"},
    {"≠", "!="},     {"≤", "<="},     {"≥", ">="},
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto fail = [&](const std::string& msg) { throw ParseError("syntax error at offset " + std::to_string(i) + ": " + msg); };
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        bool matched = false;
        for (auto [sym, word] : kSymbols) {
            std::string_view sv(sym);
            if (s.substr(i, sv.size()) == sv) {
                bool is_word = std::isalpha(static_cast<unsigned char>(word[0]));
                out.push_back({is_word ? Tok::Ident : Tok::Punct, word, i});
                i += sv.size();
                matched = true;
                break;
            }
        }
        if (matched) continue;
        if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
            i = j;
        } else if (std::isdigit(c) || (c == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
            std::size_t j = i + 1;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
            out.push_back({Tok::Number, std::string(s.substr(i, j - i)), i});
            i = j;
        } else if (c == '\'') {
            std::string lit;
            std::size_t j = i + 1;
            for (;; ++j) {
                if (j >= s.size()) fail("unterminated string literal");
                if (s[j] == '\'') {
                    if (j + 1 < s.size() && s[j + 1] == '\'') {
                        lit += '\'';
                        ++j;
                        continue;
                    }
                    break;
                }
                lit += s[j];
            }
            out.push_back({Tok::String, lit, i});
            i = j + 1;
        } else {
            static const char* two[] = {"!=", "<>", "<=", ">="};
            std::string p(1, static_cast<char>(c));
            for (const char* t : two)
                if (s.substr(i, 2) == t) p = t;
            if (p == "<>") p = "!=";
            if (p.size() == 1 && std::string("{}()|,:=<>").find(static_cast<char>(c)) == std::string::npos)
                fail(std::string("unexpected character '") + static_cast<char>(c) + "'");
            out.push_back({Tok::Punct, p, i});
            i += (s.substr(i, 2) == "<>") ? 2 : p.size();
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

bool is_keyword(const std::string& w) {
    return w == "exists" || w == "forall" || w == "and" || w == "or" || w == "not" || w == "LIKE" || w == "like";
}

struct RawTerm {
    bool is_var = false;
    std::string name;  // variable name or literal text
    bool is_string = false;
};

class Parser {
public:
    Parser(std::string_view text, SchemaPtr schema) : toks_(tokenize(text)), schema_(std::move(schema)) {}

private:
    std::vector<Token> toks_;
    std::size_t p_ = 0;
    SchemaPtr schema_;
    std::vector<Variable> vars_;
    std::map<std::string, int> free_;
    std::vector<std::pair<std::string, int>> scope_;
    std::vector<std::shared_ptr<Formula>> cmp_nodes_;
    std::vector<std::pair<RawTerm, RawTerm>> cmp_raw_;
    struct RelConst {
        std::shared_ptr<Formula> node;
        int pos;
        RawTerm raw;
    };
    std::vector<RelConst> rel_consts_;

    const Token& cur() const { return toks_[p_]; }
    bool peek_is(const char* t) const { return cur().type == Tok::Punct && cur().text == t; }
    bool word_is(const char* w) const { return cur().type == Tok::Ident && cur().text == w; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("syntax error at offset " + std::to_string(cur().pos) + ": " + msg);
    }
    bool accept(const char* t) {
        if (peek_is(t)) {
            ++p_;
            return true;
        }
        return false;
    }
    void expect(const char* t) {
        if (!accept(t)) fail(std::string("expected '") + t + "'");
    }
    std::string ident(const char* what) {
        if (cur().type != Tok::Ident || is_keyword(cur().text)) fail(std::string("expected ") + what);
        return toks_[p_++].text;
    }

    int free_var(const std::string& name) {
        auto it = free_.find(name);
        if (it != free_.end()) return it->second;
        int v = static_cast<int>(vars_.size());
        vars_.push_back({name, -1});
        free_[name] = v;
        return v;
    }
    int lookup(const std::string& name) {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (it->first == name) return it->second;
        return free_var(name);
    }

    FormulaPtr parse_or() {
        auto l = parse_and();
        while (word_is("or")) {
            ++p_;
            l = Formula::make_binary(FKind::Or, l, parse_and());
        }
        return l;
    }
    FormulaPtr parse_and() {
        auto l = parse_unary();
        while (word_is("and")) {
            ++p_;
            l = Formula::make_binary(FKind::And, l, parse_unary());
        }
        return l;
    }
    FormulaPtr parse_unary() {
        if (word_is("not")) {
            ++p_;
            return Formula::make_not(parse_unary());
        }
        if (word_is("exists") || word_is("forall")) {
            FKind k = cur().text == "exists" ? FKind::Exists : FKind::Forall;
            ++p_;
            std::vector<int> bound;
            do {
                std::string name = ident("quantified variable");
                int v = static_cast<int>(vars_.size());
                vars_.push_back({name, -1});
                scope_.push_back({name, v});
                bound.push_back(v);
            } while (accept(","));
            auto body = parse_or();
            scope_.resize(scope_.size() - bound.size());
            for (auto it = bound.rbegin(); it != bound.rend(); ++it) body = Formula::make_quant(k, *it, body);
            return body;
        }
        if (accept("(")) {
            auto f = parse_or();
            expect(")");
            return f;
        }
        return parse_atom();
    }

    RawTerm raw_term() {
        const Token& t = cur();
        if (t.type == Tok::Ident && !is_keyword(t.text)) {
            ++p_;
            return {true, t.text, false};
        }
        if (t.type == Tok::Number) {
            ++p_;
            return {false, t.text, false};
        }
        if (t.type == Tok::String) {
            ++p_;
            return {false, t.text, true};
        }
        fail("expected a term");
    }

    Term bind(const RawTerm& r) { return r.is_var ? Term::variable(lookup(r.name)) : Term::constant(Constant{}); }

    FormulaPtr parse_atom() {
        if (cur().type == Tok::Ident && !is_keyword(cur().text) && toks_[p_ + 1].type == Tok::Punct &&
            toks_[p_ + 1].text == "(") {
            std::string rel = toks_[p_].text;
            p_ += 2;
            auto ri = schema_->find_relation(rel);
            if (!ri) throw ParseError("unknown relation '" + rel + "'");
            auto node = std::make_shared<Formula>();
            node->kind = FKind::Atom;
            node->atom.relational = true;
            node->atom.rel = *ri;
            std::vector<RawTerm> raws;
            if (!peek_is(")")) {
                do raws.push_back(raw_term());
                while (accept(","));
            }
            expect(")");
            int arity = schema_->relations[*ri].arity();
            if (static_cast<int>(raws.size()) != arity)
                throw ParseError("arity mismatch for " + rel + ": expected " + std::to_string(arity) + ", got " +
                                 std::to_string(raws.size()));
            for (int i = 0; i < arity; ++i) {
                node->atom.args.push_back(bind(raws[i]));
                if (!raws[i].is_var) rel_consts_.push_back({node, i, raws[i]});
            }
            return node;
        }
        RawTerm lhs = raw_term();
        CmpOp op;
        if (word_is("LIKE") || word_is("like"))
            op = CmpOp::Like;
        else if (cur().type == Tok::Punct) {
            const std::string& t = cur().text;
            if (t == "=") op = CmpOp::Eq;
            else if (t == "!=") op = CmpOp::Ne;
            else if (t == "<") op = CmpOp::Lt;
            else if (t == "<=") op = CmpOp::Le;
            else if (t == ">") op = CmpOp::Gt;
            else if (t == ">=") op = CmpOp::Ge;
            else fail("expected a comparison operator");
        } else
            fail("expected a comparison operator");
        ++p_;
        RawTerm rhs = raw_term();
        auto node = std::make_shared<Formula>();
        node->kind = FKind::Atom;
        node->atom.relational = false;
        node->atom.op = op;
        node->atom.lhs = bind(lhs);
        node->atom.rhs = bind(rhs);
        cmp_nodes_.push_back(node);
        cmp_raw_.push_back({lhs, rhs});
        return node;
    }

    Constant make_constant(const RawTerm& r, Kind k, const std::string& where) {
        if (r.is_string) {
            if (k != Kind::String) throw ParseError("domain-kind clash: string literal '" + r.name + "' in " + where);
            return Constant::string(r.name);
        }
        if (k == Kind::String) throw ParseError("domain-kind clash: number " + r.name + " in " + where);
        Rational v = parse_decimal(r.name);
        if (k == Kind::Integer && v.denominator() != 1)
            throw ParseError("domain-kind clash: non-integer " + r.name + " in " + where);
        return Constant::number(v, k);
    }

    void infer_domains() {
        std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& f) {
            if (f->kind == FKind::Atom) {
                if (!f->atom.relational) return;
                const auto& rel = schema_->relations[f->atom.rel];
                for (int i = 0; i < rel.arity(); ++i) {
                    const Term& t = f->atom.args[i];
                    if (!t.is_var()) continue;
                    int d = rel.attrs[i].domain;
                    auto& var = vars_[t.var];
                    if (var.domain < 0)
                        var.domain = d;
                    else if (var.domain != d)
                        throw ParseError("domain-kind clash: variable '" + var.name + "' used in domains '" +
                                         schema_->domains[var.domain].name + "' and '" + schema_->domains[d].name + "'");
                }
                return;
            }
            if (f->left) walk(f->left);
            if (f->right) walk(f->right);
        };
        // Formula nodes are shared immutably elsewhere, so walk the roots we built.
        for (const auto& rc : rel_consts_) {
            const auto& rel = schema_->relations[rc.node->atom.rel];
            Kind k = schema_->domains[rel.attrs[rc.pos].domain].kind;
            rc.node->atom.args[rc.pos].c = make_constant(rc.raw, k, rel.name);
        }
        walk_all(walk);
        for (const auto& v : vars_)
            if (v.domain < 0)
                throw ParseError("variable '" + v.name + "' has no relational position, so its domain is unknown");
        for (std::size_t i = 0; i < cmp_nodes_.size(); ++i) type_comparison(*cmp_nodes_[i], cmp_raw_[i]);
    }

    std::vector<FormulaPtr> roots_;
    void walk_all(const std::function<void(const FormulaPtr&)>& walk) {
        for (const auto& r : roots_) walk(r);
    }

    void type_comparison(Formula& node, const std::pair<RawTerm, RawTerm>& raw) {
        Atom& a = node.atom;
        std::string where = "comparison " + raw.first.name + " " + std::string(op_text(a.op)) + " " + raw.second.name;
        auto kind_of = [&](const Term& t) { return schema_->domains[vars_[t.var].domain].kind; };
        if (a.op == CmpOp::Like) {
            if (!raw.second.is_string || raw.second.is_var)
                throw ParseError("LIKE needs a string pattern on the right in " + where);
            parse_like(raw.second.name);
            a.rhs.c = Constant::string(raw.second.name);
            if (a.lhs.is_var()) {
                if (kind_of(a.lhs) != Kind::String) throw ParseError("domain-kind clash: LIKE on a numeric variable in " + where);
            } else {
                a.lhs.c = make_constant(raw.first, Kind::String, where);
            }
            return;
        }
        Kind k;
        if (a.lhs.is_var() && a.rhs.is_var()) {
            k = kind_of(a.lhs);
            Kind k2 = kind_of(a.rhs);
            if (is_numeric(k) != is_numeric(k2)) throw ParseError("domain-kind clash in " + where);
        } else if (a.lhs.is_var()) {
            k = kind_of(a.lhs);
        } else if (a.rhs.is_var()) {
            k = kind_of(a.rhs);
        } else {
            k = raw.first.is_string ? Kind::String : Kind::Rational;
        }
        if (!a.lhs.is_var()) a.lhs.c = make_constant(raw.first, k, where);
        if (!a.rhs.is_var()) a.rhs.c = make_constant(raw.second, k, where);
        if (k == Kind::String && a.op != CmpOp::Eq && a.op != CmpOp::Ne)
            throw ParseError("order comparison on strings is not supported in " + where);
    }

public:
    Query parse() {
        Query q;
        q.schema = schema_;
        expect("{");
        bool paren = accept("(");
        if (!(paren && peek_is(")"))) {
            do {
                std::string name = ident("output variable");
                for (int v : q.output)
                    if (vars_[v].name == name) fail("output variable '" + name + "' listed twice");
                q.output.push_back(free_var(name));
            } while (accept(","));
        }
        if (paren) expect(")");
        if (!accept("|") && !accept(":")) fail("expected '|'");
        q.formula = parse_or();
        expect("}");
        if (cur().type != Tok::End) fail("trailing input after '}'");
        roots_.push_back(q.formula);
        infer_domains();
        q.vars = vars_;
        return q;
    }
};

}  // namespace

Query parse_query(std::string_view text, SchemaPtr schema) {
    Parser p(text, std::move(schema));
    return p.parse();
}

Query parse_query_file(const std::string& path, SchemaPtr schema) { return parse_query(read_file(path), std::move(schema)); }

}  // namespace drc
