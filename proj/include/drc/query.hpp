#pragma once

#include "drc/schema.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace drc {

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge, Like };

std::string_view op_text(CmpOp op);
CmpOp complement(CmpOp op);  // Like maps to itself
CmpOp mirror(CmpOp op);      // a op b  <=>  b mirror(op) a

struct Term {
    int var = -1;
    Constant c;

    static Term variable(int v) { return {v, {}}; }
    static Term constant(Constant c) { return {-1, std::move(c)}; }
    bool is_var() const { return var >= 0; }
    bool operator==(const Term&) const = default;
};

// Relational atom R(t1..tk) or comparison lhs op rhs; `negated` marks a negated
// relational atom or NOT LIKE (other comparisons negate by complementing op).
struct Atom {
    bool relational = true;
    int rel = -1;
    std::vector<Term> args;
    CmpOp op = CmpOp::Eq;
    Term lhs, rhs;
    bool negated = false;

    bool operator==(const Atom&) const = default;
};

Atom negate_atom(Atom a);

// A LIKE pattern is either an exact literal or a literal followed by one '%'.
struct LikePattern {
    std::string prefix;
    bool exact = false;
};
LikePattern parse_like(const std::string& pattern);  // throws ParseError
bool like_matches(const std::string& s, const LikePattern& p);

enum class FKind { Atom, And, Or, Not, Exists, Forall };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    FKind kind = FKind::Atom;
    Atom atom;
    int var = -1;           // quantifiers
    FormulaPtr left, right; // Not and quantifiers use `left`

    static FormulaPtr make_atom(Atom a);
    static FormulaPtr make_binary(FKind k, FormulaPtr l, FormulaPtr r);
    static FormulaPtr make_not(FormulaPtr c);
    static FormulaPtr make_quant(FKind k, int var, FormulaPtr c);
};

struct Variable {
    std::string name;
    int domain = -1;
};

struct Query {
    SchemaPtr schema;
    std::vector<Variable> vars;
    std::vector<int> output;
    FormulaPtr formula;

    const std::string& var_name(int v) const { return vars[v].name; }
    int var_domain(int v) const { return vars[v].domain; }
};

Query parse_query(std::string_view text, SchemaPtr schema);
Query parse_query_file(const std::string& path, SchemaPtr schema);

// Negation pushed onto atoms, quantified names made globally unique,
// unreferenced variables dropped.
Query normalize_query(const Query& q);

struct SafetyReport {
    bool ok = true;
    std::vector<std::string> offending;
};
SafetyReport check_safety(const Query& q);

// q1 AND NOT q2 with q2's outputs identified with q1's, then normalized.
Query difference_query(const Query& q1, const Query& q2);

std::vector<int> free_variables(const FormulaPtr& f);

std::string term_text(const Query& q, const Term& t);
std::string atom_text(const Query& q, const Atom& a);
std::string formula_text(const Query& q, const FormulaPtr& f);
std::string query_text(const Query& q);

}  // namespace drc
