#include "drc/solver.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace drc {

Value Closure::rep(const Value& v) const {
    auto it = reps.find(v);
    return it == reps.end() ? v : it->second;
}

std::optional<Constant> Closure::binding(const Value& v) const {
    Value r = rep(v);
    if (r.is_null()) return std::nullopt;
    return r.constant();
}

namespace {

// q + e·ε with ε a positive infinitesimal; strict bounds on dense domains use e = -1.
struct W {
    Rational q{0};
    long long e = 0;
    bool inf = false;

    static W infinite() { return {Rational{0}, 0, true}; }
    W operator+(const W& o) const {
        if (inf || o.inf) return infinite();
        return {q + o.q, e + o.e, false};
    }
    bool operator<(const W& o) const {
        if (inf) return false;
        if (o.inf) return true;
        if (q != o.q) return q < o.q;
        return e < o.e;
    }
    bool zero() const { return !inf && q.numerator() == 0 && e == 0; }
};

struct UnionFind {
    std::vector<int> parent;
    int add() {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

class Solver {
public:
    explicit Solver(const CInstance& i) : i_(i) {}

    Closure run() {
        Closure out;
        for (const auto& c : i_.conditions) {
            if (c.is_fact)
                for (const auto& v : c.args) node(v);
            else {
                node(c.lhs);
                node(c.rhs);
            }
        }
        for (const auto& c : i_.conditions) {
            if (c.is_fact) continue;
            if (c.op == CmpOp::Eq) uf_.unite(node(c.lhs), node(c.rhs));
            if (c.op == CmpOp::Like && !c.negated) {
                auto p = parse_like(c.rhs.constant().str);
                if (p.exact) uf_.unite(node(c.lhs), node(Value(Constant::string(p.prefix))));
            }
        }
        try {
            for (;;) {
                check_constants();
                bool keyed = key_pass();
                if (!order_pass() && !keyed) break;
            }
            check_disequalities();
            check_integer_choices();
            check_strings();
            check_facts();
        } catch (const Unsat& u) {
            out.consistent = false;
            out.reason = u.why;
        }
        // Class representatives.
        std::map<int, Value> best;
        for (std::size_t k = 0; k < vals_.size(); ++k) {
            int r = uf_.find(static_cast<int>(k));
            auto it = best.find(r);
            const Value& v = vals_[k];
            if (it == best.end())
                best[r] = v;
            else if (!v.is_null() && it->second.is_null())
                it->second = v;
            else if (v.is_null() == it->second.is_null() && v < it->second)
                it->second = v;
        }
        for (std::size_t k = 0; k < vals_.size(); ++k) {
            const Value& r = best[uf_.find(static_cast<int>(k))];
            if (!(r == vals_[k])) out.reps[vals_[k]] = r;
        }
        return out;
    }

private:
    struct Unsat {
        std::string why;
    };

    const CInstance& i_;
    std::vector<Value> vals_;
    std::map<Value, int> id_;
    UnionFind uf_;

    int node(const Value& v) {
        auto it = id_.find(v);
        if (it != id_.end()) return it->second;
        int k = uf_.add();
        vals_.push_back(v);
        id_[v] = k;
        return k;
    }

    Kind kind_of(const Value& v) const {
        if (v.is_null()) return i_.schema->domains[v.null().domain].kind;
        return v.constant().kind;
    }

    std::string text(const Value& v) const { return i_.value_text(v); }

    // Members grouped by class root.
    std::map<int, std::vector<int>> classes() {
        std::map<int, std::vector<int>> out;
        for (std::size_t k = 0; k < vals_.size(); ++k) out[uf_.find(static_cast<int>(k))].push_back(static_cast<int>(k));
        return out;
    }

    void check_constants() {
        for (const auto& [root, mem] : classes()) {
            const Value* c = nullptr;
            for (int k : mem)
                if (!vals_[k].is_null()) {
                    if (c && !(vals_[k] == *c))
                        throw Unsat{"class binds " + text(*c) + " and " + text(vals_[k])};
                    c = &vals_[k];
                }
        }
    }

    // Tuples whose key cells share classes get their other cells merged.
    bool key_pass() {
        bool changed = false;
        for (const auto& key : i_.schema->keys) {
            const auto& rows = i_.tables[key.rel];
            for (std::size_t a = 0; a < rows.size(); ++a)
                for (std::size_t b = a + 1; b < rows.size(); ++b) {
                    bool same = true;
                    for (int k : key.attrs)
                        same = same && uf_.find(node(rows[a].cells[k])) == uf_.find(node(rows[b].cells[k]));
                    if (!same) continue;
                    for (std::size_t k = 0; k < rows[a].cells.size(); ++k)
                        changed |= uf_.unite(node(rows[a].cells[k]), node(rows[b].cells[k]));
                }
        }
        return changed;
    }

    bool integer_class(const std::vector<int>& mem) const {
        for (int k : mem)
            if (kind_of(vals_[k]) == Kind::Integer) return true;
        return false;
    }

    // Difference-constraint closure over numeric classes. Returns true when it
    // discovered new forced equalities (caller iterates to a fixpoint).
    struct Graph {
        std::vector<int> roots;        // class root per node (last node is the zero anchor)
        std::vector<bool> integer;
        std::vector<std::vector<W>> d;
        int zero = 0;
        int index(int root) const {
            auto it = std::find(roots.begin(), roots.end(), root);
            return it == roots.end() ? -1 : static_cast<int>(it - roots.begin());
        }
    };

    Graph build_graph() {
        Graph g;
        auto cls = classes();
        for (const auto& [root, mem] : cls) {
            bool numeric = false;
            for (int k : mem) numeric = numeric || is_numeric(kind_of(vals_[k]));
            if (!numeric) continue;
            g.roots.push_back(root);
            g.integer.push_back(integer_class(mem));
        }
        std::size_t n = g.roots.size() + 1;
        g.zero = static_cast<int>(n - 1);
        g.d.assign(n, std::vector<W>(n, W::infinite()));
        for (std::size_t k = 0; k < n; ++k) g.d[k][k] = W{};
        auto edge = [&](int from, int to, W w) {  // x_to - x_from <= w
            if (w < g.d[from][to]) g.d[from][to] = w;
        };
        for (std::size_t k = 0; k + 1 < n; ++k)
            for (int m : cls[g.roots[k]])
                if (!vals_[m].is_null()) {
                    Rational c = vals_[m].constant().num;
                    edge(g.zero, static_cast<int>(k), W{c, 0});
                    edge(static_cast<int>(k), g.zero, W{-c, 0});
                }
        for (const auto& c : i_.conditions) {
            if (c.is_fact || (c.op != CmpOp::Lt && c.op != CmpOp::Le)) continue;
            if (!is_numeric(kind_of(c.lhs)) || !is_numeric(kind_of(c.rhs)))
                throw Unsat{"order comparison on non-numeric values"};
            int a = g.index(uf_.find(id_[c.lhs])), b = g.index(uf_.find(id_[c.rhs]));
            // lhs - rhs <= 0 (or strictly below): edge rhs -> lhs.
            W w{};
            if (c.op == CmpOp::Lt) w = (g.integer[a] && g.integer[b]) ? W{Rational{-1}, 0} : W{Rational{0}, -1};
            edge(b, a, w);
        }
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t a = 0; a < n; ++a) {
                if (g.d[a][k].inf) continue;
                for (std::size_t b = 0; b < n; ++b) {
                    W via = g.d[a][k] + g.d[k][b];
                    if (via < g.d[a][b]) g.d[a][b] = via;
                }
            }
        for (std::size_t k = 0; k < n; ++k)
            if (g.d[k][k] < W{}) throw Unsat{"order constraints form a strict cycle"};
        return g;
    }

    bool order_pass() {
        Graph g = build_graph();
        bool changed = false;
        std::size_t n = g.roots.size();
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b)
                if (g.d[a][b].zero() && g.d[b][a].zero()) changed |= uf_.unite(g.roots[a], g.roots[b]);
            const W& up = g.d[g.zero][a];   // x_a <= up
            const W& down = g.d[a][g.zero]; // -x_a <= down
            if (!up.inf && !down.inf && up.e == 0 && down.e == 0 && up.q == -down.q) {
                Kind k = g.integer[a] ? Kind::Integer : Kind::Rational;
                changed |= uf_.unite(g.roots[a], node(Value(Constant::number(up.q, k))));
            }
        }
        return changed;
    }

    void check_disequalities() {
        for (const auto& c : i_.conditions)
            if (!c.is_fact && c.op == CmpOp::Ne && uf_.find(id_[c.lhs]) == uf_.find(id_[c.rhs]))
                throw Unsat{"forced equal values " + text(c.lhs) + " and " + text(c.rhs) + " must differ"};
    }

    // Bounded integer classes with disequalities may run out of values; search
    // their finite ranges.
    void check_integer_choices() {
        Graph g = build_graph();
        std::size_t n = g.roots.size();
        std::vector<std::pair<int, int>> neq;
        for (const auto& c : i_.conditions) {
            if (c.is_fact || c.op != CmpOp::Ne) continue;
            int a = g.index(uf_.find(id_[c.lhs])), b = g.index(uf_.find(id_[c.rhs]));
            if (a >= 0 && b >= 0) neq.push_back({a, b});
        }
        if (neq.empty()) return;
        std::vector<int> vars;
        for (std::size_t a = 0; a < n; ++a) {
            if (!g.integer[a] || g.d[g.zero][a].inf || g.d[a][g.zero].inf) continue;
            bool involved = false;
            for (auto [x, y] : neq) involved = involved || x == static_cast<int>(a) || y == static_cast<int>(a);
            if (involved) vars.push_back(static_cast<int>(a));
        }
        if (vars.empty()) return;
        long double space = 1;
        for (int a : vars) space *= static_cast<long double>(boost::rational_cast<long long>(g.d[g.zero][a].q + g.d[a][g.zero].q) + 1);
        if (space > 2e6) return;

        std::vector<std::optional<Rational>> val(n);
        std::function<bool(std::size_t, std::vector<std::vector<W>>)> rec = [&](std::size_t k, std::vector<std::vector<W>> d) {
            for (std::size_t x = 0; x <= n; ++x)
                if (d[x][x] < W{}) return false;
            for (auto [a, b] : neq)
                if (val[a] && val[b] && *val[a] == *val[b]) return false;
            if (k == vars.size()) return true;
            int a = vars[k];
            if (d[g.zero][a].inf || d[a][g.zero].inf) return true;
            long long lo = boost::rational_cast<long long>(-d[a][g.zero].q);
            long long hi = boost::rational_cast<long long>(d[g.zero][a].q);
            for (long long v = lo; v <= hi; ++v) {
                auto e = d;
                Rational rv{v};
                if (W{rv, 0} < e[g.zero][a]) e[g.zero][a] = W{rv, 0};
                if (W{-rv, 0} < e[a][g.zero]) e[a][g.zero] = W{-rv, 0};
                for (std::size_t x = 0; x <= n; ++x)
                    for (std::size_t y = 0; y <= n; ++y) {
                        W via = e[x][g.zero] + e[g.zero][y];
                        if (via < e[x][y]) e[x][y] = via;
                        W via2 = e[x][a] + e[a][y];
                        if (via2 < e[x][y]) e[x][y] = via2;
                    }
                val[a] = rv;
                if (rec(k + 1, e)) return true;
                val[a].reset();
            }
            return false;
        };
        // Constant classes carry their value for the disequality test.
        for (std::size_t a = 0; a < n; ++a) {
            const W& up = g.d[g.zero][a];
            const W& down = g.d[a][g.zero];
            if (!up.inf && !down.inf && up.e == 0 && down.e == 0 && up.q == -down.q) val[a] = up.q;
        }
        if (!rec(0, g.d)) throw Unsat{"bounded integer values cannot satisfy the disequalities"};
    }

    void check_strings() {
        std::map<int, std::vector<std::string>> pos, neg_prefix;
        for (const auto& c : i_.conditions) {
            if (c.is_fact || c.op != CmpOp::Like) continue;
            auto p = parse_like(c.rhs.constant().str);
            int root = uf_.find(id_[c.lhs]);
            if (!c.negated) {
                if (!p.exact) pos[root].push_back(p.prefix);
            } else if (p.exact) {
                if (uf_.find(node(Value(Constant::string(p.prefix)))) == root)
                    throw Unsat{text(c.lhs) + " must equal and differ from '" + p.prefix + "'"};
            } else {
                neg_prefix[root].push_back(p.prefix);
            }
        }
        auto bound = [&](int root) -> std::optional<std::string> {
            for (std::size_t k = 0; k < vals_.size(); ++k)
                if (uf_.find(static_cast<int>(k)) == root && !vals_[k].is_null()) return vals_[k].constant().str;
            return std::nullopt;
        };
        std::set<int> roots;
        for (auto& [r, _] : pos) roots.insert(r);
        for (auto& [r, _] : neg_prefix) roots.insert(r);
        for (int root : roots) {
            auto& ps = pos[root];
            auto& ns = neg_prefix[root];
            auto starts = [](const std::string& s, const std::string& p) { return s.compare(0, p.size(), p) == 0 && s.size() >= p.size(); };
            if (auto c = bound(root)) {
                for (const auto& p : ps)
                    if (!starts(*c, p)) throw Unsat{"'" + *c + "' does not start with '" + p + "'"};
                for (const auto& p : ns)
                    if (starts(*c, p)) throw Unsat{"'" + *c + "' starts with excluded '" + p + "'"};
                continue;
            }
            std::string longest;
            for (const auto& p : ps)
                if (p.size() > longest.size()) longest = p;
            for (const auto& p : ps)
                if (!starts(longest, p)) throw Unsat{"incompatible prefixes '" + p + "' and '" + longest + "'"};
            for (const auto& p : ns)
                if (starts(longest, p)) throw Unsat{"prefix '" + longest + "' implies excluded '" + p + "'"};
        }
    }

    void check_facts() {
        for (const auto& c : i_.conditions) {
            if (!c.is_fact) continue;
            for (const auto& t : i_.tables[c.rel]) {
                bool all = true;
                for (std::size_t k = 0; k < t.cells.size() && all; ++k) all = same(t.cells[k], c.args[k]);
                if (all) throw Unsat{"negated fact " + i_.condition_text(c) + " is present"};
            }
        }
    }

    bool same(const Value& a, const Value& b) {
        if (a == b) return true;
        auto ia = id_.find(a), ib = id_.find(b);
        if (ia == id_.end() || ib == id_.end()) return false;
        return uf_.find(ia->second) == uf_.find(ib->second);
    }
};

}  // namespace

Closure solve(const CInstance& i) { return Solver(i).run(); }

bool is_consistent(const CInstance& i) { return solve(i).consistent; }

bool forced_equal(const CInstance& i, const Value& a, const Value& b) {
    if (a == b) return true;
    Closure c = solve(i);
    return c.consistent && c.same(a, b);
}

Condition negate_condition(const Condition& c) {
    if (c.is_fact) throw Error("negate_condition: negated facts have no condition-level negation");
    switch (c.op) {
    case CmpOp::Eq: return Condition::compare(c.lhs, CmpOp::Ne, c.rhs);
    case CmpOp::Ne: return Condition::compare(c.lhs, CmpOp::Eq, c.rhs);
    case CmpOp::Lt: return Condition::compare(c.rhs, CmpOp::Le, c.lhs);
    case CmpOp::Le: return Condition::compare(c.rhs, CmpOp::Lt, c.lhs);
    case CmpOp::Like: return Condition::compare(c.lhs, CmpOp::Like, c.rhs, !c.negated);
    default: break;
    }
    return c;
}

bool entails(const CInstance& i, const Condition& c) {
    CInstance j = i;
    j.conditions.push_back(negate_condition(c));
    return !is_consistent(j);
}

}  // namespace drc
