#include "drc/eval.hpp"

#include <algorithm>
#include <functional>

#ifdef DRC_HAVE_OPENMP
#include <omp.h>
#endif

namespace drc {

namespace {

Rational floor_of(const Rational& r) {
    long long n = r.numerator(), d = r.denominator();
    return Rational(n >= 0 ? n / d : -((-n + d - 1) / d));
}

Rational ceil_of(const Rational& r) { return -floor_of(-r); }

bool integral(const Rational& r) { return r.denominator() == 1; }

struct Scope {
    std::vector<std::set<Constant>> constants;    // per domain
    std::vector<std::set<std::string>> prefixes;  // non-exact LIKE prefixes per domain
    std::set<Rational> numeric;                   // every numeric constant in scope
    std::vector<int> null_count;                  // per domain
};

Scope collect_scope(const Query* q, const CInstance& i) {
    const Schema& s = *i.schema;
    Scope sc;
    sc.constants.resize(s.domains.size());
    sc.prefixes.resize(s.domains.size());
    sc.null_count.assign(s.domains.size(), 0);
    auto note = [&](int domain, const Constant& c) {
        if (c.numeric()) sc.numeric.insert(c.num);
        if (domain >= 0) sc.constants[domain].insert(c);
    };
    auto note_like = [&](int domain, const std::string& pattern) {
        auto p = parse_like(pattern);
        if (domain < 0) return;
        if (p.exact)
            sc.constants[domain].insert(Constant::string(p.prefix));
        else
            sc.prefixes[domain].insert(p.prefix);
    };
    auto note_compare = [&](int domain, const Value& other, CmpOp op) {
        if (other.is_null()) return;
        if (op == CmpOp::Like)
            note_like(domain, other.constant().str);
        else
            note(domain, other.constant());
    };
    if (q) {
        for (const Atom& a : build_syntax_tree(*q).leaves) {
            if (a.relational) {
                const auto& rel = s.relations[a.rel];
                for (std::size_t p = 0; p < a.args.size(); ++p)
                    if (!a.args[p].is_var()) note(rel.attrs[p].domain, a.args[p].c);
                continue;
            }
            int domain = a.lhs.is_var() ? q->var_domain(a.lhs.var) : a.rhs.is_var() ? q->var_domain(a.rhs.var) : -1;
            if (!a.lhs.is_var() && a.op != CmpOp::Like) note(domain, a.lhs.c);
            if (!a.rhs.is_var()) {
                if (a.op == CmpOp::Like)
                    note_like(domain, a.rhs.c.str);
                else
                    note(domain, a.rhs.c);
            }
        }
    }
    for (std::size_t r = 0; r < i.tables.size(); ++r)
        for (const auto& t : i.tables[r])
            for (std::size_t p = 0; p < t.cells.size(); ++p)
                if (!t.cells[p].is_null()) note(s.relations[r].attrs[p].domain, t.cells[p].constant());
    for (const auto& c : i.conditions) {
        if (c.is_fact) {
            for (std::size_t p = 0; p < c.args.size(); ++p)
                if (!c.args[p].is_null()) note(s.relations[c.rel].attrs[p].domain, c.args[p].constant());
            continue;
        }
        if (c.lhs.is_null())
            note_compare(c.lhs.null().domain, c.rhs, c.op);
        else if (c.rhs.is_null() && c.op != CmpOp::Like)
            note(c.rhs.null().domain, c.lhs.constant());
        else if (c.op != CmpOp::Like) {
            note(-1, c.lhs.constant());
            note(-1, c.rhs.constant());
        }
    }
    for (const auto& n : i.nulls()) ++sc.null_count[n.domain];
    return sc;
}

// A string prefix type: the set of in-scope prefixes a value starts with. Every
// such set is determined by its longest element.
struct PrefixType {
    std::set<std::string> matched;
    std::string stem;
    char mark = '~';
};

std::vector<PrefixType> prefix_types(const std::set<std::string>& patterns) {
    auto starts = [](const std::string& s, const std::string& p) { return s.size() >= p.size() && s.compare(0, p.size(), p) == 0; };
    std::vector<std::string> stems{""};
    stems.insert(stems.end(), patterns.begin(), patterns.end());
    std::vector<PrefixType> out;
    std::set<std::set<std::string>> seen;
    for (const auto& stem : stems) {
        PrefixType t;
        t.stem = stem;
        for (const auto& p : patterns)
            if (starts(stem, p)) t.matched.insert(p);
        if (!seen.insert(t.matched).second) continue;
        std::set<char> forbidden;
        for (const auto& p : patterns)
            if (p.size() > stem.size() && starts(p, stem)) forbidden.insert(p[stem.size()]);
        static const std::string marks = "~#_!zqxjXQ0123456789";
        auto it = std::find_if(marks.begin(), marks.end(), [&](char c) { return !forbidden.count(c); });
        if (it == marks.end()) throw Error("no separator character for prefix type '" + stem + "'");
        t.mark = *it;
        out.push_back(std::move(t));
    }
    return out;
}

std::string witness_string(const PrefixType& t, int tag, const std::set<Constant>& avoid) {
    for (;; ++tag) {
        std::string s = t.stem + t.mark + std::to_string(tag);
        if (!avoid.count(Constant::string(s))) return s;
    }
}

Constant numeric_constant(const Rational& r, Kind k) { return Constant::number(r, k); }

}  // namespace

Pool adequate_pool(const Query* q, const CInstance& i) {
    const Schema& s = *i.schema;
    Scope sc = collect_scope(q, i);
    Pool pool(s.domains.size());
    for (std::size_t d = 0; d < s.domains.size(); ++d) {
        Kind kind = s.domains[d].kind;
        int f = sc.null_count[d] + 1;
        std::set<Constant> vals;
        if (kind == Kind::String) {
            vals = sc.constants[d];
            std::set<Constant> avoid = vals;
            for (const auto& t : prefix_types(sc.prefixes[d]))
                for (int k = 1; k <= f; ++k) vals.insert(Constant::string(witness_string(t, k, avoid)));
        } else {
            std::vector<Rational> b(sc.numeric.begin(), sc.numeric.end());
            auto add = [&](const Rational& r) { vals.insert(numeric_constant(r, kind)); };
            for (const auto& r : b)
                if (kind != Kind::Integer || integral(r)) add(r);
            if (b.empty()) {
                for (int k = 1; k <= f; ++k) add(Rational(k));
            } else if (kind == Kind::Integer) {
                Rational below = ceil_of(b.front()) - 1, above = floor_of(b.back()) + 1;
                for (int k = 0; k < f; ++k) {
                    add(below - k);
                    add(above + k);
                }
                for (std::size_t g = 0; g + 1 < b.size(); ++g) {
                    Rational lo = floor_of(b[g]) + 1, hi = ceil_of(b[g + 1]) - 1;
                    for (int k = 0; k < f; ++k) {
                        if (lo + k <= hi) add(lo + k);
                        if (hi - k >= lo) add(hi - k);
                    }
                }
            } else {
                for (int k = 1; k <= f; ++k) {
                    add(b.front() - k);
                    add(b.back() + k);
                }
                for (std::size_t g = 0; g + 1 < b.size(); ++g)
                    for (int k = 1; k <= f; ++k) add(b[g] + (b[g + 1] - b[g]) * Rational(k, f + 1));
            }
        }
        pool[d].assign(vals.begin(), vals.end());
    }
    return pool;
}

std::vector<GroundInstance> generic_worlds(const Query* q, const CInstance& i) {
    const Schema& s = *i.schema;
    Closure cl = solve(i);
    if (!cl.consistent) return {};
    Scope sc = collect_scope(q, i);
    for (const auto& n : i.nulls()) {
        Value r = cl.rep(Value(n));
        if (!r.is_null() && r.constant().numeric()) sc.numeric.insert(r.constant().num);
    }

    // Free classes: unbound nulls grouped by closure representative.
    std::map<Value, int> class_of;
    struct Class {
        Value rep;
        Kind kind = Kind::String;
        int domain = -1;
    };
    std::vector<Class> classes;
    std::vector<Null> nulls = i.nulls();
    for (const auto& n : nulls) {
        Value r = cl.rep(Value(n));
        if (!r.is_null() || class_of.count(r)) continue;
        class_of[r] = static_cast<int>(classes.size());
        classes.push_back({r, s.domains[n.domain].kind, n.domain});
    }
    for (const auto& n : nulls) {
        Value r = cl.rep(Value(n));
        if (r.is_null() && s.domains[n.domain].kind == Kind::Integer) classes[class_of[r]].kind = Kind::Integer;
    }

    // String classes choose a prefix type compatible with their LIKE conditions.
    std::vector<std::set<std::string>> pos(classes.size()), neg(classes.size());
    struct Order {
        int a, b;  // item ids; constants are encoded as -1 - index into `bounds`
    };
    std::vector<Rational> bounds(sc.numeric.begin(), sc.numeric.end());
    auto item = [&](const Value& v) -> std::optional<int> {
        Value r = cl.rep(v);
        if (r.is_null()) return class_of.at(r);
        if (!r.constant().numeric()) return std::nullopt;
        auto it = std::lower_bound(bounds.begin(), bounds.end(), r.constant().num);
        return -1 - static_cast<int>(it - bounds.begin());
    };
    std::vector<Order> orders;
    for (const auto& c : i.conditions) {
        if (c.is_fact) continue;
        if (c.op == CmpOp::Like) {
            Value r = cl.rep(c.lhs);
            if (!r.is_null()) continue;
            auto p = parse_like(c.rhs.constant().str);
            if (p.exact) continue;
            (c.negated ? neg : pos)[class_of.at(r)].insert(p.prefix);
        } else if (c.op == CmpOp::Lt || c.op == CmpOp::Le) {
            auto a = item(c.lhs), b = item(c.rhs);
            if (a && b && (*a >= 0 || *b >= 0)) orders.push_back({*a, *b});
        }
    }

    std::vector<int> string_classes, numeric_classes;
    std::vector<std::vector<PrefixType>> options(classes.size());
    std::vector<std::vector<PrefixType>> domain_types(s.domains.size());
    for (std::size_t d = 0; d < s.domains.size(); ++d)
        if (s.domains[d].kind == Kind::String) domain_types[d] = prefix_types(sc.prefixes[d]);
    for (std::size_t k = 0; k < classes.size(); ++k) {
        if (classes[k].kind != Kind::String) {
            numeric_classes.push_back(static_cast<int>(k));
            continue;
        }
        string_classes.push_back(static_cast<int>(k));
        for (const auto& t : domain_types[classes[k].domain]) {
            bool ok = std::includes(t.matched.begin(), t.matched.end(), pos[k].begin(), pos[k].end());
            for (const auto& n : neg[k]) ok = ok && !t.matched.count(n);
            if (ok) options[k].push_back(t);
        }
    }

    // Numeric order types: constants in fixed order, classes inserted one at a
    // time at every position that respects the order conditions placed so far.
    std::vector<std::map<int, Rational>> numeric_choices;
    {
        struct Entry {
            int id;  // class id, or -1 - constant index
        };
        std::vector<Entry> seq;
        for (std::size_t k = 0; k < bounds.size(); ++k) seq.push_back({-1 - static_cast<int>(k)});
        std::vector<bool> placed(classes.size(), false);
        auto position = [&](int id) {
            for (std::size_t p = 0; p < seq.size(); ++p)
                if (seq[p].id == id) return static_cast<int>(p);
            return -1;
        };
        auto realize = [&]() -> std::optional<std::map<int, Rational>> {
            std::map<int, Rational> out;
            std::size_t p = 0;
            while (p < seq.size()) {
                if (seq[p].id < 0) {
                    ++p;
                    continue;
                }
                std::size_t e = p;
                while (e < seq.size() && seq[e].id >= 0) ++e;
                std::optional<Rational> lo, hi;
                if (p > 0) lo = bounds[-1 - seq[p - 1].id];
                if (e < seq.size()) hi = bounds[-1 - seq[e].id];
                Rational prev = lo ? *lo : hi ? floor_of(*hi) - static_cast<long long>(e - p) - 1 : Rational(0);
                for (std::size_t k = p; k < e; ++k) {
                    int id = seq[k].id;
                    Rational v;
                    if (classes[id].kind == Kind::Integer) {
                        v = floor_of(prev) + 1;
                        if (hi && v >= *hi) return std::nullopt;
                    } else {
                        Rational upper = floor_of(prev) + 1;
                        if (hi && *hi < upper) upper = *hi;
                        v = (prev + upper) / 2;
                    }
                    out[id] = v;
                    prev = v;
                }
                p = e;
            }
            return out;
        };
        std::function<void(std::size_t)> place = [&](std::size_t k) {
            if (k == numeric_classes.size()) {
                if (auto r = realize()) numeric_choices.push_back(std::move(*r));
                return;
            }
            int id = numeric_classes[k];
            placed[id] = true;
            for (std::size_t p = 0; p <= seq.size(); ++p) {
                seq.insert(seq.begin() + static_cast<long>(p), Entry{id});
                bool ok = true;
                for (const auto& o : orders) {
                    if (o.a != id && o.b != id) continue;
                    bool ready = (o.a < 0 || placed[o.a]) && (o.b < 0 || placed[o.b]);
                    if (ready && position(o.a) >= position(o.b)) ok = false;
                }
                if (ok) place(k + 1);
                seq.erase(seq.begin() + static_cast<long>(p));
            }
            placed[id] = false;
        };
        place(0);
    }

    std::set<Constant> avoid;
    for (const auto& cs : sc.constants) avoid.insert(cs.begin(), cs.end());

    std::vector<GroundInstance> out;
    std::vector<const PrefixType*> chosen(classes.size(), nullptr);
    std::function<void(std::size_t)> pick = [&](std::size_t k) {
        if (k < string_classes.size()) {
            for (const auto& t : options[string_classes[k]]) {
                chosen[string_classes[k]] = &t;
                pick(k + 1);
            }
            return;
        }
        for (const auto& nc : numeric_choices) {
            Mapping mu;
            for (const auto& n : nulls) {
                Value r = cl.rep(Value(n));
                if (!r.is_null()) {
                    mu[n] = r.constant();
                    continue;
                }
                int id = class_of.at(r);
                if (classes[id].kind == Kind::String)
                    mu[n] = Constant::string(witness_string(*chosen[id], id + 1, avoid));
                else
                    mu[n] = Constant::number(nc.at(id), s.domains[n.domain].kind);
            }
            GroundInstance w = drc::apply(i, mu);
            bool ok = true;
            for (const auto& c : i.conditions) ok = ok && holds(c, mu, w);
            if (ok) out.push_back(std::move(w));
        }
    };
    pick(0);
    return out;
}

namespace {

Coverage all_leaves(const SyntaxTree& t) {
    Coverage c;
    for (int k = 0; k < t.leaf_count(); ++k) c.insert(k);
    return c;
}

Coverage general_intersection(const Query& q, const SyntaxTree& t, const CInstance& i) {
    Coverage acc = all_leaves(t);
    bool any = false;
    for_each_world(i, adequate_pool(&q, i), [&](const Mapping&, const GroundInstance& w) {
        any = true;
        acc = cov_ground_fast(q, t, w, acc);
        return !acc.empty();
    });
    if (!any) throw Error("cov_cinstance: the instance has no possible world");
    return acc;
}

}  // namespace

Coverage cov_cinstance_serial(const Query& q, const SyntaxTree& t, const CInstance& i) {
    auto worlds = generic_worlds(&q, i);
    if (worlds.empty()) return general_intersection(q, t, i);
    Coverage acc = all_leaves(t);
    for (const auto& w : worlds) {
        acc = cov_ground_fast(q, t, w, acc);
        if (acc.empty()) break;
    }
    return acc;
}

Coverage cov_cinstance(const Query& q, const SyntaxTree& t, const CInstance& i) {
#ifdef DRC_HAVE_OPENMP
    auto worlds = generic_worlds(&q, i);
    if (worlds.empty()) return general_intersection(q, t, i);
    if (worlds.size() < 8) {
        Coverage acc = all_leaves(t);
        for (const auto& w : worlds) acc = cov_ground_fast(q, t, w, acc);
        return acc;
    }
    Coverage acc = all_leaves(t);
    const long n = static_cast<long>(worlds.size());
#pragma omp parallel
    {
        Coverage local = all_leaves(t);
#pragma omp for schedule(dynamic, 4) nowait
        for (long w = 0; w < n; ++w)
            if (!local.empty()) local = cov_ground_fast(q, t, worlds[w], local);
#pragma omp critical(drc_cov_merge)
        {
            Coverage merged;
            std::set_intersection(acc.begin(), acc.end(), local.begin(), local.end(), std::inserter(merged, merged.begin()));
            acc.swap(merged);
        }
    }
    return acc;
#else
    return cov_cinstance_serial(q, t, i);
#endif
}

Coverage cov_cinstance(const Query& q, const CInstance& i) {
    Query n = normalize_query(q);
    return cov_cinstance(n, build_syntax_tree(n), i);
}

std::string TrackedReport::text() const {
    std::string s = "tracked=" + coverage_text(tracked) + " semantic=" + coverage_text(semantic);
    if (!missing.empty()) s += " missing=" + coverage_text({missing.begin(), missing.end()});
    if (!extra.empty()) s += " extra=" + coverage_text({extra.begin(), extra.end()});
    return s;
}

TrackedReport tracked_vs_semantic_check(const Query& q, const CInstance& i) {
    TrackedReport r;
    r.tracked = i.tracked;
    r.semantic = cov_cinstance(q, i);
    std::set_difference(r.tracked.begin(), r.tracked.end(), r.semantic.begin(), r.semantic.end(), std::back_inserter(r.missing));
    std::set_difference(r.semantic.begin(), r.semantic.end(), r.tracked.begin(), r.tracked.end(), std::back_inserter(r.extra));
    return r;
}

std::optional<Mapping> find_witness(const CInstance& i) {
    std::optional<Mapping> out;
    for_each_world(i, adequate_pool(nullptr, i), [&](const Mapping& mu, const GroundInstance&) {
        out = mu;
        return false;
    });
    return out;
}

}  // namespace drc
