#include "drc/cinstance.hpp"

namespace drc {

Constant apply(const Mapping& mu, const Value& v) {
    if (!v.is_null()) return v.constant();
    auto it = mu.find(v.null());
    if (it == mu.end()) throw Error("mapping is not total");
    return it->second;
}

GroundInstance apply(const CInstance& i, const Mapping& mu) {
    GroundInstance k = GroundInstance::empty(i.schema);
    for (std::size_t r = 0; r < i.tables.size(); ++r)
        for (const auto& t : i.tables[r]) {
            std::vector<Constant> row;
            for (const auto& v : t.cells) row.push_back(drc::apply(mu, v));
            k.tables[r].insert(std::move(row));
        }
    return k;
}

bool compare_holds(const Constant& l, CmpOp op, const Constant& r, bool negated) {
    switch (op) {
    case CmpOp::Eq: return l == r;
    case CmpOp::Ne: return !(l == r);
    case CmpOp::Lt: return l < r;
    case CmpOp::Le: return l <= r;
    case CmpOp::Gt: return l > r;
    case CmpOp::Ge: return l >= r;
    case CmpOp::Like: return like_matches(l.str, parse_like(r.str)) != negated;
    }
    return false;
}

bool holds(const Condition& c, const Mapping& mu, const GroundInstance& k) {
    if (c.is_fact) {
        std::vector<Constant> t;
        for (const auto& v : c.args) t.push_back(drc::apply(mu, v));
        return !k.contains(c.rel, t);
    }
    return compare_holds(drc::apply(mu, c.lhs), c.op, drc::apply(mu, c.rhs), c.negated);
}

bool satisfies_keys(const GroundInstance& k) {
    for (const auto& key : k.schema->keys) {
        std::map<std::vector<Constant>, const std::vector<Constant>*> seen;
        for (const auto& t : k.tables[key.rel]) {
            std::vector<Constant> proj;
            for (int a : key.attrs) proj.push_back(t[a]);
            auto [it, fresh] = seen.emplace(proj, &t);
            if (!fresh && *it->second != t) return false;
        }
    }
    return true;
}

void for_each_world(const CInstance& i, const Pool& pool,
                    const std::function<bool(const Mapping&, const GroundInstance&)>& visit) {
    std::vector<Null> nulls = i.nulls();
    for (const auto& n : nulls)
        if (n.domain >= static_cast<int>(pool.size()) || pool[n.domain].empty())
            throw Error("pool has no values for domain '" + i.schema->domains[n.domain].name + "'");

    // Comparisons are checked as soon as their last null is assigned; negated
    // facts need the whole world and are checked at the leaves.
    std::map<Null, int> pos;
    for (std::size_t k = 0; k < nulls.size(); ++k) pos[nulls[k]] = static_cast<int>(k);
    std::vector<std::vector<const Condition*>> ready(nulls.size() + 1);
    std::vector<const Condition*> facts;
    for (const auto& c : i.conditions) {
        if (c.is_fact) {
            facts.push_back(&c);
            continue;
        }
        int last = 0;
        for (const Value* v : {&c.lhs, &c.rhs})
            if (v->is_null()) last = std::max(last, pos[v->null()] + 1);
        ready[last].push_back(&c);
    }
    GroundInstance scratch = GroundInstance::empty(i.schema);

    Mapping mu;
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (stop) return;
        for (const Condition* c : ready[k])
            if (!holds(*c, mu, scratch)) return;
        if (k == nulls.size()) {
            GroundInstance w = drc::apply(i, mu);
            for (const Condition* c : facts)
                if (!holds(*c, mu, w)) return;
            if (!satisfies_keys(w)) return;
            if (!visit(mu, w)) stop = true;
            return;
        }
        for (const auto& val : pool[nulls[k].domain]) {
            mu[nulls[k]] = val;
            rec(k + 1);
            if (stop) return;
        }
        mu.erase(nulls[k]);
    };
    rec(0);
}

std::vector<GroundInstance> enumerate_worlds(const CInstance& i, const Pool& pool) {
    std::vector<GroundInstance> out;
    std::set<std::vector<std::set<std::vector<Constant>>>> seen;
    for_each_world(i, pool, [&](const Mapping&, const GroundInstance& w) {
        if (seen.insert(w.tables).second) out.push_back(w);
        return true;
    });
    return out;
}

}  // namespace drc
