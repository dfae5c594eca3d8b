#include "drc/chase.hpp"

#include <algorithm>

namespace drc {

std::vector<CInstance> seed_uncovered(const Query& q, const SyntaxTree& t, const std::vector<CInstance>& partial,
                                      const ChaseConfig& cfg, ChaseStats* stats) {
    Coverage covered;
    for (const auto& i : partial) {
        Coverage c = cov_cinstance(q, t, i);
        covered.insert(c.begin(), c.end());
    }
    std::vector<int> free = free_variables(q.formula);
    std::vector<CInstance> res;
    for (int id = 0; id < t.leaf_count(); ++id) {
        if (covered.count(id)) continue;
        const Atom& atom = t.leaves[id];
        CInstance seed = new_instance(q.schema);
        Homomorphism hs(q.vars.size()), h0(q.vars.size());
        auto bind = [&](const Term& term) {
            if (!term.is_var() || hs[term.var]) return;
            hs[term.var] = Value(seed.fresh_null(q.var_domain(term.var)));
            if (std::find(free.begin(), free.end(), term.var) != free.end()) h0[term.var] = hs[term.var];
        };
        if (atom.relational)
            for (const auto& a : atom.args) bind(a);
        else {
            bind(atom.lhs);
            bind(atom.rhs);
        }
        seed = add_to_ins(seed, {Literal{atom, id, false}}, hs);
        if (seed.search_size() > cfg.limit || !is_consistent(seed)) continue;
        ChaseConfig eo = cfg;
        eo.variant = is_conjunctive(cfg.variant) ? Variant::ConjEo : Variant::DisjEo;
        eo.on_emit = cfg.on_emit;
        Chase rerun(q, t, eo);
        auto part = rerun.run_base(seed, h0);
        if (stats) {
            stats->explored += rerun.stats().explored;
            stats->distinct_keys += rerun.stats().distinct_keys;
            stats->searches += rerun.stats().searches;
            stats->memo_hits += rerun.stats().memo_hits;
            stats->queue_peak = std::max(stats->queue_peak, rerun.stats().queue_peak);
            stats->timed_out = stats->timed_out || rerun.stats().timed_out;
        }
        res.insert(res.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return res;
}

std::vector<SolutionEntry> minimal_filter(const Query& q, const SyntaxTree& t, const std::vector<CInstance>& results) {
    struct Best {
        std::size_t first;  // first appearance of the coverage
        const CInstance* inst;
        std::string key;
        Coverage cov;
    };
    std::map<Coverage, Best> groups;
    for (std::size_t k = 0; k < results.size(); ++k) {
        const CInstance& i = results[k];
        Coverage c = cov_cinstance(q, t, i);
        auto it = groups.find(c);
        if (it == groups.end()) {
            groups.emplace(c, Best{k, &i, canonical_key(i), c});
            continue;
        }
        Best& b = it->second;
        if (i.size() > b.inst->size()) continue;
        std::string key = canonical_key(i);
        if (i.size() < b.inst->size() || key < b.key) {
            b.inst = &i;
            b.key = std::move(key);
        }
    }
    std::vector<const Best*> order;
    for (const auto& [c, b] : groups) order.push_back(&b);
    std::sort(order.begin(), order.end(), [](const Best* a, const Best* b) { return a->first < b->first; });
    std::vector<SolutionEntry> out;
    for (const Best* b : order) out.push_back({*b->inst, b->cov});
    return out;
}

ChaseResult characterize(const Query& q, const ChaseConfig& cfg) {
    SyntaxTree t = build_syntax_tree(q);
    Chase chase(q, t, cfg);
    ChaseResult r;
    r.raw = chase.run();
    r.stats = chase.stats();
    r.solution = minimal_filter(q, t, r.raw);
    return r;
}

}  // namespace drc
