#include "drc/chase.hpp"

#include <deque>
#include <unordered_set>

namespace drc {

std::string_view variant_name(Variant v) {
    switch (v) {
    case Variant::DisjNaive: return "disj-naive";
    case Variant::DisjEo: return "disj-eo";
    case Variant::DisjAdd: return "disj-add";
    case Variant::ConjNaive: return "conj-naive";
    case Variant::ConjEo: return "conj-eo";
    case Variant::ConjAdd: return "conj-add";
    }
    return "?";
}

std::optional<Variant> parse_variant(std::string_view s) {
    for (Variant v : {Variant::DisjNaive, Variant::DisjEo, Variant::DisjAdd, Variant::ConjNaive, Variant::ConjEo,
                      Variant::ConjAdd})
        if (variant_name(v) == s) return v;
    return std::nullopt;
}

bool is_conjunctive(Variant v) { return v == Variant::ConjNaive || v == Variant::ConjEo || v == Variant::ConjAdd; }
bool is_eo(Variant v) { return v != Variant::DisjNaive && v != Variant::ConjNaive; }
bool is_add(Variant v) { return v == Variant::DisjAdd || v == Variant::ConjAdd; }

int default_limit(const SyntaxTree& t) { return 2 * t.leaf_count(); }

Chase::Chase(const Query& q, const SyntaxTree& t, ChaseConfig cfg)
    : q_(q), tree_(t), cfg_(std::move(cfg)), start_(std::chrono::steady_clock::now()) {}

bool Chase::out_of_time() {
    if (cfg_.timeout <= 0) return false;
    if (!stats_.timed_out) {
        std::chrono::duration<double> d = std::chrono::steady_clock::now() - start_;
        stats_.timed_out = d.count() > cfg_.timeout;
    }
    return stats_.timed_out;
}

namespace {

std::vector<Null> pinned_nulls(const Homomorphism& h) {
    std::vector<Null> out;
    for (const auto& v : h)
        if (v && v->is_null()) out.push_back(v->null());
    return out;
}

std::string h_text(const Homomorphism& h, const CInstance& i) {
    std::string s;
    for (const auto& v : h) s += (v ? i.value_text(*v) : std::string("_")) + ",";
    return s;
}

}  // namespace

std::string Chase::memo_key(const NodePtr& t, const Homomorphism& h, const CInstance& i) const {
    std::string k = std::to_string(reinterpret_cast<std::uintptr_t>(t.get())) + "|" + h_text(h, i) + "|" + exact_key(i) + "|";
    for (int id : i.tracked) k += std::to_string(id) + ",";
    return k;
}

std::vector<CInstance> Chase::tree_chase_bfs(const NodePtr& t, const Homomorphism& h_in, const CInstance& i_in) {
    ++stats_.searches;
    Homomorphism h = h_in;
    h.resize(q_.vars.size());
    CInstance i0 = i_in;
    for (int v : t->free)
        if (!h[v]) h[v] = Value(i0.fresh_null(q_.var_domain(v)));

    std::string mkey;
    if (cfg_.memoize && depth_ > 0) {
        mkey = memo_key(t, h, i0);
        auto it = memo_.find(mkey);
        if (it != memo_.end()) {
            ++stats_.memo_hits;
            return it->second;
        }
    }

    std::vector<Null> pins = pinned_nulls(h);
    std::vector<CInstance> res;
    std::deque<std::pair<CInstance, std::string>> queue;
    std::unordered_set<std::string> visited;
    queue.emplace_back(i0, canonical_key(i0, pins));
    bool top = depth_ == 0;
    ++depth_;
    while (!queue.empty()) {
        if (out_of_time()) break;
        stats_.queue_peak = std::max(stats_.queue_peak, static_cast<long>(queue.size()));
        auto [i, key] = std::move(queue.front());
        queue.pop_front();
        if (visited.count(key) || i.search_size() > cfg_.limit) continue;
        visited.insert(key);
        ++stats_.distinct_keys;
        ++stats_.explored;
        if (tree_sat(q_, t, i, h, cfg_.sat) && is_consistent(i)) {
            if (top) {
                std::chrono::duration<double> d = std::chrono::steady_clock::now() - start_;
                stats_.first_emit.push_back(d.count());
                if (cfg_.on_emit) cfg_.on_emit(i);
            }
            res.push_back(std::move(i));
            continue;
        }
        for (auto& j : tree_chase_step(t, i, h)) {
            if (j.search_size() > cfg_.limit || !is_consistent(j)) continue;
            std::string k = canonical_key(j, pins);
            if (visited.count(k)) continue;
            queue.emplace_back(std::move(j), std::move(k));
        }
    }
    --depth_;
    if (!mkey.empty() && !stats_.timed_out) memo_[mkey] = res;
    return res;
}

std::vector<CInstance> Chase::tree_chase_step(const NodePtr& t, const CInstance& i, const Homomorphism& h) {
    if (out_of_time()) return {};
    if (!t->has_quantifier) {
        std::vector<CInstance> res;
        for (const auto& conj : tree_to_conjunctions(t)) {
            CInstance j = add_to_ins(i, conj, h);
            if (j.search_size() <= cfg_.limit && is_consistent(j)) res.push_back(std::move(j));
        }
        return res;
    }
    switch (t->kind) {
    case NKind::And: return handle_conjunction(t, i, h);
    case NKind::Or: return handle_disjunction(t, i, h);
    case NKind::Exists: return handle_existential(t, i, h);
    case NKind::Forall: return handle_universal(t, i, h);
    case NKind::Leaf: break;
    }
    return {};
}

std::vector<CInstance> Chase::handle_conjunction(const NodePtr& t, const CInstance& i, const Homomorphism& h) {
    std::vector<CInstance> res;
    for (const auto& j1 : tree_chase_step(t->left, i, h)) {
        if (!is_consistent(j1)) continue;
        for (auto& k : tree_chase_bfs(t->right, h, j1))
            if (is_consistent(k)) res.push_back(std::move(k));
    }
    return res;
}

std::vector<CInstance> Chase::handle_disjunction(const NodePtr& t, const CInstance& i, const Homomorphism& h) {
    std::vector<CInstance> res;
    for (const auto& c : expand_disjunction(t)) {
        auto part = tree_chase_bfs(c, h, i);
        res.insert(res.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return res;
}

std::vector<CInstance> Chase::handle_existential(const NodePtr& t, const CInstance& i, const Homomorphism& h) {
    std::vector<CInstance> res;
    int domain = q_.var_domain(t->var);
    Homomorphism g = h;
    g.resize(q_.vars.size());
    for (const auto& m : i.members[domain]) {
        g[t->var] = m;
        auto part = tree_chase_bfs(t->left, g, i);
        res.insert(res.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    CInstance j = i;
    g[t->var] = Value(j.fresh_null(domain));
    auto part = tree_chase_bfs(t->left, g, j);
    res.insert(res.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    return res;
}

std::vector<CInstance> Chase::handle_universal(const NodePtr& t, const CInstance& i, const Homomorphism& h) {
    std::vector<CInstance> res;
    int domain = q_.var_domain(t->var);
    Homomorphism g = h;
    g.resize(q_.vars.size());
    std::vector<CInstance> ilist{i};
    const auto registry = i.members[domain];
    if (registry.empty()) {
        res.push_back(i);
    } else {
        // Each member's solutions extend every instance accumulated so far.
        for (const auto& m : registry) {
            g[t->var] = m;
            std::vector<CInstance> cur;
            for (const auto& j1 : ilist)
                for (auto& k : tree_chase_bfs(t->left, g, j1))
                    if (is_consistent(k)) cur.push_back(std::move(k));
            ilist = std::move(cur);
            if (ilist.empty()) break;
        }
        res.insert(res.end(), ilist.begin(), ilist.end());
    }
    if (is_eo(cfg_.variant)) return res;
    for (const auto& j1 : ilist) {
        CInstance j = j1;
        g[t->var] = Value(j.fresh_null(domain));
        for (auto& k : tree_chase_bfs(t->left, g, j))
            if (is_consistent(k)) res.push_back(std::move(k));
    }
    return res;
}

std::vector<CInstance> Chase::run_base(const CInstance& i0, const Homomorphism& h0) {
    if (!is_conjunctive(cfg_.variant)) return tree_chase_bfs(tree_.root, h0, i0);
    std::vector<CInstance> res;
    for (const auto& c : disjtree_to_conjtrees(tree_.root)) {
        auto part = tree_chase_bfs(c, h0, i0);
        res.insert(res.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return res;
}

std::vector<CInstance> Chase::run() {
    start_ = std::chrono::steady_clock::now();
    std::vector<CInstance> res;
    if (cfg_.limit >= 0) res = run_base(new_instance(q_.schema), {});
    if (is_add(cfg_.variant) && !stats_.timed_out) {
        auto more = seed_uncovered(q_, tree_, res, cfg_, &stats_);
        res.insert(res.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    }
    std::chrono::duration<double> d = std::chrono::steady_clock::now() - start_;
    stats_.wall_seconds = d.count();
    return res;
}

}  // namespace drc
