#pragma once

#include "drc/eval.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace drc {

enum class Variant { DisjNaive, DisjEo, DisjAdd, ConjNaive, ConjEo, ConjAdd };

std::string_view variant_name(Variant v);
std::optional<Variant> parse_variant(std::string_view s);
bool is_conjunctive(Variant v);
bool is_eo(Variant v);   // universal quantifiers never create fresh nulls
bool is_add(Variant v);  // EO run followed by reruns seeded with uncovered leaves

struct ChaseConfig {
    Variant variant = Variant::DisjAdd;
    int limit = 10;        // bound on core tuples plus conditions
    double timeout = 0;    // seconds; 0 disables
    bool memoize = true;   // reuse sub-search results for identical states
    TreeSatOptions sat{true};  // entailed comparisons count as satisfied, so none are re-added
    std::function<void(const CInstance&)> on_emit;  // top-level emissions, in order
};

struct ChaseStats {
    long explored = 0;       // instances popped and examined
    long distinct_keys = 0;  // canonical keys entered into visited sets
    long queue_peak = 0;
    long searches = 0;       // breadth-first searches started
    long memo_hits = 0;
    double wall_seconds = 0;
    bool timed_out = false;
    std::vector<double> first_emit;  // seconds since start, per top-level emission
};

struct SolutionEntry {
    CInstance instance;
    Coverage coverage;
};

struct ChaseResult {
    std::vector<SolutionEntry> solution;
    ChaseStats stats;
    std::vector<CInstance> raw;  // every emitted instance before minimality
};

int default_limit(const SyntaxTree& t);

class Chase {
public:
    Chase(const Query& q, const SyntaxTree& t, ChaseConfig cfg);

    // Breadth-first search for instances satisfying subtree `t` under h0.
    std::vector<CInstance> tree_chase_bfs(const NodePtr& t, const Homomorphism& h0, const CInstance& i0);
    // One expansion step dispatched on the root of `t`.
    std::vector<CInstance> tree_chase_step(const NodePtr& t, const CInstance& i, const Homomorphism& h);
    std::vector<CInstance> handle_conjunction(const NodePtr& t, const CInstance& i, const Homomorphism& h);
    std::vector<CInstance> handle_disjunction(const NodePtr& t, const CInstance& i, const Homomorphism& h);
    std::vector<CInstance> handle_existential(const NodePtr& t, const CInstance& i, const Homomorphism& h);
    std::vector<CInstance> handle_universal(const NodePtr& t, const CInstance& i, const Homomorphism& h);

    // The configured variant without the seeding reruns.
    std::vector<CInstance> run_base(const CInstance& i0, const Homomorphism& h0);
    // The configured variant end to end, before minimality.
    std::vector<CInstance> run();

    const ChaseStats& stats() const { return stats_; }
    bool timed_out() const { return stats_.timed_out; }

private:
    const Query& q_;
    const SyntaxTree& tree_;
    ChaseConfig cfg_;
    ChaseStats stats_;
    std::chrono::steady_clock::time_point start_;
    int depth_ = 0;
    std::map<std::string, std::vector<CInstance>> memo_;

    bool out_of_time();
    std::string memo_key(const NodePtr& t, const Homomorphism& h, const CInstance& i) const;
};

// Leaves not covered by any partial result, each seeded into a fresh instance
// and chased again with the EO form of the variant.
std::vector<CInstance> seed_uncovered(const Query& q, const SyntaxTree& t, const std::vector<CInstance>& partial,
                                      const ChaseConfig& cfg, ChaseStats* stats = nullptr);

// Groups results by coverage and keeps the smallest instance per group (ties
// by canonical key), in order of first appearance.
std::vector<SolutionEntry> minimal_filter(const Query& q, const SyntaxTree& t, const std::vector<CInstance>& results);

// Full pipeline: chase with the configured variant, then minimal_filter.
ChaseResult characterize(const Query& q, const ChaseConfig& cfg);

// Conjunctive queries with negation: only ∃, ∧ and negated leaves.
bool is_cq_neg(const Query& q);
// The single universal instance of a safe CQ¬ query. Throws Error otherwise.
CInstance cq_neg_universal(const Query& q);

}  // namespace drc
