#pragma once

#include "drc/cinstance.hpp"
#include "drc/solver.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace drc {

using OutputTuple = std::vector<Constant>;
using Assignment = std::vector<std::optional<Constant>>;  // indexed by query variable

// Ground evaluation: output tuples over the typed active domain.
// Both convenience overloads normalize the query first.
std::set<OutputTuple> eval_ground(const Query& q, const GroundInstance& k);
std::set<OutputTuple> eval_ground(const Query& q, const SyntaxTree& t, const GroundInstance& k);
// Truth of the tree under a total assignment of its free variables.
bool eval_node(const Query& q, const NodePtr& n, const GroundInstance& k, Assignment& a);

// Coverage of a ground instance by literal recursion over the tree: union over
// satisfying outputs, union over both children, union over all typed constants
// at quantifiers.
Coverage cov_ground(const Query& q, const GroundInstance& k);
Coverage cov_ground(const Query& q, const SyntaxTree& t, const GroundInstance& k);
// Same result computed per leaf: a leaf is covered iff some assignment of its
// enclosing quantified variables makes it true under a satisfying output.
// Only leaves in `candidates` are tested when given.
Coverage cov_ground_fast(const Query& q, const SyntaxTree& t, const GroundInstance& k,
                         const std::optional<Coverage>& candidates = std::nullopt);

struct TreeSatOptions {
    bool entailment = false;  // comparison leaves also accept conditions entailed by φ
};

// Symbolic satisfaction of the tree by a c-instance under a partial homomorphism.
bool tree_sat(const Query& q, const NodePtr& t, const CInstance& i, const Homomorphism& h,
              const TreeSatOptions& opts = {});
bool tree_sat(const Query& q, const SyntaxTree& t, const CInstance& i, const Homomorphism& h = {},
              const TreeSatOptions& opts = {});

// Per-domain finite pool: constants of i and q plus fresh values realizing every
// order type around the numeric constants and every prefix type of the LIKE
// patterns in scope.
Pool adequate_pool(const Query* q, const CInstance& i);

// One world per realizable type of the instance under unique names: nulls in
// different equality classes get distinct values, distinct from constants.
std::vector<GroundInstance> generic_worlds(const Query* q, const CInstance& i);

// Common coverage of all worlds. Throws Error when the instance has no world.
Coverage cov_cinstance(const Query& q, const CInstance& i);
Coverage cov_cinstance(const Query& q, const SyntaxTree& t, const CInstance& i);
Coverage cov_cinstance_serial(const Query& q, const SyntaxTree& t, const CInstance& i);

struct TrackedReport {
    Coverage tracked, semantic;
    std::vector<int> missing;  // tracked but not semantic
    std::vector<int> extra;    // semantic but not tracked
    bool equal() const { return missing.empty() && extra.empty(); }
    std::string text() const;
};
TrackedReport tracked_vs_semantic_check(const Query& q, const CInstance& i);

// A satisfying null mapping within the adequate pool, if one exists.
std::optional<Mapping> find_witness(const CInstance& i);

std::string coverage_text(const Coverage& c);  // "{0,1,4}"

}  // namespace drc
