#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dexr/homs.hpp"
#include "dexr/rule.hpp"
#include "dexr/structure.hpp"

namespace dexr {

struct ChaseBudget {
  int max_depth = 32;
  int max_nodes = 20000;
  int max_domain = 64;
};

/// A rule of Σ (by index) together with a body match. Empty-body rules have
/// the empty match.
struct Trigger {
  std::size_t rule = 0;
  Assignment match;

  friend bool operator==(const Trigger&, const Trigger&) = default;
  friend auto operator<=>(const Trigger&, const Trigger&) = default;
};

/// Hands out _n1, _n2, ... skipping names the structure already uses.
class FreshNames {
 public:
  explicit FreshNames(std::string prefix = "_n") : prefix_(std::move(prefix)) {}
  Constant next(const Structure& avoid);

 private:
  std::string prefix_;
  long counter_ = 0;
};

/// Whether no head disjunct extends `match` into `i`.
bool is_active(const Structure& i, const Dexr& rule, const Assignment& match);

/// Active triggers ordered by rule index, then by match.
std::vector<Trigger> active_triggers(const Structure& i, std::span<const Dexr> rules);

/// One child per head disjunct, existentials mapped to fresh constants.
/// Throws Error(NotATrigger) if `match` does not send the body into `i`.
std::vector<Structure> apply_trigger(const Structure& i, const Dexr& rule, const Assignment& match,
                                     FreshNames& fresh);

enum class NodeStatus { Expanded, Saturated, Truncated, Closed, Pending };

struct ChaseNode {
  int parent = -1;
  int depth = 0;
  /// Trigger applied at the parent to create this node.
  std::optional<Trigger> trigger;
  std::size_t disjunct = 0;
  std::vector<Fact> added;
  Structure structure;
  std::vector<int> children;
  NodeStatus status = NodeStatus::Pending;
};

struct ChaseTree {
  SchemaPtr schema;
  /// Node 0 is the root.
  std::vector<ChaseNode> nodes;
};

struct ChaseResult {
  Structure structure;
  /// Disjunct index chosen at each step from the root.
  std::vector<std::size_t> path;
  int depth = 0;
};

struct ChaseOptions {
  ChaseBudget budget;
  bool keep_tree = false;
  /// Closes a branch as soon as it returns true; facts only grow along a
  /// branch, so callers use it for goals already reached or for dead ends.
  std::function<bool(const Structure&)> prune;
  /// Stop after this many saturated results (0: no limit).
  std::size_t max_saturated = 0;
};

struct ChaseOutcome {
  std::vector<ChaseResult> saturated;
  /// Leaves cut off by the budget, with their structures.
  std::vector<ChaseResult> truncated;
  std::size_t closed = 0;
  int max_closed_depth = 0;
  std::size_t nodes = 0;
  /// True when max_saturated ended the run with work left.
  bool stopped_early = false;
  std::optional<ChaseTree> tree;

  std::size_t truncated_count() const { return truncated.size(); }
  /// Every branch ended in a saturated or closed leaf.
  bool complete() const { return truncated.empty() && !stopped_early; }
};

/// Breadth-first restricted disjunctive chase. Within a branch, pending active
/// triggers are kept in discovery order and the oldest still-active one is
/// applied next.
ChaseOutcome chase(const Structure& start, std::span<const Dexr> rules, const ChaseOptions& options = {});

/// Indented dump, one node per line: depth, rule number, disjunct number and
/// the facts the step added.
std::string tree_text(const ChaseTree& tree);

}  // namespace dexr
