#include "dexr/chase.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "dexr/error.hpp"
#include "dexr/satisfaction.hpp"
#include "dexr/syntax.hpp"

namespace dexr {

Constant FreshNames::next(const Structure& avoid) {
  while (true) {
    Constant c(prefix_ + std::to_string(++counter_));
    if (!avoid.domain().contains(c)) return c;
  }
}

bool is_active(const Structure& i, const Dexr& rule, const Assignment& match) {
  return !head_holds(i, rule, match);
}

std::vector<Trigger> active_triggers(const Structure& i, std::span<const Dexr> rules) {
  std::vector<Trigger> out;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    std::vector<Assignment> matches;
    for_each_match(rules[r].body(), i, {}, [&](const Assignment& h) {
      if (!head_holds(i, rules[r], h)) matches.push_back(h);
      return true;
    });
    std::sort(matches.begin(), matches.end());
    for (auto& h : matches) out.push_back(Trigger{r, std::move(h)});
  }
  return out;
}

namespace {

Tuple ground(const Atom& atom, const Assignment& h) {
  Tuple t;
  for (const auto& term : atom.args) t.push_back(term.is_variable() ? h.at(term.name) : term.name);
  return t;
}

std::vector<Fact> disjunct_facts(const Structure& i, const ExistentialConjunction& d, const Assignment& match,
                                 FreshNames& fresh) {
  Assignment h = match;
  Structure scratch = i;
  for (const auto& z : d.existentials) {
    const Constant c = fresh.next(scratch);
    scratch.add_constant(c);
    h[z] = c;
  }
  std::vector<Fact> out;
  for (const auto& a : d.atoms) out.push_back(Fact{a.relation, ground(a, h)});
  return out;
}

}  // namespace

std::vector<Structure> apply_trigger(const Structure& i, const Dexr& rule, const Assignment& match,
                                     FreshNames& fresh) {
  require_same_schema(i.schema(), rule.schema(), "apply_trigger");
  for (const auto& v : rule.universal_variables()) {
    if (!match.contains(v)) throw Error(ErrorKind::NotATrigger, "match does not bind " + v.str());
  }
  for (const auto& a : rule.body()) {
    if (!i.contains(a.relation, ground(a, match))) {
      throw Error(ErrorKind::NotATrigger, "match does not map the body into the structure");
    }
  }
  std::vector<Structure> out;
  for (const auto& d : rule.head()) {
    Structure child = i;
    for (const auto& f : disjunct_facts(i, d, match, fresh)) child.add_fact(f);
    out.push_back(std::move(child));
  }
  return out;
}

namespace {

struct Work {
  int node = 0;
  Structure structure;
  std::vector<Trigger> pending;
  std::vector<std::size_t> path;
  int depth = 0;
};

// Keeps the surviving pending triggers in their old order and appends newly
// active ones.
std::vector<Trigger> refresh_pending(const std::vector<Trigger>& old, std::vector<Trigger> active) {
  const std::set<Trigger> now(active.begin(), active.end());
  std::vector<Trigger> out;
  std::set<Trigger> kept;
  for (const auto& t : old) {
    if (now.contains(t)) {
      out.push_back(t);
      kept.insert(t);
    }
  }
  for (auto& t : active) {
    if (!kept.contains(t)) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

ChaseOutcome chase(const Structure& start, std::span<const Dexr> rules, const ChaseOptions& options) {
  for (const auto& r : rules) require_same_schema(start.schema(), r.schema(), "chase");
  ChaseOutcome outcome;
  ChaseTree tree{start.schema(), {}};
  auto new_node = [&](int parent, int depth, std::optional<Trigger> trig, std::size_t disjunct,
                      std::vector<Fact> added, const Structure& s) {
    ++outcome.nodes;
    if (!options.keep_tree) return -1;
    tree.nodes.push_back(ChaseNode{parent, depth, std::move(trig), disjunct, std::move(added), s, {},
                                   NodeStatus::Pending});
    if (parent >= 0) tree.nodes[parent].children.push_back(static_cast<int>(tree.nodes.size() - 1));
    return static_cast<int>(tree.nodes.size() - 1);
  };
  auto mark = [&](int node, NodeStatus status) {
    if (node >= 0) tree.nodes[node].status = status;
  };

  FreshNames fresh;
  std::deque<Work> queue;
  const int root = new_node(-1, 0, std::nullopt, 0, start.facts(), start);
  queue.push_back(Work{root, start, {}, {}, 0});

  while (!queue.empty()) {
    Work w = std::move(queue.front());
    queue.pop_front();
    if (options.max_saturated > 0 && outcome.saturated.size() >= options.max_saturated) {
      outcome.stopped_early = true;
      break;
    }
    if (options.prune && options.prune(w.structure)) {
      ++outcome.closed;
      outcome.max_closed_depth = std::max(outcome.max_closed_depth, w.depth);
      mark(w.node, NodeStatus::Closed);
      continue;
    }
    w.pending = refresh_pending(w.pending, active_triggers(w.structure, rules));
    if (w.pending.empty()) {
      mark(w.node, NodeStatus::Saturated);
      outcome.saturated.push_back(ChaseResult{std::move(w.structure), std::move(w.path), w.depth});
      continue;
    }
    const Trigger trig = w.pending.front();
    const Dexr& rule = rules[trig.rule];
    const bool over_budget = w.depth >= options.budget.max_depth ||
                             static_cast<int>(w.structure.domain().size()) > options.budget.max_domain ||
                             outcome.nodes + rule.head().size() > static_cast<std::size_t>(options.budget.max_nodes);
    if (over_budget) {
      mark(w.node, NodeStatus::Truncated);
      outcome.truncated.push_back(ChaseResult{std::move(w.structure), std::move(w.path), w.depth});
      continue;
    }
    mark(w.node, NodeStatus::Expanded);
    for (std::size_t d = 0; d < rule.head().size(); ++d) {
      Structure child = w.structure;
      std::vector<Fact> added;
      for (const auto& f : disjunct_facts(w.structure, rule.head()[d], trig.match, fresh)) {
        if (child.add_fact(f)) added.push_back(f);
      }
      const int node = new_node(w.node, w.depth + 1, trig, d, added, child);
      auto path = w.path;
      path.push_back(d);
      std::vector<Trigger> pending(w.pending.begin() + 1, w.pending.end());
      queue.push_back(Work{node, std::move(child), std::move(pending), std::move(path), w.depth + 1});
    }
  }
  if (!queue.empty()) outcome.stopped_early = true;
  if (options.keep_tree) outcome.tree = std::move(tree);
  return outcome;
}

std::string tree_text(const ChaseTree& tree) {
  std::string out;
  if (tree.nodes.empty()) return out;
  const Schema& schema = *tree.schema;
  auto status_text = [](NodeStatus s) -> std::string {
    switch (s) {
      case NodeStatus::Saturated: return "  [saturated]";
      case NodeStatus::Truncated: return "  [truncated]";
      case NodeStatus::Closed: return "  [closed]";
      case NodeStatus::Pending: return "  [unexplored]";
      case NodeStatus::Expanded: return "";
    }
    return "";
  };
  std::vector<std::pair<int, int>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [id, indent] = stack.back();
    stack.pop_back();
    const auto& n = tree.nodes[id];
    std::string line(static_cast<std::size_t>(indent) * 2, ' ');
    line += std::to_string(n.depth) + "  ";
    if (n.trigger) {
      line += std::to_string(n.trigger->rule + 1) + "  " + std::to_string(n.disjunct + 1) + "  ";
    } else {
      line += "-  -  ";
    }
    std::string facts;
    for (const auto& f : n.added) facts += (facts.empty() ? "+" : " +") + to_text(f, schema);
    line += facts.empty() ? "+{}" : facts;
    out += line + status_text(n.status) + "\n";
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back({*it, indent + 1});
  }
  return out;
}

}  // namespace dexr
