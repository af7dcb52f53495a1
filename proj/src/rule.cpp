#include "dexr/rule.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "dexr/error.hpp"

namespace dexr {

std::vector<Variable> variables_of(std::span<const Atom> atoms) {
  std::vector<Variable> out;
  std::set<Variable> seen;
  for (const auto& a : atoms) {
    for (const auto& t : a.args) {
      if (t.is_variable() && seen.insert(t.name).second) out.push_back(t.name);
    }
  }
  return out;
}

std::vector<Constant> constants_of(std::span<const Atom> atoms) {
  std::vector<Constant> out;
  std::set<Constant> seen;
  for (const auto& a : atoms) {
    for (const auto& t : a.args) {
      if (t.is_constant() && seen.insert(t.name).second) out.push_back(t.name);
    }
  }
  return out;
}

void check_atom(const Schema& schema, const Atom& atom) {
  if (atom.relation >= schema.size()) {
    throw Error(ErrorKind::UnknownRelation, "relation index " + std::to_string(atom.relation) + " not in schema");
  }
  if (static_cast<int>(atom.args.size()) != schema.arity(atom.relation)) {
    throw Error(ErrorKind::Arity, "relation " + schema.name(atom.relation) + " expects " +
                                      std::to_string(schema.arity(atom.relation)) + " arguments, got " +
                                      std::to_string(atom.args.size()));
  }
}

namespace {

// Canonical keys. A variable is encoded by its index: universal variables use
// 0..n-1, existential variables kExistential+j. Equalities use relation -1.
constexpr int kExistential = 1 << 20;
constexpr std::size_t kMaxExhaustiveUniversals = 7;
constexpr std::size_t kMaxExhaustiveExistentials = 6;

using AtomKey = std::vector<int>;
using DisjunctKey = std::vector<AtomKey>;

struct RuleKey {
  std::vector<AtomKey> body;
  std::vector<DisjunctKey> head;

  friend auto operator<=>(const RuleKey&, const RuleKey&) = default;
};

AtomKey encode(const Atom& atom, const std::map<Variable, int>& codes) {
  AtomKey key;
  key.reserve(atom.args.size() + 1);
  key.push_back(static_cast<int>(atom.relation));
  for (const auto& t : atom.args) key.push_back(codes.at(t.name));
  return key;
}

template <class F>
void for_each_permutation(std::size_t n, std::size_t exhaustive_limit, F&& f) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (n > exhaustive_limit) {
    f(perm);
    return;
  }
  do {
    f(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

DisjunctKey conjunction_key(const ExistentialConjunction& conj, const std::map<Variable, int>& universal) {
  std::vector<Variable> ex;
  for (const auto& v : variables_of(conj.atoms)) {
    if (!universal.contains(v)) ex.push_back(v);
  }
  DisjunctKey best;
  bool have = false;
  for_each_permutation(ex.size(), kMaxExhaustiveExistentials, [&](const std::vector<int>& perm) {
    std::map<Variable, int> codes = universal;
    for (std::size_t j = 0; j < ex.size(); ++j) codes[ex[j]] = kExistential + perm[j];
    DisjunctKey key;
    for (const auto& a : conj.atoms) key.push_back(encode(a, codes));
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    if (!have || key < best) {
      best = std::move(key);
      have = true;
    }
  });
  return best;
}

DisjunctKey disjunct_key(const Disjunct& d, const std::map<Variable, int>& universal) {
  if (const auto* eq = std::get_if<Equality>(&d)) {
    int a = universal.at(eq->lhs);
    int b = universal.at(eq->rhs);
    return {AtomKey{-1, std::min(a, b), std::max(a, b)}};
  }
  return conjunction_key(std::get<ExistentialConjunction>(d), universal);
}

struct CanonicalRule {
  std::vector<Atom> body;
  std::vector<Disjunct> head;
};

CanonicalRule canonicalize(const std::vector<Atom>& body, const std::vector<Disjunct>& head) {
  const auto universals = variables_of(body);
  RuleKey best;
  bool have = false;
  for_each_permutation(universals.size(), kMaxExhaustiveUniversals, [&](const std::vector<int>& perm) {
    std::map<Variable, int> codes;
    for (std::size_t i = 0; i < universals.size(); ++i) codes[universals[i]] = perm[i];
    RuleKey key;
    for (const auto& a : body) key.body.push_back(encode(a, codes));
    std::sort(key.body.begin(), key.body.end());
    key.body.erase(std::unique(key.body.begin(), key.body.end()), key.body.end());
    if (have && key.body > best.body) return;
    for (const auto& d : head) key.head.push_back(disjunct_key(d, codes));
    std::sort(key.head.begin(), key.head.end());
    key.head.erase(std::unique(key.head.begin(), key.head.end()), key.head.end());
    if (!have || key < best) {
      best = std::move(key);
      have = true;
    }
  });

  // Relabel by first occurrence in the canonical key.
  std::map<int, Variable> universal_names;
  auto universal_name = [&](int code) {
    auto it = universal_names.find(code);
    if (it == universal_names.end()) {
      it = universal_names.emplace(code, Variable("X" + std::to_string(universal_names.size() + 1))).first;
    }
    return it->second;
  };
  for (const auto& a : best.body) {
    for (std::size_t i = 1; i < a.size(); ++i) universal_name(a[i]);
  }

  CanonicalRule out;
  for (const auto& a : best.body) {
    Atom atom{static_cast<RelId>(a[0]), {}};
    for (std::size_t i = 1; i < a.size(); ++i) atom.args.push_back(Term::var(universal_name(a[i])));
    out.body.push_back(std::move(atom));
  }
  for (const auto& dk : best.head) {
    if (dk.size() == 1 && dk[0][0] == -1) {
      out.head.emplace_back(Equality{universal_name(dk[0][1]), universal_name(dk[0][2])});
      continue;
    }
    std::map<int, Variable> ex_names;
    ExistentialConjunction conj;
    for (const auto& a : dk) {
      Atom atom{static_cast<RelId>(a[0]), {}};
      for (std::size_t i = 1; i < a.size(); ++i) {
        const int code = a[i];
        if (code >= kExistential) {
          auto it = ex_names.find(code);
          if (it == ex_names.end()) {
            it = ex_names.emplace(code, Variable("Z" + std::to_string(ex_names.size() + 1))).first;
            conj.existentials.push_back(it->second);
          }
          atom.args.push_back(Term::var(it->second));
        } else {
          atom.args.push_back(Term::var(universal_name(code)));
        }
      }
      conj.atoms.push_back(std::move(atom));
    }
    out.head.emplace_back(std::move(conj));
  }
  return out;
}

void validate_body(const Schema& schema, const std::vector<Atom>& body) {
  for (const auto& a : body) {
    check_atom(schema, a);
    for (const auto& t : a.args) {
      if (t.is_constant()) {
        throw Error(ErrorKind::ConstantInRule, "constant " + t.name.str() + " in rule body");
      }
    }
  }
}

// Drops unused existential declarations; enforces binding and disjointness.
ExistentialConjunction validate_conjunction(const Schema& schema, const std::set<Variable>& body_vars,
                                            ExistentialConjunction conj) {
  if (conj.atoms.empty()) throw Error(ErrorKind::InvalidRule, "head disjunct must have at least one atom");
  std::set<Variable> declared(conj.existentials.begin(), conj.existentials.end());
  for (const auto& z : declared) {
    if (body_vars.contains(z)) {
      throw Error(ErrorKind::InvalidRule, "existential variable " + z.str() + " also occurs in the body");
    }
  }
  for (const auto& a : conj.atoms) {
    check_atom(schema, a);
    for (const auto& t : a.args) {
      if (t.is_constant()) {
        throw Error(ErrorKind::ConstantInRule, "constant " + t.name.str() + " in rule head");
      }
      if (!body_vars.contains(t.name) && !declared.contains(t.name)) {
        throw Error(ErrorKind::InvalidRule,
                    "head variable " + t.name.str() + " is neither a body variable nor existentially quantified");
      }
    }
  }
  const auto used = variables_of(conj.atoms);
  std::vector<Variable> kept;
  for (const auto& v : used) {
    if (declared.contains(v)) kept.push_back(v);
  }
  conj.existentials = std::move(kept);
  return conj;
}

int existential_count(const Disjunct& d) {
  if (const auto* c = std::get_if<ExistentialConjunction>(&d)) return static_cast<int>(c->existentials.size());
  return 0;
}

}  // namespace

Dexr::Dexr(SchemaPtr schema, std::vector<Atom> body, std::vector<ExistentialConjunction> head)
    : schema_(std::move(schema)) {
  if (!schema_) throw Error(ErrorKind::InvalidArgument, "rule requires a schema");
  if (head.empty()) throw Error(ErrorKind::InvalidRule, "a dexr needs at least one head disjunct");
  validate_body(*schema_, body);
  const auto vars = variables_of(body);
  const std::set<Variable> body_vars(vars.begin(), vars.end());
  std::vector<Disjunct> disjuncts;
  for (auto& conj : head) disjuncts.emplace_back(validate_conjunction(*schema_, body_vars, std::move(conj)));
  auto canon = canonicalize(body, disjuncts);
  body_ = std::move(canon.body);
  for (auto& d : canon.head) head_.push_back(std::get<ExistentialConjunction>(std::move(d)));
}

std::vector<Variable> Dexr::frontier(std::size_t disjunct) const {
  const auto& conj = head_.at(disjunct);
  const std::set<Variable> ex(conj.existentials.begin(), conj.existentials.end());
  std::vector<Variable> out;
  for (const auto& v : variables_of(conj.atoms)) {
    if (!ex.contains(v)) out.push_back(v);
  }
  return out;
}

bool Dexr::is_guarded() const {
  if (body_.empty()) return true;
  const auto vars = variables_of(body_);
  for (const auto& a : body_) {
    std::set<Variable> in_atom;
    for (const auto& t : a.args) in_atom.insert(t.name);
    if (in_atom.size() == vars.size()) return true;
  }
  return false;
}

bool operator==(const Dexr& a, const Dexr& b) {
  return same_schema(a.schema_, b.schema_) && a.body_ == b.body_ && a.head_ == b.head_;
}

std::strong_ordering operator<=>(const Dexr& a, const Dexr& b) {
  if (auto c = a.body_ <=> b.body_; c != 0) return c;
  return a.head_ <=> b.head_;
}

DisjunctiveDependency::DisjunctiveDependency(SchemaPtr schema, std::vector<Atom> body, std::vector<Disjunct> head)
    : schema_(std::move(schema)) {
  if (!schema_) throw Error(ErrorKind::InvalidArgument, "dependency requires a schema");
  validate_body(*schema_, body);
  const auto vars = variables_of(body);
  const std::set<Variable> body_vars(vars.begin(), vars.end());
  std::vector<Disjunct> disjuncts;
  for (auto& d : head) {
    if (auto* eq = std::get_if<Equality>(&d)) {
      if (!body_vars.contains(eq->lhs) || !body_vars.contains(eq->rhs)) {
        throw Error(ErrorKind::InvalidRule, "equality disjunct " + eq->lhs.str() + " = " + eq->rhs.str() +
                                                " mentions a variable that is not in the body");
      }
      disjuncts.push_back(*eq);
    } else {
      disjuncts.emplace_back(
          validate_conjunction(*schema_, body_vars, std::get<ExistentialConjunction>(std::move(d))));
    }
  }
  auto canon = canonicalize(body, disjuncts);
  body_ = std::move(canon.body);
  head_ = std::move(canon.head);
}

DisjunctiveDependency DisjunctiveDependency::from(const Dexr& rule) {
  std::vector<Disjunct> head(rule.head().begin(), rule.head().end());
  return DisjunctiveDependency(rule.schema(), rule.body(), std::move(head));
}

bool DisjunctiveDependency::is_deqr() const {
  return !head_.empty() &&
         std::all_of(head_.begin(), head_.end(), [](const Disjunct& d) { return std::holds_alternative<Equality>(d); });
}

bool DisjunctiveDependency::is_dexr() const {
  return !head_.empty() && std::none_of(head_.begin(), head_.end(), [](const Disjunct& d) {
    return std::holds_alternative<Equality>(d);
  });
}

Dexr DisjunctiveDependency::to_dexr() const {
  if (!is_dexr()) throw Error(ErrorKind::InvalidArgument, "dependency is not a dexr");
  std::vector<ExistentialConjunction> head;
  for (const auto& d : head_) head.push_back(std::get<ExistentialConjunction>(d));
  return Dexr(schema_, body_, std::move(head));
}

bool operator==(const DisjunctiveDependency& a, const DisjunctiveDependency& b) {
  return same_schema(a.schema_, b.schema_) && a.body_ == b.body_ && a.head_ == b.head_;
}

std::strong_ordering operator<=>(const DisjunctiveDependency& a, const DisjunctiveDependency& b) {
  if (auto c = a.body_ <=> b.body_; c != 0) return c;
  return a.head_ <=> b.head_;
}

RuleProfile profile_of(const Dexr& rule) {
  RuleProfile p;
  p.n = static_cast<int>(rule.universal_variables().size());
  for (const auto& d : rule.head()) p.m = std::max(p.m, static_cast<int>(d.existentials.size()));
  p.l = static_cast<int>(rule.head().size());
  return p;
}

RuleProfile profile_of(const DisjunctiveDependency& rule) {
  RuleProfile p;
  p.n = static_cast<int>(rule.universal_variables().size());
  for (const auto& d : rule.head()) {
    p.m = std::max(p.m, existential_count(d));
    if (std::holds_alternative<ExistentialConjunction>(d)) ++p.l;
  }
  return p;
}

RuleProfile profile_of(std::span<const Dexr> rules) {
  RuleProfile p;
  for (const auto& r : rules) {
    const auto q = profile_of(r);
    p.n = std::max(p.n, q.n);
    p.m = std::max(p.m, q.m);
    p.l = std::max(p.l, q.l);
  }
  return p;
}

}  // namespace dexr
