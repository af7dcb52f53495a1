#include "dexr/diagrams.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "dexr/error.hpp"
#include "dexr/finite_models.hpp"
#include "dexr/homs.hpp"
#include "dexr/syntax.hpp"

namespace dexr {

namespace {

constexpr std::size_t kMaxExhaustiveVariables = 7;

Variable y_variable(std::size_t i) { return Variable("Y" + std::to_string(i + 1)); }

std::vector<Atom> rename(const std::vector<Atom>& atoms, const std::map<Variable, Variable>& names) {
  std::vector<Atom> out = atoms;
  for (auto& a : out) {
    for (auto& t : a.args) {
      if (t.is_variable()) t.name = names.at(t.name);
    }
  }
  return out;
}

void sort_unique(std::vector<Atom>& atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
}

}  // namespace

NegConjunction NegConjunction::canonical(std::vector<Atom> atoms) {
  if (atoms.empty()) throw Error(ErrorKind::InvalidArgument, "a negated conjunction needs at least one atom");
  sort_unique(atoms);
  const auto vars = variables_of(atoms);
  std::vector<std::size_t> perm(vars.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<std::vector<Atom>> best;
  do {
    std::map<Variable, Variable> names;
    for (std::size_t i = 0; i < vars.size(); ++i) names.emplace(vars[i], y_variable(perm[i]));
    auto candidate = rename(atoms, names);
    sort_unique(candidate);
    if (!best || candidate < *best) best = std::move(candidate);
  } while (vars.size() <= kMaxExhaustiveVariables && std::next_permutation(perm.begin(), perm.end()));
  return NegConjunction{std::move(*best)};
}

std::vector<std::pair<Constant, Constant>> Diagram::inequalities() const {
  std::vector<std::pair<Constant, Constant>> out;
  const std::vector<Constant> dom(k.domain().begin(), k.domain().end());
  for (std::size_t a = 0; a < dom.size(); ++a) {
    for (std::size_t b = a + 1; b < dom.size(); ++b) out.emplace_back(dom[a], dom[b]);
  }
  return out;
}

namespace {

void require_diagram_base(const Structure& k, const Structure& i) {
  if (!is_subset(k, i)) throw Error(ErrorKind::NotSubset, "K is not contained in I");
  if (active_domain(k) != k.domain()) {
    throw Error(ErrorKind::InvalidArgument, "K must not have elements outside its active domain");
  }
}

// All atoms over the schema whose arguments come from `terms`.
std::vector<Atom> all_atoms(const Schema& schema, const std::vector<Term>& terms) {
  std::vector<Atom> out;
  if (terms.empty()) return out;
  for (RelId r = 0; r < schema.size(); ++r) {
    const auto arity = static_cast<std::size_t>(schema.arity(r));
    std::vector<std::size_t> idx(arity, 0);
    while (true) {
      Atom a{r, {}};
      for (auto k : idx) a.args.push_back(terms[k]);
      out.push_back(std::move(a));
      std::size_t pos = arity;
      while (pos > 0 && ++idx[pos - 1] == terms.size()) idx[--pos] = 0;
      if (pos == 0) break;
    }
  }
  return out;
}

class ConjunctionCounter {
 public:
  explicit ConjunctionCounter(std::size_t limit) : limit_(limit) {}
  void tick() {
    if (++count_ > limit_) {
      throw Error(ErrorKind::LimitExceeded,
                  "more than " + std::to_string(limit_) + " conjunctions to examine for the negative candidates");
    }
  }

 private:
  std::size_t limit_;
  std::size_t count_ = 0;
};

std::vector<Atom> pick(const std::vector<Atom>& pool, const std::vector<std::size_t>& idx) {
  std::vector<Atom> out;
  for (auto k : idx) out.push_back(pool[k]);
  return out;
}

}  // namespace

std::vector<NegConjunction> neg_candidates(const Structure& k, const Structure& i, int m, const NegOptions& options) {
  require_same_schema(k.schema(), i.schema(), "neg_candidates");
  require_diagram_base(k, i);
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "m must be non-negative");
  std::vector<Term> terms;
  for (const auto& c : k.domain()) terms.push_back(Term::constant(c));
  for (int y = 0; y < m; ++y) terms.push_back(Term::var(y_variable(static_cast<std::size_t>(y))));
  std::sort(terms.begin(), terms.end());
  const auto pool = all_atoms(*i.schema(), terms);

  ConjunctionCounter counter(options.max_conjunctions);
  std::set<NegConjunction> found;
  auto unsatisfied = [&](const std::vector<Atom>& atoms) {
    counter.tick();
    return !find_match(atoms, i).has_value();
  };

  if (options.mode == NegMode::All) {
    if (pool.size() >= 63 || (std::uint64_t{1} << pool.size()) > options.max_conjunctions + 1) {
      throw Error(ErrorKind::LimitExceeded, "2^" + std::to_string(pool.size()) + " conjunctions exceed the limit");
    }
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << pool.size()); ++mask) {
      std::vector<std::size_t> idx;
      for (std::size_t b = 0; b < pool.size(); ++b) {
        if (mask >> b & 1) idx.push_back(b);
      }
      auto atoms = pick(pool, idx);
      if (unsatisfied(atoms)) found.insert(NegConjunction::canonical(std::move(atoms)));
    }
  } else {
    // Level-wise: a set is minimal when it fails in I but all of its
    // one-smaller subsets hold there.
    std::set<std::vector<std::size_t>> level;
    for (std::size_t b = 0; b < pool.size(); ++b) {
      if (unsatisfied({pool[b]})) {
        found.insert(NegConjunction::canonical({pool[b]}));
      } else {
        level.insert({b});
      }
    }
    while (!level.empty()) {
      std::set<std::vector<std::size_t>> next;
      for (const auto& s : level) {
        for (std::size_t b = s.back() + 1; b < pool.size(); ++b) {
          auto cand = s;
          cand.push_back(b);
          bool all_hold = true;
          for (std::size_t drop = 0; drop + 1 < cand.size() && all_hold; ++drop) {
            auto sub = cand;
            sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
            all_hold = level.contains(sub);
          }
          if (!all_hold) continue;
          auto atoms = pick(pool, cand);
          if (unsatisfied(atoms)) {
            found.insert(NegConjunction::canonical(std::move(atoms)));
          } else {
            next.insert(std::move(cand));
          }
        }
      }
      level = std::move(next);
    }
  }
  std::vector<NegConjunction> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const NegConjunction& a, const NegConjunction& b) {
    if (a.atoms.size() != b.atoms.size()) return a.atoms.size() < b.atoms.size();
    return a.atoms < b.atoms;
  });
  return out;
}

Diagram build_diagram(const Structure& k, const Structure& i, std::vector<NegConjunction> g) {
  require_same_schema(k.schema(), i.schema(), "build_diagram");
  require_diagram_base(k, i);
  std::set<NegConjunction> canon;
  for (auto& gamma : g) {
    for (const auto& c : constants_of(gamma.atoms)) {
      if (!k.domain().contains(c)) {
        throw Error(ErrorKind::GNotNegative, "conjunction " + to_text(gamma, *i.schema()) +
                                                 " mentions constant " + c.str() + " outside K");
      }
    }
    for (const auto& a : gamma.atoms) check_atom(*i.schema(), a);
    if (find_match(gamma.atoms, i)) {
      throw Error(ErrorKind::GNotNegative, "conjunction " + to_text(gamma, *i.schema()) + " holds in I");
    }
    canon.insert(NegConjunction::canonical(std::move(gamma.atoms)));
  }
  return Diagram{k, std::vector<NegConjunction>(canon.begin(), canon.end())};
}

bool satisfies_diagram(const Structure& j, const Diagram& d) {
  require_same_schema(j.schema(), d.k.schema(), "satisfies_diagram");
  if (!is_subset(d.k, j)) return false;
  for (const auto& c : d.k.domain()) {
    if (!j.domain().contains(c)) return false;
  }
  for (const auto& gamma : d.negated) {
    if (find_match(gamma.atoms, j)) return false;
  }
  return true;
}

VariablizedDiagram variablize(const Diagram& d) {
  VariablizedDiagram out;
  out.schema = d.k.schema();
  std::map<Constant, Variable> names;
  for (const auto& c : d.k.domain()) {
    Variable x("X" + std::to_string(names.size() + 1));
    names.emplace(c, x);
    out.variables.push_back(x);
  }
  auto replace = [&](std::vector<Atom> atoms) {
    for (auto& a : atoms) {
      for (auto& t : a.args) {
        if (t.is_constant()) t = Term::var(names.at(t.name));
      }
    }
    return atoms;
  };
  out.positive = replace(as_atoms(d.k));
  for (const auto& [a, b] : d.inequalities()) out.inequalities.emplace_back(names.at(a), names.at(b));
  for (const auto& gamma : d.negated) out.negated.push_back(NegConjunction{replace(gamma.atoms)});
  return out;
}

bool holds(const Structure& j, const VariablizedDiagram& phi) {
  require_same_schema(j.schema(), phi.schema, "holds");
  MatchOptions options;
  options.injective = !phi.inequalities.empty();
  const auto used = variables_of(phi.positive);
  for (const auto& x : phi.variables) {
    if (std::find(used.begin(), used.end(), x) == used.end()) options.free_variables.push_back(x);
  }
  bool found = false;
  for_each_match(phi.positive, j, {}, [&](const Assignment& h) {
    for (const auto& gamma : phi.negated) {
      if (find_match(gamma.atoms, j, h)) return true;
    }
    found = true;
    return false;
  }, options);
  return found;
}

DisjunctiveDependency diagram_to_dd(const Diagram& d) {
  const auto phi = variablize(d);
  if (phi.inequalities.empty() && phi.negated.empty()) {
    return DisjunctiveDependency(phi.schema, phi.positive, {});
  }
  std::vector<Disjunct> head;
  for (const auto& [a, b] : phi.inequalities) head.emplace_back(Equality{a, b});
  const std::set<Variable> xs(phi.variables.begin(), phi.variables.end());
  for (const auto& gamma : phi.negated) {
    ExistentialConjunction conj;
    for (const auto& v : variables_of(gamma.atoms)) {
      if (!xs.contains(v)) conj.existentials.push_back(v);
    }
    conj.atoms = gamma.atoms;
    head.emplace_back(std::move(conj));
  }
  return DisjunctiveDependency(phi.schema, phi.positive, std::move(head));
}

std::string to_text(const NegConjunction& g, const Schema& schema) {
  std::string inner;
  for (std::size_t k = 0; k < g.atoms.size(); ++k) {
    if (k > 0) inner += " & ";
    inner += to_text(g.atoms[k], schema);
  }
  const auto vars = g.variables();
  if (vars.empty()) return "(" + inner + ")";
  std::string out = "exists";
  for (const auto& v : vars) out += " " + v.str();
  return out + ".(" + inner + ")";
}

namespace {

std::string conjunction_of(const std::vector<std::string>& parts) {
  if (parts.empty()) return "true";
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k > 0) out += " & ";
    out += parts[k];
  }
  return out;
}

std::string negated_text(const NegConjunction& g, const Schema& schema, const std::set<Variable>& bound) {
  std::vector<Variable> ex;
  for (const auto& v : g.variables()) {
    if (!bound.contains(v)) ex.push_back(v);
  }
  std::string inner;
  for (std::size_t k = 0; k < g.atoms.size(); ++k) {
    if (k > 0) inner += " & ";
    inner += to_text(g.atoms[k], schema);
  }
  if (ex.empty()) return "!(" + inner + ")";
  std::string out = "!exists";
  for (const auto& v : ex) out += " " + v.str();
  return out + ".(" + inner + ")";
}

}  // namespace

std::string to_text(const Diagram& d) {
  const Schema& schema = *d.k.schema();
  std::vector<std::string> parts;
  for (const auto& f : d.k.facts()) parts.push_back(to_text(f, schema));
  for (const auto& [a, b] : d.inequalities()) parts.push_back(constant_text(a) + " != " + constant_text(b));
  for (const auto& g : d.negated) parts.push_back(negated_text(g, schema, {}));
  return conjunction_of(parts);
}

std::string to_text(const VariablizedDiagram& phi) {
  const Schema& schema = *phi.schema;
  std::vector<std::string> parts;
  for (const auto& a : phi.positive) parts.push_back(to_text(a, schema));
  for (const auto& [a, b] : phi.inequalities) parts.push_back(a.str() + " != " + b.str());
  const std::set<Variable> xs(phi.variables.begin(), phi.variables.end());
  for (const auto& g : phi.negated) parts.push_back(negated_text(g, schema, xs));
  const std::string body = conjunction_of(parts);
  if (phi.variables.empty()) return body;
  std::string out = "exists";
  for (const auto& x : phi.variables) out += " " + x.str();
  return out + ".(" + body + ")";
}

std::string_view to_string(CompatVariant v) {
  switch (v) {
    case CompatVariant::Plain: return "plain";
    case CompatVariant::Linear: return "linear";
    case CompatVariant::Guarded: return "guarded";
  }
  return "plain";
}

std::string_view to_string(CompatStatus s) {
  switch (s) {
    case CompatStatus::Compatible: return "CompatibleWithI";
    case CompatStatus::NotCompatible: return "NotCompatibleWithI";
    case CompatStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

const DiagramCheck* CompatVerdict::witness() const {
  if (status != CompatStatus::NotCompatible || checks.empty()) return nullptr;
  return &checks.back();
}

DiagramCheck find_diagram_model(const Diagram& d, std::span<const Dexr> rules, const CompatOptions& options) {
  DiagramCheck out{d, CompatStatus::Unknown, std::nullopt};
  ChaseOptions chase_options;
  chase_options.budget = options.budget;
  chase_options.max_saturated = 1;
  // A matched negated conjunction stays matched as facts grow: dead branch.
  chase_options.prune = [&](const Structure& s) {
    return std::any_of(d.negated.begin(), d.negated.end(),
                       [&](const NegConjunction& g) { return find_match(g.atoms, s).has_value(); });
  };
  auto outcome = chase(d.k, rules, chase_options);
  if (!outcome.saturated.empty()) {
    out.status = CompatStatus::Compatible;
    out.model = std::move(outcome.saturated.front().structure);
    return out;
  }
  if (outcome.complete()) {
    out.status = CompatStatus::NotCompatible;
    return out;
  }

  std::vector<FiniteConstraint> constraints;
  for (const auto& r : rules) constraints.push_back(FiniteConstraint::from(r));
  for (const auto& g : d.negated) constraints.push_back(FiniteConstraint::forbid(g.atoms));
  const FiniteModelSearch search(d.k.schema(), std::move(constraints), std::nullopt, options.max_fact_bits);
  std::vector<Constant> domain(d.k.domain().begin(), d.k.domain().end());
  FreshNames fresh;
  Structure taken = d.k;
  const auto required = d.k.facts();
  for (int extra = 0; extra <= options.extra_elements; ++extra) {
    if (extra > 0) {
      const Constant c = fresh.next(taken);
      taken.add_constant(c);
      domain.push_back(c);
    }
    std::optional<Structure> model;
    const auto status = search.search(domain, required, model);
    if (status == SearchStatus::Found) {
      out.status = CompatStatus::Compatible;
      out.model = std::move(model);
      return out;
    }
    if (status == SearchStatus::TooLarge) break;
  }
  return out;
}

std::vector<Structure> compat_substructures(const Structure& i, int n, CompatVariant variant) {
  std::vector<Structure> out;
  out.emplace_back(i.schema());
  if (variant == CompatVariant::Linear) {
    for (const auto& f : i.facts()) {
      const std::set<Constant> consts(f.args.begin(), f.args.end());
      if (static_cast<int>(consts.size()) <= n) out.emplace_back(i.schema(), std::vector<Fact>{f});
    }
    return out;
  }
  const std::vector<Constant> dom(i.domain().begin(), i.domain().end());
  for (int size = 1; size <= n && size <= static_cast<int>(dom.size()); ++size) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(size));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::set<Constant> d;
      for (auto k : idx) d.insert(dom[k]);
      Structure k = induced_substructure(i, d);
      if (active_domain(k) == d && (variant == CompatVariant::Plain || is_guarded(k))) out.push_back(std::move(k));
      // Next combination in lexicographic order.
      int pos = size - 1;
      while (pos >= 0 && idx[pos] == dom.size() - static_cast<std::size_t>(size) + static_cast<std::size_t>(pos)) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int q = pos + 1; q < size; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  return out;
}

CompatVerdict check_compat_with(const Structure& i, std::span<const Dexr> rules, const RuleProfile& profile,
                                CompatVariant variant, const CompatOptions& options) {
  for (const auto& r : rules) require_same_schema(i.schema(), r.schema(), "check_compat_with");
  if (profile.n < 0 || profile.m < 0 || profile.l < 0) {
    throw Error(ErrorKind::InvalidProfile, "profile entries must be non-negative");
  }
  CompatVerdict verdict;
  const auto ks = compat_substructures(i, profile.n, variant);
  verdict.substructures = ks.size();
  std::size_t diagrams = 0;
  for (const auto& k : ks) {
    std::vector<NegConjunction> neg;
    try {
      neg = neg_candidates(k, i, profile.m, options.neg);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::LimitExceeded) throw;
      verdict.status = CompatStatus::Unknown;
      verdict.note = e.what();
      continue;
    }
    const std::size_t max_size = std::min<std::size_t>(static_cast<std::size_t>(profile.l), neg.size());
    for (std::size_t size = 0; size <= max_size; ++size) {
      std::vector<std::size_t> idx(size);
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        if (++diagrams > options.max_diagrams) {
          verdict.status = CompatStatus::Unknown;
          verdict.note = "stopped after " + std::to_string(options.max_diagrams) + " diagrams";
          return verdict;
        }
        Diagram d{k, {}};
        for (auto q : idx) d.negated.push_back(neg[q]);
        auto check = find_diagram_model(d, rules, options);
        const auto status = check.status;
        verdict.checks.push_back(std::move(check));
        if (status == CompatStatus::NotCompatible) {
          verdict.status = CompatStatus::NotCompatible;
          return verdict;
        }
        if (status == CompatStatus::Unknown) verdict.status = CompatStatus::Unknown;
        if (size == 0) break;
        std::size_t pos = size;
        while (pos > 0 && idx[pos - 1] == neg.size() - size + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t q = pos; q < size; ++q) idx[q] = idx[q - 1] + 1;
      }
    }
  }
  return verdict;
}

}  // namespace dexr
