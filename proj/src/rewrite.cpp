#include "dexr/rewrite.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "dexr/error.hpp"

namespace dexr {

std::string_view to_string(RewriteStatus s) {
  switch (s) {
    case RewriteStatus::Rewritten: return "Rewritten";
    case RewriteStatus::Fail: return "Fail";
    case RewriteStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

constexpr std::uint64_t kMaxExponent = 1u << 20;
constexpr std::uint64_t kMaxSumTerms = 1u << 20;
constexpr double kMaxDisjunctSubsets = 4e6;

BigInt power(BigInt base, std::uint64_t exp) {
  if (exp > kMaxExponent && base > 1) throw Error(ErrorKind::LimitExceeded, "exponent too large to evaluate");
  BigInt out = 1;
  while (exp > 0) {
    if (exp & 1) out *= base;
    base *= base;
    exp >>= 1;
  }
  return out;
}

// Σ_{i=1}^{k} C(h, i), with k clipped to h.
BigInt binomial_prefix_sum(const BigInt& h, const BigInt& k) {
  const BigInt top = k < h ? k : h;
  if (top > kMaxSumTerms) throw Error(ErrorKind::LimitExceeded, "too many binomial terms to evaluate");
  BigInt sum = 0;
  BigInt c = 1;
  const auto steps = top.convert_to<std::uint64_t>();
  for (std::uint64_t i = 1; i <= steps; ++i) {
    c = c * (h - i + 1) / i;
    sum += c;
  }
  return sum;
}

void check_profile(int n, int m, int l) {
  if (n < 0 || m < 0 || n + m <= 0 || l <= 0) {
    throw Error(ErrorKind::InvalidProfile, "profile (" + std::to_string(n) + "," + std::to_string(m) + "," +
                                               std::to_string(l) + ") needs n,m >= 0, n+m > 0 and l > 0");
  }
}

}  // namespace

BigInt linearization_bound(const Schema& schema, int n, int m, int l, BoundVariant variant) {
  check_profile(n, m, l);
  const auto ar = static_cast<std::uint64_t>(schema.max_arity());
  const BigInt base = variant == BoundVariant::Tight ? BigInt(n + m + 1) : BigInt(n + m);
  const std::uint64_t exp =
      variant == BoundVariant::Tight ? static_cast<std::uint64_t>(m) * ar : ar * static_cast<std::uint64_t>(n + 1);
  return BigInt(l) * BigInt(schema.size()) * power(base, exp);
}

namespace {

// Number of distinct disjuncts over the given number of atoms.
BigInt disjunct_count(const BigInt& atoms, std::optional<int> p) {
  if (p) return binomial_prefix_sum(atoms, BigInt(*p));
  if (atoms > kMaxExponent) throw Error(ErrorKind::LimitExceeded, "2^" + atoms.str() + " is too large");
  return power(BigInt(2), atoms.convert_to<std::uint64_t>());
}

}  // namespace

BigInt candidate_count_bound(const Schema& schema, int n, int m, const BigInt& l_prime, std::optional<int> p) {
  const auto ar = static_cast<std::uint64_t>(schema.max_arity());
  const BigInt bodies = BigInt(schema.size()) * power(BigInt(n), ar);
  const BigInt atoms = BigInt(schema.size()) * power(BigInt(n + m), ar);
  return bodies * binomial_prefix_sum(disjunct_count(atoms, p), l_prime);
}

BigInt empty_body_count_bound(const Schema& schema, int m, const BigInt& l_prime, std::optional<int> p) {
  const auto ar = static_cast<std::uint64_t>(schema.max_arity());
  const BigInt atoms = BigInt(schema.size()) * power(BigInt(m), ar);
  return binomial_prefix_sum(disjunct_count(atoms, p), l_prime);
}

namespace {

Variable x_variable(std::size_t i) { return Variable("X" + std::to_string(i + 1)); }
Variable z_variable(std::size_t i) { return Variable("Z" + std::to_string(i + 1)); }

std::vector<std::vector<Atom>> linear_bodies(const Schema& schema, int n) {
  std::vector<std::vector<Atom>> out{{}};
  if (n < 1) return out;
  for (RelId r = 0; r < schema.size(); ++r) {
    const auto arity = static_cast<std::size_t>(schema.arity(r));
    // Restricted growth strings: each position reuses a variable or opens the next one.
    std::vector<std::size_t> s(arity, 0);
    while (true) {
      Atom a{r, {}};
      for (auto v : s) a.args.push_back(Term::var(x_variable(v)));
      out.push_back({std::move(a)});
      std::size_t pos = arity;
      bool advanced = false;
      while (pos > 1) {
        --pos;
        const std::size_t prefix_max = *std::max_element(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(pos));
        if (s[pos] <= prefix_max && s[pos] + 1 < static_cast<std::size_t>(n)) {
          ++s[pos];
          std::fill(s.begin() + static_cast<std::ptrdiff_t>(pos) + 1, s.end(), 0);
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return out;
}

std::vector<Atom> atom_pool(const Schema& schema, const std::vector<Term>& terms) {
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

// Existentials renamed Z1.. so that the sorted atom list is least.
ExistentialConjunction canonical_disjunct(std::vector<Atom> atoms, const std::set<Variable>& universal) {
  std::vector<Variable> ex;
  for (const auto& v : variables_of(atoms)) {
    if (!universal.contains(v)) ex.push_back(v);
  }
  std::vector<std::size_t> perm(ex.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<std::vector<Atom>> best;
  do {
    std::map<Variable, Variable> names;
    for (std::size_t i = 0; i < ex.size(); ++i) names.emplace(ex[i], z_variable(perm[i]));
    auto cand = atoms;
    for (auto& a : cand) {
      for (auto& t : a.args) {
        if (auto it = names.find(t.name); it != names.end()) t.name = it->second;
      }
    }
    std::sort(cand.begin(), cand.end());
    if (!best || cand < *best) best = std::move(cand);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<Variable> used;
  for (std::size_t i = 0; i < ex.size(); ++i) used.push_back(z_variable(i));
  return ExistentialConjunction{used, std::move(*best)};
}

std::vector<ExistentialConjunction> disjunct_pool(const Schema& schema, std::size_t body_vars, int m,
                                                  std::optional<int> p) {
  std::vector<Term> terms;
  std::set<Variable> universal;
  for (std::size_t i = 0; i < body_vars; ++i) {
    terms.push_back(Term::var(x_variable(i)));
    universal.insert(x_variable(i));
  }
  for (int j = 0; j < m; ++j) terms.push_back(Term::var(z_variable(static_cast<std::size_t>(j))));
  const auto pool = atom_pool(schema, terms);
  const std::size_t max_size = p ? std::min<std::size_t>(static_cast<std::size_t>(*p), pool.size()) : pool.size();

  double subsets = 0;
  double c = 1;
  for (std::size_t i = 1; i <= max_size; ++i) {
    c = c * static_cast<double>(pool.size() - i + 1) / static_cast<double>(i);
    subsets += c;
  }
  if (subsets > kMaxDisjunctSubsets) {
    throw Error(ErrorKind::LimitExceeded, "too many head disjuncts to enumerate over " +
                                              std::to_string(pool.size()) + " atoms");
  }

  std::set<std::pair<std::size_t, ExistentialConjunction>> found;
  for (std::size_t size = 1; size <= max_size; ++size) {
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<Atom> atoms;
      for (auto k : idx) atoms.push_back(pool[k]);
      auto d = canonical_disjunct(std::move(atoms), universal);
      found.emplace(d.atoms.size(), std::move(d));
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == pool.size() - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t q = pos; q < size; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  std::vector<ExistentialConjunction> out;
  for (auto& [size, d] : found) out.push_back(d);
  return out;
}

}  // namespace

void for_each_linear_dexr(const SchemaPtr& schema, int n, int m, std::size_t l_prime, std::optional<int> p,
                          const std::function<bool(const Dexr&)>& f) {
  if (n < 0 || m < 0) throw Error(ErrorKind::InvalidProfile, "n and m must be non-negative");
  for (const auto& body : linear_bodies(*schema, n)) {
    const auto disjuncts = disjunct_pool(*schema, variables_of(body).size(), m, p);
    const std::size_t max_heads = std::min(l_prime, disjuncts.size());
    for (std::size_t size = 1; size <= max_heads; ++size) {
      std::vector<std::size_t> idx(size);
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        std::vector<ExistentialConjunction> head;
        for (auto k : idx) head.push_back(disjuncts[k]);
        if (!f(Dexr(schema, body, std::move(head)))) return;
        std::size_t pos = size;
        while (pos > 0 && idx[pos - 1] == disjuncts.size() - size + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t q = pos; q < size; ++q) idx[q] = idx[q - 1] + 1;
      }
    }
  }
}

std::vector<Dexr> enumerate_linear_dexrs(const SchemaPtr& schema, int n, int m, std::size_t l_prime,
                                         std::optional<int> p) {
  std::vector<Dexr> out;
  for_each_linear_dexr(schema, n, m, l_prime, p, [&](const Dexr& d) {
    out.push_back(d);
    return true;
  });
  return out;
}

namespace {

std::vector<Dexr> minimize(std::vector<Dexr> rules, std::span<const Dexr> target, const EntailOptions& options) {
  const std::vector<Dexr> none;
  std::vector<Dexr> kept;
  for (const auto& r : rules) {
    if (entails(none, r, options).status != EntailStatus::Entailed) kept.push_back(r);
  }
  if (kept.empty() && !rules.empty()) kept.push_back(rules.front());
  if (entails_all(kept, target, options).status != EntailStatus::Entailed) kept = std::move(rules);
  for (std::size_t k = kept.size(); k-- > 0 && kept.size() > 1;) {
    std::vector<Dexr> trial = kept;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
    if (entails_all(trial, target, options).status == EntailStatus::Entailed) kept = std::move(trial);
  }
  return kept;
}

}  // namespace

RewriteResult rewrite_guarded_to_linear(const SchemaPtr& schema, std::span<const Dexr> rules,
                                        const RewriteConfig& config) {
  for (const auto& r : rules) {
    require_same_schema(schema, r.schema(), "rewrite");
    if (!r.is_guarded()) throw Error(ErrorKind::NotGuarded, "rule is not guarded");
  }
  RewriteResult result;
  if (config.profile) {
    result.profile = *config.profile;
  } else if (rules.empty()) {
    result.profile = RuleProfile{1, 0, 1};
  } else {
    result.profile = profile_of(rules);
  }
  const auto& prof = result.profile;
  if (config.l_prime) {
    result.l_prime = *config.l_prime;
  } else {
    const BigInt bound = linearization_bound(*schema, prof.n, prof.m, prof.l, config.bound);
    result.l_prime = bound > BigInt(std::numeric_limits<std::size_t>::max())
                         ? std::numeric_limits<std::size_t>::max()
                         : bound.convert_to<std::size_t>();
  }

  bool capped = false;
  try {
    for_each_linear_dexr(schema, prof.n, prof.m, result.l_prime, config.p, [&](const Dexr& cand) {
      if (result.candidates == config.candidate_cap) {
        capped = true;
        return false;
      }
      ++result.candidates;
      const auto v = entails(rules, cand, config.entail);
      if (v.status == EntailStatus::Entailed) {
        result.entailed_rules.push_back(cand);
      } else if (v.status == EntailStatus::Unknown) {
        ++result.unknown;
      }
      return true;
    });
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::LimitExceeded) throw;
    capped = true;
    result.note = e.what();
  }
  result.entailed = result.entailed_rules.size();
  if (capped) {
    result.status = RewriteStatus::Unknown;
    if (result.note.empty()) {
      result.note = "candidate cap of " + std::to_string(config.candidate_cap) + " reached";
    }
    return result;
  }
  if (result.entailed_rules.empty()) {
    result.status = result.unknown == 0 ? RewriteStatus::Fail : RewriteStatus::Unknown;
    result.note = "no candidate is entailed";
    return result;
  }

  const auto back = entails_all(result.entailed_rules, rules, config.entail);
  if (back.status == EntailStatus::Entailed) {
    result.status = RewriteStatus::Rewritten;
    result.rules = config.minimize ? minimize(result.entailed_rules, rules, config.entail) : result.entailed_rules;
    return result;
  }
  if (back.status == EntailStatus::NotEntailed && result.unknown == 0) {
    result.status = RewriteStatus::Fail;
    result.countermodel = back.countermodel;
    result.failing_rule = back.failing;
    result.note = "the entailed candidates do not entail the input";
    return result;
  }
  result.status = RewriteStatus::Unknown;
  result.note = back.status == EntailStatus::NotEntailed
                    ? "the entailed candidates do not entail the input, but some candidates were undecided"
                    : "could not decide whether the entailed candidates entail the input";
  return result;
}

}  // namespace dexr
