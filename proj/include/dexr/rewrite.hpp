#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dexr/entailment.hpp"
#include "dexr/rule.hpp"

namespace dexr {

using BigInt = boost::multiprecision::cpp_int;

enum class BoundVariant {
  /// ℓ·|S|·(n+m+1)^(m·ar(S))
  Tight,
  /// ℓ·|S|·(n+m)^(ar(S)·(n+1)), kept for comparison.
  Wide,
};

/// Disjunct bound ℓ′ sufficient for a linear rewriting of (n,m,ℓ)-dexrs.
/// Throws Error(InvalidProfile) unless n,m ≥ 0, n+m > 0 and ℓ > 0.
BigInt linearization_bound(const Schema& schema, int n, int m, int l, BoundVariant variant = BoundVariant::Tight);

/// |S| · n^ar(S) · Σ_{i=1}^{ℓ′} C(H, i) with H = 2^(|S|·(n+m)^ar(S)), or with
/// H = Σ_{i=1}^{p} C(|S|·(n+m)^ar(S), i) when p is given. Throws
/// Error(LimitExceeded) when the value is too large to evaluate.
BigInt candidate_count_bound(const Schema& schema, int n, int m, const BigInt& l_prime,
                             std::optional<int> p = std::nullopt);

/// The formula above counts rules with a one-atom body. Rules with an empty
/// body are linear too; their heads use existentials only, so they number at
/// most Σ_{i=1}^{ℓ′} C(H₀, i) with H₀ = 2^(|S|·m^ar(S)), or the p-refined sum.
BigInt empty_body_count_bound(const Schema& schema, int m, const BigInt& l_prime, std::optional<int> p = std::nullopt);

/// Calls `f` on every linear dexr with at most n body variables, m
/// existentials per disjunct, ℓ′ disjuncts and (if set) p atoms per disjunct,
/// once per rule up to renaming. Order: the empty body, then single-atom
/// bodies by relation and variable pattern; per body, heads by size and then
/// lexicographically over disjuncts sorted by size. Stops when f returns false.
void for_each_linear_dexr(const SchemaPtr& schema, int n, int m, std::size_t l_prime, std::optional<int> p,
                          const std::function<bool(const Dexr&)>& f);

std::vector<Dexr> enumerate_linear_dexrs(const SchemaPtr& schema, int n, int m, std::size_t l_prime,
                                         std::optional<int> p = std::nullopt);

struct RewriteConfig {
  /// Defaults to the profile of Σ, or (1,0,1) for an empty Σ.
  std::optional<RuleProfile> profile;
  std::optional<std::size_t> l_prime;
  std::optional<int> p;
  BoundVariant bound = BoundVariant::Tight;
  EntailOptions entail;
  std::size_t candidate_cap = 100000;
  bool minimize = true;
};

enum class RewriteStatus { Rewritten, Fail, Unknown };

std::string_view to_string(RewriteStatus s);

struct RewriteResult {
  RewriteStatus status = RewriteStatus::Unknown;
  /// The linear set Σ′ (minimized unless disabled) when Rewritten.
  std::vector<Dexr> rules;
  /// All entailed candidates.
  std::vector<Dexr> entailed_rules;
  RuleProfile profile;
  std::size_t l_prime = 0;
  std::size_t candidates = 0;
  std::size_t entailed = 0;
  std::size_t unknown = 0;
  /// Fail by certificate: a model of Σ′ violating rule `failing_rule` of Σ.
  std::optional<Structure> countermodel;
  std::optional<std::size_t> failing_rule;
  std::string note;
};

/// Collects the linear (n,m,ℓ′)-dexrs entailed by Σ and checks that they
/// entail Σ back. Throws Error(NotGuarded) if a rule of Σ is not guarded.
RewriteResult rewrite_guarded_to_linear(const SchemaPtr& schema, std::span<const Dexr> rules,
                                        const RewriteConfig& config = {});

}  // namespace dexr
