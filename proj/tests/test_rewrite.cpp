#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "dexr/error.hpp"
#include "dexr/rewrite.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace dexr;
using namespace dexr::fixtures;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

std::set<std::string> texts(const std::vector<Dexr>& rules) {
  std::set<std::string> out;
  for (const auto& r : rules) out.insert(to_text(r));
  return out;
}

bool same_models(const SchemaPtr& schema, std::span<const Dexr> a, std::span<const Dexr> b) {
  for (const auto& j : oracle::corpus(schema, 3, 12)) {
    if (oracle::satisfies_all(j, a) != oracle::satisfies_all(j, b)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("disjunct bounds") {
  const auto rst3 = rst();
  CHECK(linearization_bound(*rst3, 1, 0, 2) == 6);
  CHECK(linearization_bound(*rst3, 3, 0, 5) == 15);
  const auto r2 = schema_of("schema { R/2 }");
  CHECK(linearization_bound(*r2, 1, 1, 1) == 9);
  CHECK(linearization_bound(*r2, 1, 1, 1, BoundVariant::Wide) == 16);
  CHECK(linearization_bound(*r2, 2, 2, 3) == BigInt(3) * BigInt(625));
  CHECK(kind_of([&] { linearization_bound(*r2, 0, 0, 1); }) == ErrorKind::InvalidProfile);
  CHECK(kind_of([&] { linearization_bound(*r2, 1, 0, 0); }) == ErrorKind::InvalidProfile);
  CHECK(kind_of([&] { linearization_bound(*r2, -1, 2, 1); }) == ErrorKind::InvalidProfile);
}

TEST_CASE("candidate count bound") {
  const auto r1 = schema_of("schema { R/1 }");
  CHECK(candidate_count_bound(*r1, 1, 0, 1) == 2);
  // H = 3 single-atom disjuncts: |S| · 1 · C(3,1).
  CHECK(candidate_count_bound(*rst(), 1, 0, 1, 1) == 9);
  // H = 2^3 = 8: 3 · (C(8,1) + C(8,2)).
  CHECK(candidate_count_bound(*rst(), 1, 0, 2) == 3 * (8 + 28));
  // 9 atoms over three variables, H = 512: 1 · 2² · (C(512,1) + C(512,2)).
  CHECK(candidate_count_bound(*schema_of("schema { R/2 }"), 2, 1, BigInt(2)) == 525312);
  CHECK(empty_body_count_bound(*schema_of("schema { R/2 }"), 1, BigInt(2)) == 2 + 1);
  CHECK(empty_body_count_bound(*rst(), 1, BigInt(1), 1) == 3);
}

TEST_CASE("enumeration examples") {
  const auto r1 = schema_of("schema { R/1 }");
  CHECK(texts(enumerate_linear_dexrs(r1, 1, 0, 1)) == std::set<std::string>{"R(X1) -> R(X1)."});

  const auto rs = schema_of("schema { R/1 S/1 }");
  int with_r = 0;
  for (const auto& d : enumerate_linear_dexrs(rs, 1, 0, 1, 1)) with_r += to_text(d).starts_with("R(X1) ->");
  CHECK(with_r == 2);

  const auto first = enumerate_linear_dexrs(schema_of("schema { R/1 }"), 1, 1, 1);
  REQUIRE_FALSE(first.empty());
  CHECK(first.front().body().empty());

  std::size_t seen = 0;
  for_each_linear_dexr(rs, 1, 1, 2, std::nullopt, [&](const Dexr&) { return ++seen < 5; });
  CHECK(seen == 5);
}

TEST_CASE("enumeration is complete, duplicate-free and within the count bound") {
  oracle::Rng rng(81);
  for (int round = 0; round < 25; ++round) {
    const auto schema = oracle::random_schema(rng, 2, 2);
    const int n = oracle::uniform(rng, 1, 2);
    const int m = oracle::uniform(rng, 0, 1);
    const std::size_t l = static_cast<std::size_t>(oracle::uniform(rng, 1, 2));
    const std::optional<int> p = oracle::uniform(rng, 0, 1) ? std::optional<int>{1} : std::nullopt;
    std::vector<Dexr> all;
    try {
      all = enumerate_linear_dexrs(schema, n, m, l, p);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::LimitExceeded);
      continue;
    }
    const auto unique = texts(all);
    CHECK(unique.size() == all.size());
    std::size_t empty_body = 0;
    for (const auto& d : all) empty_body += d.body().empty();
    CHECK(BigInt(all.size() - empty_body) <= candidate_count_bound(*schema, n, m, BigInt(l), p));
    CHECK(BigInt(empty_body) <= empty_body_count_bound(*schema, m, BigInt(l), p));
    for (const auto& d : all) {
      CHECK(d.is_linear());
      CHECK(profile_of(d).within(RuleProfile{n, m, static_cast<int>(l)}));
      if (p) {
        for (const auto& disj : d.head()) CHECK(static_cast<int>(disj.atoms.size()) <= *p);
      }
    }
    oracle::Shape shape;
    shape.linear = true;
    shape.max_universal = n;
    shape.max_existential = m;
    shape.max_disjuncts = static_cast<int>(l);
    shape.max_atoms = p.value_or(2);
    for (int draw = 0; draw < 40; ++draw) {
      const auto d = oracle::random_dexr(rng, schema, shape);
      if (!profile_of(d).within(RuleProfile{n, m, static_cast<int>(l)})) continue;
      bool small_heads = true;
      for (const auto& disj : d.head()) small_heads = small_heads && (!p || static_cast<int>(disj.atoms.size()) <= *p);
      if (small_heads) CHECK_MESSAGE(unique.contains(to_text(d)), to_text(d));
    }
  }
}

TEST_CASE("already linear input is rewritten to an equivalent set") {
  const auto s = schema_of("schema { R/2 S/1 T/1 }");
  const std::vector<Dexr> sigma{rule(s, "R(X,Y) -> S(X) | T(X).")};
  RewriteConfig config;
  config.p = 1;
  const auto r = rewrite_guarded_to_linear(s, sigma, config);
  CHECK(r.status == RewriteStatus::Rewritten);
  CHECK(r.l_prime == 6);
  CHECK(r.unknown == 0);
  CHECK(texts(r.entailed_rules).contains(to_text(sigma[0])));
  CHECK(same_models(s, sigma, r.rules));
  for (const auto& d : r.rules) CHECK(d.is_linear());

  const auto small = schema_of("schema { R/1 S/1 }");
  const std::vector<Dexr> one{rule(small, "R(X) -> S(X).")};
  const auto direct = rewrite_guarded_to_linear(small, one);
  CHECK(direct.status == RewriteStatus::Rewritten);
  CHECK(direct.l_prime == 2);
  CHECK(direct.candidates == 12);
  CHECK(direct.entailed == 9);
  CHECK(texts(direct.rules) == texts(one));
}

TEST_CASE("a non-linearizable guarded rule fails with a certificate") {
  const auto s = schema_of("schema { R/1 P/1 S/1 }");
  const std::vector<Dexr> sigma{rule(s, "R(X), P(X) -> S(X).")};
  const auto r = rewrite_guarded_to_linear(s, sigma);
  CHECK(r.status == RewriteStatus::Fail);
  REQUIRE(r.countermodel);
  CHECK(*r.countermodel == facts(s, "R(a). P(a)."));
  CHECK(r.failing_rule == std::optional<std::size_t>{0});
  CHECK(oracle::satisfies_all(*r.countermodel, r.entailed_rules));
  CHECK_FALSE(oracle::satisfies_all(*r.countermodel, sigma));
  // Brute-force check: every candidate entailed over small domains holds in {R(a),P(a)}.
  for (const auto& d : enumerate_linear_dexrs(s, 1, 0, r.l_prime)) {
    if (!oracle::countermodel(sigma, DisjunctiveDependency::from(d), oracle::corpus(s, 2))) {
      CHECK(oracle::satisfies(*r.countermodel, d));
    }
  }
}

TEST_CASE("degenerate inputs and limits") {
  const auto s = schema_of("schema { R/1 S/1 }");
  const auto empty = rewrite_guarded_to_linear(s, std::vector<Dexr>{});
  CHECK(empty.status == RewriteStatus::Rewritten);
  CHECK(empty.profile == RuleProfile{1, 0, 1});
  CHECK_FALSE(empty.rules.empty());

  RewriteConfig capped;
  capped.candidate_cap = 3;
  const std::vector<Dexr> one{rule(s, "R(X) -> S(X).")};
  const auto cut = rewrite_guarded_to_linear(s, one, capped);
  CHECK(cut.status == RewriteStatus::Unknown);
  CHECK(cut.candidates == 3);
  CHECK_FALSE(cut.note.empty());

  const auto g = schema_of("schema { R/2 S/1 }");
  const std::vector<Dexr> unguarded{rule(g, "S(X), S(Y) -> R(X,Y).")};
  CHECK(kind_of([&] { rewrite_guarded_to_linear(g, unguarded); }) == ErrorKind::NotGuarded);
}

TEST_CASE("generated linear sets are rewritten soundly and deterministically") {
  oracle::Rng rng(82);
  int rewritten = 0;
  for (int round = 0; round < 20; ++round) {
    const auto schema = oracle::small_schema(rng, 9);
    oracle::Shape shape;
    shape.linear = true;
    shape.max_universal = 1;
    shape.max_existential = 0;
    shape.max_atoms = 1;
    const auto sigma = oracle::random_rules(rng, schema, oracle::uniform(rng, 1, 2), shape);
    RewriteConfig config;
    config.p = 1;
    config.candidate_cap = 5000;
    const auto r = rewrite_guarded_to_linear(schema, sigma, config);
    if (r.status == RewriteStatus::Unknown) continue;
    REQUIRE(r.status == RewriteStatus::Rewritten);
    ++rewritten;
    CHECK(same_models(schema, sigma, r.rules));
    const auto all = texts(r.entailed_rules);
    for (const auto& d : sigma) {
      if (profile_of(d).within(RuleProfile{r.profile.n, r.profile.m, static_cast<int>(r.l_prime)})) {
        CHECK(all.contains(to_text(d)));
      }
    }
    const auto again = rewrite_guarded_to_linear(schema, sigma, config);
    CHECK(texts(again.rules) == texts(r.rules));
    CHECK(again.candidates == r.candidates);
  }
  CHECK(rewritten >= 10);
}
