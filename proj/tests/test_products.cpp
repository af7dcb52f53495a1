#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dexr/error.hpp"
#include "dexr/homs.hpp"
#include "dexr/products.hpp"
#include "dexr/satisfaction.hpp"
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

// The three conditions a repairable direct product has to meet, checked by
// brute force.
void check_repairable(const Structure& l, const Structure& i, const Structure& j, std::span<const Dexr> rules) {
  CHECK(is_subset(direct_product(i, j), l));
  CHECK(oracle::satisfies_all(l, rules));
  oracle::Valuation pi;
  for (const auto& [k, v] : projective_homomorphism(direct_product(i, j))) pi.emplace(k, v);
  CHECK(oracle::hom_exists(l, i, pi));
}

}  // namespace

TEST_CASE("direct product of the two models of R(x) -> S(x) | T(x)") {
  const auto s = rst();
  const std::vector<Dexr> sigma{rule(s, "R(X) -> S(X) | T(X).")};
  const auto i1 = facts(s, "R(a). S(a).");
  const auto i2 = facts(s, "R(a). T(a).");
  const auto p = direct_product(i1, i2);
  CHECK(p.facts() == facts(s, "R(a*a).").facts());
  CHECK(p.domain().size() == 1);
  CHECK(satisfies_all(i1, sigma));
  CHECK(satisfies_all(i2, sigma));
  CHECK_FALSE(satisfies_all(p, sigma));

  const auto l = repairable_direct_product(i1, i2, sigma);
  CHECK(l == facts(s, "R(a*a). S(a*a)."));
  check_repairable(l, i1, i2, sigma);
  CHECK(repairable_direct_product(i1, i2, sigma) == l);
}

TEST_CASE("product domains are full Cartesian products") {
  const auto s = schema_of("schema { R/2 }");
  auto i = facts(s, "R(a,b).");
  i.add_constant(c("c"));
  const auto j = facts(s, "R(x,x).");
  const auto p = direct_product(i, j);
  CHECK(p.domain().size() == 3);
  CHECK(p.facts() == facts(s, "R(a*x, b*x).").facts());
  CHECK(direct_product(Structure(s), j).empty());
  CHECK(kind_of([&] { direct_product(i, facts(rst(), "R(a).")); }) == ErrorKind::SchemaMismatch);
}

TEST_CASE("critical structures are idempotent under products") {
  const auto s = schema_of("schema { R/2 S/1 }");
  const auto k = critical_structure(s, 1);
  const auto p = direct_product(k, k);
  CHECK(are_isomorphic(p, k));
  const std::vector<Dexr> sigma{rule(s, "R(X,Y) -> exists Z. R(Y,Z), S(Z).")};
  CHECK(are_isomorphic(repairable_direct_product(k, k, sigma), k));
}

TEST_CASE("projective homomorphism") {
  const auto s = rst();
  const auto i = facts(s, "R(a). S(b).");
  const auto p = direct_product(i, i);
  const auto pi = projective_homomorphism(p);
  CHECK(pi.size() == 4);
  CHECK(is_homomorphism(pi, p, i));
  CHECK(projective_homomorphism(Structure(s)).empty());
  CHECK(kind_of([&] { projective_homomorphism(i); }) == ErrorKind::NotAProduct);
}

TEST_CASE("empty rule set keeps the plain product") {
  const auto s = rst();
  const auto i = facts(s, "R(a). S(b).");
  const auto j = facts(s, "R(c). T(c).");
  CHECK(repairable_direct_product(i, j, std::vector<Dexr>{}) == direct_product(i, j));
}

TEST_CASE("inputs must be models and the chase must finish") {
  const auto s = rst();
  const std::vector<Dexr> sigma{rule(s, "R(X) -> S(X) | T(X).")};
  CHECK(kind_of([&] { repairable_direct_product(facts(s, "R(a)."), facts(s, "R(a). S(a)."), sigma); }) ==
        ErrorKind::InputNotModel);

  const auto g = schema_of("schema { R/1 S/1 T/1 F/2 G/2 }");
  const std::vector<Dexr> endless{
      rule(g, "R(X) -> S(X) | T(X)."),          rule(g, "S(X) -> exists Z. F(X,Z)."),
      rule(g, "F(X,Y) -> exists Z. F(Y,Z)."),   rule(g, "T(X) -> exists Z. G(X,Z)."),
      rule(g, "G(X,Y) -> exists Z. G(Y,Z)."),
  };
  const auto i = facts(g, "R(a). S(a). F(a,a).");
  const auto j = facts(g, "R(b). T(b). G(b,b).");
  CHECK(kind_of([&] { repairable_direct_product(i, j, endless, ChaseBudget{6, 200, 16}); }) ==
        ErrorKind::Exhausted);
}

TEST_CASE("repairable products of generated models meet all three conditions") {
  oracle::Rng rng(41);
  int checked = 0;
  for (int round = 0; round < 120; ++round) {
    const auto schema = oracle::small_schema(rng, 10);
    const auto sigma = oracle::random_rules(rng, schema, oracle::uniform(rng, 1, 2));
    std::vector<Structure> models;
    for (const auto& m : oracle::corpus(schema, 2, 10)) {
      if (!m.empty() && oracle::satisfies_all(m, sigma)) models.push_back(m);
    }
    if (models.empty()) continue;
    const auto& i = models[static_cast<std::size_t>(oracle::uniform(rng, 0, static_cast<int>(models.size()) - 1))];
    const auto& j = models[static_cast<std::size_t>(oracle::uniform(rng, 0, static_cast<int>(models.size()) - 1))];
    try {
      const auto l = repairable_direct_product(i, j, sigma, ChaseBudget{8, 400, 24});
      ++checked;
      check_repairable(l, i, j, sigma);
      CHECK(repairable_direct_product(i, j, sigma, ChaseBudget{8, 400, 24}) == l);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Exhausted);
    }
  }
  CHECK(checked > 50);
}
