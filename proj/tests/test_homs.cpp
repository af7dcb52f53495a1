#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "dexr/error.hpp"
#include "dexr/homs.hpp"
#include "dexr/products.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace dexr;
using namespace dexr::fixtures;

namespace {

std::vector<Atom> atoms_of(const SchemaPtr& s, std::string_view body) {
  // Reuse the rule parser for variable atoms: "<body> -> false."
  return dd(s, std::string(body) + " -> false.").body();
}

Assignment compose(const Assignment& g, const Assignment& h) {
  Assignment out;
  for (const auto& [x, y] : h) out.emplace(x, g.at(y));
  return out;
}

}  // namespace

TEST_CASE("atom matching") {
  const auto s = schema_of("schema { R/2 S/1 }");
  const auto m = find_match(atoms_of(s, "R(X,Y)"), facts(s, "R(c,c)."));
  REQUIRE(m);
  CHECK(m->at(Variable("X1")) == c("c"));
  CHECK(m->at(Variable("X2")) == c("c"));
  CHECK_FALSE(find_match(atoms_of(s, "R(X,X)"), facts(s, "R(a,b).")));
}

TEST_CASE("enumeration") {
  const auto s = schema_of("schema { R/1 S/1 }");
  CHECK(all_matches(atoms_of(s, "R(X)"), facts(s, "R(a). R(b).")).size() == 2);
  CHECK(all_matches(std::vector<Atom>{}, facts(s, "R(a).")).size() == 1);
  CHECK(all_matches(atoms_of(s, "R(X), S(X)"), facts(s, "R(a). S(b).")).empty());
  MatchOptions free;
  free.free_variables = {Variable("F")};
  CHECK(all_matches(atoms_of(s, "R(X)"), facts(s, "R(a). S(b)."), {}, free).size() == 2);
  MatchOptions injective;
  injective.injective = true;
  CHECK(all_matches(atoms_of(s, "R(X), R(Y)"), facts(s, "R(a). R(b)."), {}, injective).size() == 2);
}

TEST_CASE("structure homomorphisms map isolated elements too") {
  const auto s = schema_of("schema { R/1 }");
  auto from = facts(s, "R(a).");
  from.add_constant(c("z"));
  const auto homs = all_homomorphisms(from, facts(s, "R(p). R(q)."));
  CHECK(homs.size() == 4);
  for (const auto& h : homs) CHECK(h.contains(c("z")));
  CHECK_THROWS_AS(find_homomorphism(from, facts(rst(), "R(a).")), Error);
}

TEST_CASE("projection of a product is a homomorphism") {
  const auto s = rst();
  const auto i1 = facts(s, "R(a). S(a).");
  const auto p = direct_product(i1, facts(s, "R(a). T(a)."));
  const auto pi = projective_homomorphism(p);
  const auto h = find_homomorphism(p, i1, pi);
  REQUIRE(h);
  CHECK(*h == pi);
}

TEST_CASE("isomorphism") {
  const auto s = schema_of("schema { R/2 S/1 }");
  CHECK(are_isomorphic(facts(s, "R(a,a)."), facts(s, "R(b,b).")));
  CHECK_FALSE(are_isomorphic(facts(s, "R(a,b)."), facts(s, "R(a,a).")));
  const auto i = facts(s, "R(a,b). R(b,c). S(a).");
  CHECK(are_isomorphic(i, induced_substructure(i, i.domain())));
  CHECK(are_isomorphic(i, facts(s, "R(y,z). R(x,y). S(x).")));
  CHECK_FALSE(are_isomorphic(i, facts(s, "R(y,z). R(x,y). S(y).")));
  auto wider = i;
  wider.add_constant(c("d"));
  CHECK_FALSE(are_isomorphic(i, wider));
}

TEST_CASE("agreement with brute force on generated pairs") {
  oracle::Rng rng(31);
  for (int round = 0; round < 250; ++round) {
    const auto schema = oracle::random_schema(rng);
    const auto a = oracle::random_structure(rng, schema, static_cast<std::size_t>(oracle::uniform(rng, 1, 3)), 300);
    const auto b = oracle::random_structure(rng, schema, static_cast<std::size_t>(oracle::uniform(rng, 1, 3)), 500);
    const auto expected = oracle::all_homs(a, b);
    const auto found = all_homomorphisms(a, b);
    CHECK(found.size() == expected.size());
    CHECK(all_homomorphisms(a, b) == found);
    std::vector<Assignment> sorted_found = found;
    std::sort(sorted_found.begin(), sorted_found.end());
    CHECK(std::adjacent_find(sorted_found.begin(), sorted_found.end()) == sorted_found.end());
    CHECK(find_homomorphism(a, b).has_value() == !found.empty());
    for (const auto& h : found) CHECK(is_homomorphism(h, a, b));
  }
}

TEST_CASE("composition of found homomorphisms") {
  oracle::Rng rng(32);
  int composed = 0;
  for (int round = 0; round < 300; ++round) {
    const auto schema = oracle::random_schema(rng);
    const auto i = oracle::random_structure(rng, schema, 2, 300);
    const auto j = oracle::random_structure(rng, schema, 3, 500);
    const auto k = oracle::random_structure(rng, schema, 3, 600);
    const auto h = find_homomorphism(i, j);
    const auto g = find_homomorphism(j, k);
    if (!h || !g) continue;
    ++composed;
    CHECK(is_homomorphism(compose(*g, *h), i, k));
  }
  CHECK(composed > 20);
}

TEST_CASE("isomorphism is an equivalence on a small corpus") {
  const auto s = schema_of("schema { R/2 }");
  const auto all = oracle::corpus(s, 2, 4);
  for (const auto& a : all) {
    CHECK(are_isomorphic(a, a));
    for (const auto& b : all) {
      const bool ab = are_isomorphic(a, b);
      CHECK(ab == are_isomorphic(b, a));
      // Necessary conditions, checked by brute force.
      const bool both = a.domain().size() == b.domain().size() && a.fact_count() == b.fact_count() &&
                        oracle::hom_exists(a, b) && oracle::hom_exists(b, a);
      if (ab) CHECK(both);
      if (!ab) continue;
      for (const auto& d : all) {
        if (are_isomorphic(b, d)) CHECK(are_isomorphic(a, d));
      }
    }
  }
}
