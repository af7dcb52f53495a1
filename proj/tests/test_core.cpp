#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dexr/error.hpp"
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

}  // namespace

TEST_SUITE("schema") {
  TEST_CASE("rejects duplicate names and non-positive arities") {
    CHECK(kind_of([] { make_schema({{"R", 1}, {"R", 2}}); }) == ErrorKind::InvalidSchema);
    CHECK(kind_of([] { make_schema({{"R", 0}}); }) == ErrorKind::InvalidSchema);
  }

  TEST_CASE("max arity") {
    CHECK(make_schema({{"R", 1}, {"E", 3}})->max_arity() == 3);
    CHECK(make_schema({})->max_arity() == 0);
  }
}

TEST_SUITE("structure") {
  TEST_CASE("active domain") {
    const auto s = schema_of("schema { R/1 S/1 }");
    auto i = facts(s, "domain { a b } R(a).");
    CHECK(active_domain(i) == std::set<Constant>{c("a")});
    CHECK(i.domain().size() == 2);
    CHECK(active_domain(Structure(s)).empty());
    const auto s2 = schema_of("schema { R/2 S/1 }");
    CHECK(active_domain(facts(s2, "R(a,b). S(b).")) == std::set<Constant>{c("a"), c("b")});
  }

  TEST_CASE("induced substructure") {
    const auto s = schema_of("schema { R/2 }");
    const auto i = facts(s, "R(a,b). R(a,a).");
    CHECK(induced_substructure(i, {c("a")}) == facts(s, "R(a,a)."));
    CHECK(induced_substructure(i, i.domain()) == i);
    const auto single = facts(s, "R(a,b).");
    const auto k = induced_substructure(single, {c("a")});
    CHECK(k.empty());
    CHECK(k.domain() == std::set<Constant>{c("a")});
    CHECK(kind_of([&] { induced_substructure(i, {c("z")}); }) == ErrorKind::DomainNotSubset);
  }

  TEST_CASE("subset differs from induced substructure") {
    const auto s = schema_of("schema { R/2 S/1 }");
    const auto i = facts(s, "R(a,a). R(a,b).");
    auto j = facts(s, "R(a,a).");
    j.add_constant(c("b"));
    CHECK(is_subset(j, i));
    CHECK_FALSE(is_substructure(j, i));
    CHECK(is_subset(Structure(s), i));
    CHECK_FALSE(is_subset(facts(s, "S(a)."), facts(s, "R(a,a).")));
    CHECK(kind_of([&] { is_subset(j, facts(rst(), "R(a).")); }) == ErrorKind::SchemaMismatch);
  }

  TEST_CASE("critical structure") {
    const auto unary = schema_of("schema { R/1 }");
    const auto k2 = critical_structure(unary, 2);
    CHECK(k2.domain() == std::set<Constant>{c("c1"), c("c2")});
    CHECK(k2.tuples(0).size() == 2);
    CHECK(critical_structure(schema_of("schema { R/2 }"), 2).fact_count() == 4);
  }

  TEST_CASE("linear and guarded structures") {
    const auto s = schema_of("schema { R/2 S/1 }");
    CHECK(is_linear(Structure(s)));
    CHECK(is_linear(facts(s, "R(a,b).")));
    CHECK_FALSE(is_linear(facts(s, "R(a,b). S(a).")));
    CHECK(is_guarded(facts(s, "R(a,b). S(a).")));
    CHECK_FALSE(is_guarded(facts(s, "R(a,b). S(c).")));
  }
}

TEST_SUITE("rules") {
  TEST_CASE("validation") {
    const auto s = schema_of("schema { R/2 S/1 }");
    const auto x = Term::var("X");
    const auto y = Term::var("Y");
    CHECK(kind_of([&] { Dexr(s, {Atom{1, {x}}}, {}); }) == ErrorKind::InvalidRule);
    // Unbound head variable.
    CHECK(kind_of([&] {
            Dexr(s, {Atom{1, {x}}}, {ExistentialConjunction{{}, {Atom{0, {x, y}}}}});
          }) == ErrorKind::InvalidRule);
    // Existential clashing with a body variable.
    CHECK(kind_of([&] {
            Dexr(s, {Atom{0, {x, y}}}, {ExistentialConjunction{{Variable("Y")}, {Atom{1, {y}}}}});
          }) == ErrorKind::InvalidRule);
    CHECK(kind_of([&] {
            Dexr(s, {Atom{1, {Term::constant("a")}}}, {ExistentialConjunction{{}, {Atom{1, {Term::constant("a")}}}}});
          }) == ErrorKind::ConstantInRule);
    CHECK(kind_of([&] { Dexr(s, {Atom{1, {x, x}}}, {ExistentialConjunction{{}, {Atom{1, {x}}}}}); }) ==
          ErrorKind::Arity);
  }

  TEST_CASE("equality up to renaming and disjunct order") {
    const auto s = rst();
    CHECK(rule(s, "R(X) -> S(X) | T(X).") == rule(s, "R(Y) -> T(Y) | S(Y)."));
    CHECK(rule(s, "R(X) -> S(X) | S(X).") == rule(s, "R(X) -> S(X)."));
    CHECK(rule(s, "R(X) -> exists A. S(A) | exists B. S(B).").head().size() == 1);
    CHECK_FALSE(rule(s, "R(X) -> S(X).") == rule(s, "R(X) -> T(X)."));
  }

  TEST_CASE("profiles") {
    const auto s = schema_of("schema { R/2 S/1 T/2 }");
    CHECK(profile_of(rule(rst(), "R(X) -> S(X) | T(X).")) == RuleProfile{1, 0, 2});
    CHECK(profile_of(rule(s, "R(X,Y) -> exists Z. T(X,Z).")) == RuleProfile{2, 1, 1});
    CHECK(profile_of(dd(s, "R(X,Y) -> X = Y | exists Z. S(Z).")) == RuleProfile{2, 1, 1});
    const std::vector<Dexr> set{rule(s, "R(X,Y) -> S(X)."), rule(s, "S(X) -> exists A B. T(A,B).")};
    CHECK(profile_of(set) == RuleProfile{2, 2, 1});
  }

  TEST_CASE("guarded and linear rules") {
    const auto s = schema_of("schema { R/2 S/1 }");
    CHECK(rule(s, "R(X,Y), S(X) -> S(Y).").is_guarded());
    CHECK_FALSE(rule(s, "R(X,Y), S(X) -> S(Y).").is_linear());
    CHECK_FALSE(rule(s, "S(X), S(Y) -> R(X,Y).").is_guarded());
    CHECK(rule(s, "true -> exists Z. S(Z).").is_guarded());
  }

  TEST_CASE("dependency kinds") {
    const auto s = schema_of("schema { R/2 }");
    CHECK(dd(s, "R(X,Y) -> X = Y.").is_deqr());
    CHECK(dd(s, "true -> false.").is_falsity());
    CHECK_FALSE(dd(s, "R(X,Y) -> false.").is_dexr());
    CHECK(dd(s, "R(X,Y) -> R(Y,X).").is_dexr());
  }
}

TEST_SUITE("satisfaction") {
  TEST_CASE("dexrs") {
    const auto s = rst();
    const auto sigma = rule(s, "R(X) -> S(X) | T(X).");
    CHECK(satisfies(facts(s, "R(a). S(a)."), sigma));
    CHECK_FALSE(satisfies(facts(s, "R(a)."), sigma));
    const auto product = facts(s, "R(a*a).");
    CHECK_FALSE(satisfies(product, sigma));
  }

  TEST_CASE("empty body") {
    const auto s = rst();
    const auto sigma = rule(s, "true -> exists Z. S(Z).");
    CHECK_FALSE(satisfies(Structure(s), sigma));
    CHECK_FALSE(satisfies(facts(s, "R(a)."), sigma));
    CHECK(satisfies(facts(s, "S(b)."), sigma));
  }

  TEST_CASE("dependencies") {
    const auto s = schema_of("schema { R/2 }");
    const auto eq = dd(s, "R(X,Y) -> X = Y.");
    CHECK_FALSE(satisfies(facts(s, "R(a,b)."), eq));
    CHECK(satisfies(facts(s, "R(a,a)."), eq));
    CHECK_FALSE(satisfies(facts(s, "R(a,a)."), dd(s, "true -> false.")));
    CHECK_FALSE(satisfies(Structure(s), dd(s, "true -> false.")));
    CHECK(satisfies(Structure(s), dd(s, "R(X,Y) -> false.")));
    CHECK_FALSE(satisfies(facts(s, "R(a,b)."), dd(s, "R(X,Y) -> false.")));
  }

  TEST_CASE("violations report the failing match") {
    const auto s = rst();
    const auto v = find_violation(facts(s, "R(a). R(b). S(a)."), rule(s, "R(X) -> S(X)."));
    REQUIRE(v);
    CHECK(v->at(Variable("X1")) == c("b"));
  }
}

TEST_SUITE("properties") {
  TEST_CASE("library satisfaction agrees with the brute-force evaluator") {
    oracle::Rng rng(11);
    for (int round = 0; round < 300; ++round) {
      const auto schema = oracle::random_schema(rng);
      const auto sigma = oracle::random_dexr(rng, schema);
      const auto i = oracle::random_structure(rng, schema, static_cast<std::size_t>(oracle::uniform(rng, 0, 3)));
      const bool expected = oracle::satisfies(i, sigma);
      CHECK(satisfies(i, sigma) == expected);
      CHECK(satisfies(i, DisjunctiveDependency::from(sigma)) == expected);
    }
  }

  TEST_CASE("induced substructures are subsets") {
    oracle::Rng rng(12);
    for (int round = 0; round < 200; ++round) {
      const auto schema = oracle::random_schema(rng);
      const auto i = oracle::random_structure(rng, schema, 3);
      CHECK(induced_substructure(i, i.domain()) == i);
      std::set<Constant> d;
      for (const auto& x : i.domain()) {
        if (oracle::uniform(rng, 0, 1)) d.insert(x);
      }
      const auto j = induced_substructure(i, d);
      CHECK(is_substructure(j, i));
      CHECK(is_subset(j, i));
    }
  }

  TEST_CASE("critical structures satisfy every rule") {
    oracle::Rng rng(13);
    for (int round = 0; round < 100; ++round) {
      const auto schema = oracle::random_schema(rng);
      const auto sigma = oracle::random_dexr(rng, schema);
      for (int kappa = 1; kappa <= 5; ++kappa) CHECK(satisfies(critical_structure(schema, kappa), sigma));
    }
  }

  TEST_CASE("adding a body atom with a fresh variable never lowers n") {
    oracle::Rng rng(14);
    for (int round = 0; round < 100; ++round) {
      const auto schema = oracle::random_schema(rng);
      const auto sigma = oracle::random_dexr(rng, schema);
      auto body = sigma.body();
      Atom extra{0, {}};
      for (int k = 0; k < schema->arity(0); ++k) extra.args.push_back(Term::var("Fresh"));
      body.push_back(extra);
      const Dexr bigger(schema, body, sigma.head());
      CHECK(profile_of(bigger).n >= profile_of(sigma).n);
    }
  }
}
