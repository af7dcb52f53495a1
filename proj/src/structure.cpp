#include "dexr/structure.hpp"

#include <algorithm>
#include <string>

#include "dexr/error.hpp"

namespace dexr {

Structure::Structure(SchemaPtr schema) : schema_(std::move(schema)) {
  if (!schema_) throw Error(ErrorKind::InvalidArgument, "structure requires a schema");
  relations_.resize(schema_->size());
}

Structure::Structure(SchemaPtr schema, const std::vector<Fact>& facts, const std::set<Constant>& extra_domain)
    : Structure(std::move(schema)) {
  for (const auto& f : facts) add_fact(f);
  domain_.insert(extra_domain.begin(), extra_domain.end());
}

bool Structure::add_fact(const Fact& fact) {
  if (fact.relation >= relations_.size()) {
    throw Error(ErrorKind::UnknownRelation, "relation index " + std::to_string(fact.relation) + " not in schema");
  }
  if (static_cast<int>(fact.args.size()) != schema_->arity(fact.relation)) {
    throw Error(ErrorKind::Arity, "relation " + schema_->name(fact.relation) + " expects " +
                                      std::to_string(schema_->arity(fact.relation)) + " arguments, got " +
                                      std::to_string(fact.args.size()));
  }
  domain_.insert(fact.args.begin(), fact.args.end());
  return relations_[fact.relation].insert(fact.args).second;
}

bool Structure::contains(const Fact& fact) const { return contains(fact.relation, fact.args); }

bool Structure::contains(RelId relation, const Tuple& args) const {
  return relation < relations_.size() && relations_[relation].contains(args);
}

std::size_t Structure::fact_count() const {
  std::size_t n = 0;
  for (const auto& r : relations_) n += r.size();
  return n;
}

std::vector<Fact> Structure::facts() const {
  std::vector<Fact> out;
  for (RelId r = 0; r < relations_.size(); ++r) {
    for (const auto& t : relations_[r]) out.push_back(Fact{r, t});
  }
  return out;
}

bool operator==(const Structure& a, const Structure& b) {
  return same_schema(a.schema_, b.schema_) && a.domain_ == b.domain_ && a.relations_ == b.relations_;
}

std::set<Constant> active_domain(const Structure& s) {
  std::set<Constant> out;
  for (RelId r = 0; r < s.schema()->size(); ++r) {
    for (const auto& t : s.tuples(r)) out.insert(t.begin(), t.end());
  }
  return out;
}

Structure induced_substructure(const Structure& s, const std::set<Constant>& domain) {
  for (const auto& c : domain) {
    if (!s.domain().contains(c)) {
      throw Error(ErrorKind::DomainNotSubset, "constant " + c.str() + " is not in the domain");
    }
  }
  Structure out(s.schema());
  for (const auto& c : domain) out.add_constant(c);
  for (RelId r = 0; r < s.schema()->size(); ++r) {
    for (const auto& t : s.tuples(r)) {
      if (std::all_of(t.begin(), t.end(), [&](Constant c) { return domain.contains(c); })) {
        out.add_fact(Fact{r, t});
      }
    }
  }
  return out;
}

bool is_subset(const Structure& j, const Structure& i) {
  require_same_schema(j.schema(), i.schema(), "is_subset");
  for (RelId r = 0; r < j.schema()->size(); ++r) {
    const auto& mine = j.tuples(r);
    const auto& theirs = i.tuples(r);
    if (!std::includes(theirs.begin(), theirs.end(), mine.begin(), mine.end())) return false;
  }
  return true;
}

bool is_substructure(const Structure& j, const Structure& i) {
  require_same_schema(j.schema(), i.schema(), "is_substructure");
  if (!std::includes(i.domain().begin(), i.domain().end(), j.domain().begin(), j.domain().end())) return false;
  return induced_substructure(i, j.domain()) == j;
}

Structure critical_structure(const SchemaPtr& schema, int kappa) {
  if (kappa < 1) throw Error(ErrorKind::InvalidArgument, "critical structure needs kappa >= 1");
  std::vector<Constant> elems;
  for (int i = 1; i <= kappa; ++i) elems.emplace_back("c" + std::to_string(i));
  Structure out(schema);
  for (const auto& c : elems) out.add_constant(c);
  for (RelId r = 0; r < schema->size(); ++r) {
    const int arity = schema->arity(r);
    std::vector<std::size_t> idx(arity, 0);
    while (true) {
      Tuple t;
      for (auto k : idx) t.push_back(elems[k]);
      out.add_fact(Fact{r, std::move(t)});
      int pos = arity - 1;
      while (pos >= 0 && ++idx[pos] == elems.size()) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return out;
}

Structure merge(const Structure& a, const Structure& b) {
  require_same_schema(a.schema(), b.schema(), "merge");
  Structure out = a;
  for (const auto& c : b.domain()) out.add_constant(c);
  for (const auto& f : b.facts()) out.add_fact(f);
  return out;
}

bool is_linear(const Structure& s) { return s.fact_count() <= 1; }

bool is_guarded(const Structure& s) {
  if (s.empty()) return true;
  const auto adom = active_domain(s);
  for (const auto& f : s.facts()) {
    std::set<Constant> covered(f.args.begin(), f.args.end());
    if (covered == adom) return true;
  }
  return false;
}

}  // namespace dexr
