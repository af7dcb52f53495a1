#include "dexr/schema.hpp"

#include <algorithm>
#include <set>

#include "dexr/error.hpp"

namespace dexr {

Schema::Schema(std::vector<RelationDecl> relations) : relations_(std::move(relations)) {
  std::set<std::string> seen;
  for (const auto& rel : relations_) {
    if (rel.name.empty()) throw Error(ErrorKind::InvalidSchema, "relation name must not be empty");
    if (rel.arity < 1) {
      throw Error(ErrorKind::InvalidSchema,
                  "relation " + rel.name + " must have positive arity, got " + std::to_string(rel.arity));
    }
    if (!seen.insert(rel.name).second) {
      throw Error(ErrorKind::InvalidSchema, "duplicate relation " + rel.name);
    }
  }
}

std::optional<RelId> Schema::find(std::string_view name) const {
  for (RelId i = 0; i < relations_.size(); ++i) {
    if (relations_[i].name == name) return i;
  }
  return std::nullopt;
}

int Schema::max_arity() const {
  int out = 0;
  for (const auto& rel : relations_) out = std::max(out, rel.arity);
  return out;
}

SchemaPtr make_schema(std::vector<RelationDecl> relations) {
  return std::make_shared<const Schema>(std::move(relations));
}

bool same_schema(const SchemaPtr& a, const SchemaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_schema(const SchemaPtr& a, const SchemaPtr& b, std::string_view what) {
  if (!same_schema(a, b)) {
    throw Error(ErrorKind::SchemaMismatch, std::string(what) + ": schemas differ");
  }
}

}  // namespace dexr
