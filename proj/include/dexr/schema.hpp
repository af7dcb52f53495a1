#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dexr {

using RelId = std::uint32_t;

struct RelationDecl {
  std::string name;
  int arity = 0;

  friend bool operator==(const RelationDecl&, const RelationDecl&) = default;
};

/// Finite, ordered set of relation symbols with positive arities.
class Schema {
 public:
  /// Throws Error(InvalidSchema) on duplicate names or non-positive arity.
  explicit Schema(std::vector<RelationDecl> relations);

  std::size_t size() const { return relations_.size(); }
  const RelationDecl& operator[](RelId id) const { return relations_.at(id); }
  const std::vector<RelationDecl>& relations() const { return relations_; }

  std::optional<RelId> find(std::string_view name) const;
  int arity(RelId id) const { return relations_.at(id).arity; }
  const std::string& name(RelId id) const { return relations_.at(id).name; }
  /// Maximum arity over all relations (ar(S)); 0 for the empty schema.
  int max_arity() const;

  friend bool operator==(const Schema&, const Schema&) = default;

 private:
  std::vector<RelationDecl> relations_;
};

using SchemaPtr = std::shared_ptr<const Schema>;

SchemaPtr make_schema(std::vector<RelationDecl> relations);

/// Pointer-or-content equality; the usual guard before mixing two objects.
bool same_schema(const SchemaPtr& a, const SchemaPtr& b);

/// Throws Error(SchemaMismatch) unless same_schema(a, b).
void require_same_schema(const SchemaPtr& a, const SchemaPtr& b, std::string_view what);

}  // namespace dexr
