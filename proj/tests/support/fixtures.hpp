#pragma once

#include <string_view>

#include "dexr/rule.hpp"
#include "dexr/structure.hpp"
#include "dexr/syntax.hpp"

namespace dexr::fixtures {

inline SchemaPtr schema_of(std::string_view decl) { return parse(decl).schema; }

/// {R/1, S/1, T/1}
inline SchemaPtr rst() { return schema_of("schema { R/1 S/1 T/1 }"); }

inline Structure facts(const SchemaPtr& s, std::string_view text) { return parse_structure(text, s); }
inline Dexr rule(const SchemaPtr& s, std::string_view text) { return parse_dexr(text, s); }
inline DisjunctiveDependency dd(const SchemaPtr& s, std::string_view text) { return parse_rule(text, s); }

inline Constant c(std::string_view name) { return Constant(name); }

}  // namespace dexr::fixtures
