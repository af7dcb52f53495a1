#include "dexr/symbol.hpp"

#include <mutex>
#include <unordered_set>

namespace dexr {
namespace {

struct SymbolTable {
  std::mutex mutex;
  // Node-based set: element addresses stay valid across rehashing.
  std::unordered_set<std::string> names;

  const std::string* intern(std::string_view text) {
    std::lock_guard lock(mutex);
    return &*names.emplace(text).first;
  }
};

SymbolTable& table() {
  static SymbolTable instance;
  return instance;
}

}  // namespace

Symbol::Symbol() : text_(table().intern("")) {}

Symbol::Symbol(std::string_view text) : text_(table().intern(text)) {}

}  // namespace dexr
