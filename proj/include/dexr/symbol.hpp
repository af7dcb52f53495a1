#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace dexr {

/// Interned name shared by constants, variables and relation symbols.
///
/// Equality is pointer identity into a process-wide, append-only table, so
/// comparing two symbols never touches the characters. Ordering is
/// lexicographic on the underlying text, which keeps every sorted container
/// independent of interning order.
class Symbol {
 public:
  Symbol();
  explicit Symbol(std::string_view text);

  const std::string& str() const { return *text_; }
  bool empty() const { return text_->empty(); }

  friend bool operator==(Symbol a, Symbol b) { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b) {
    if (a.text_ == b.text_) return std::strong_ordering::equal;
    return *a.text_ <=> *b.text_;
  }

  std::size_t hash() const { return std::hash<const void*>{}(text_); }

 private:
  const std::string* text_;
};

using Constant = Symbol;
using Variable = Symbol;

}  // namespace dexr

template <>
struct std::hash<dexr::Symbol> {
  std::size_t operator()(dexr::Symbol s) const noexcept { return s.hash(); }
};
