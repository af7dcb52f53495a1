#include "dexr/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "dexr/error.hpp"

namespace dexr {

namespace {

constexpr std::string_view kPairOpen = "⟨";
constexpr std::string_view kPairClose = "⟩";

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// ---------------------------------------------------------------- lexer

enum class Tok { Word, Quoted, Int, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePosition pos;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Quoted: return "string \"" + t.text + "\"";
    default: return "'" + t.text + "'";
  }
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.pos = {line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      tok.kind = Tok::Word;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      tok.kind = Tok::Int;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '"') {
      advance(1);
      std::string text;
      bool closed = false;
      while (i < src.size()) {
        if (src[i] == '"') {
          advance(1);
          closed = true;
          break;
        }
        if (src[i] == '\\' && i + 1 < src.size()) advance(1);
        if (src[i] == '\n') break;
        text.push_back(src[i]);
        advance(1);
      }
      if (!closed) throw ParseError(ErrorKind::Syntax, tok.pos.line, tok.pos.column, "unterminated string");
      tok.kind = Tok::Quoted;
      tok.text = std::move(text);
    } else if (src.substr(i, 2) == "->") {
      tok.kind = Tok::Punct;
      tok.text = "->";
      advance(2);
    } else if (std::string_view("(){},.|=/*").find(c) != std::string_view::npos) {
      tok.kind = Tok::Punct;
      tok.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(ErrorKind::Syntax, line, col, "unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

// ------------------------------------------------------------ raw syntax

struct RawTerm {
  bool variable = false;
  std::string name;  // variables: source name; constants: internal name
  SourcePosition pos;
};

struct RawAtom {
  std::string relation;
  std::vector<RawTerm> args;
  SourcePosition pos;
};

struct RawDisjunct {
  bool equality = false;
  RawTerm lhs;
  RawTerm rhs;
  std::vector<RawTerm> existentials;
  std::vector<RawAtom> atoms;
};

struct RawRule {
  std::vector<RawAtom> body;
  std::vector<RawDisjunct> head;
  SourcePosition pos;
};

struct RawDecl {
  std::string name;
  int arity = 0;
  SourcePosition pos;
};

struct RawDocument {
  std::optional<std::vector<RawDecl>> schema;
  SourcePosition schema_pos;
  std::vector<RawTerm> domain;
  bool has_domain = false;
  std::vector<RawAtom> facts;
  std::vector<RawRule> rules;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  RawDocument document() {
    RawDocument doc;
    while (!at_end()) {
      if (is_keyword("schema")) {
        if (doc.schema) fail_here("duplicate schema declaration", {});
        doc.schema_pos = peek().pos;
        doc.schema = schema_decl();
      } else if (is_keyword("domain")) {
        domain_decl(doc);
      } else {
        statement(doc);
      }
    }
    return doc;
  }

  RawRule single_rule() {
    RawRule r = rule_from(peek().pos, {});
    if (peek_punct(".")) next();
    expect_end();
    return r;
  }

  RawTerm single_constant() {
    RawTerm t = term();
    if (t.variable) fail_at(t.pos, "expected a constant, found variable " + t.name, {});
    expect_end();
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == Tok::End; }
  bool peek_punct(std::string_view p, std::size_t k = 0) const {
    return peek(k).kind == Tok::Punct && peek(k).text == p;
  }
  bool is_keyword(std::string_view kw) const {
    return peek().kind == Tok::Word && peek().text == kw && !peek_punct("(", 1);
  }

  [[noreturn]] void fail_at(SourcePosition p, const std::string& msg, std::vector<std::string> expected) const {
    throw ParseError(ErrorKind::Syntax, p.line, p.column, msg, std::move(expected));
  }
  [[noreturn]] void fail_here(const std::string& msg, std::vector<std::string> expected) const {
    fail_at(peek().pos, msg, std::move(expected));
  }
  [[noreturn]] void unexpected(std::vector<std::string> expected) const {
    fail_here("unexpected " + describe(peek()), std::move(expected));
  }

  void expect_punct(std::string_view p) {
    if (!peek_punct(p)) unexpected({"'" + std::string(p) + "'"});
    next();
  }
  void expect_end() {
    if (!at_end()) unexpected({"end of input"});
  }

  std::vector<RawDecl> schema_decl() {
    next();
    expect_punct("{");
    std::vector<RawDecl> decls;
    while (!peek_punct("}")) {
      if (peek().kind != Tok::Word) unexpected({"relation name", "'}'"});
      RawDecl d;
      d.pos = peek().pos;
      d.name = next().text;
      expect_punct("/");
      if (peek().kind != Tok::Int) unexpected({"arity"});
      const auto digits = next().text;
      d.arity = digits.size() > 6 ? 1000000 : std::stoi(digits);
      decls.push_back(std::move(d));
    }
    if (decls.empty()) unexpected({"relation name"});
    next();
    return decls;
  }

  void domain_decl(RawDocument& doc) {
    next();
    expect_punct("{");
    doc.has_domain = true;
    std::size_t count = 0;
    while (!peek_punct("}")) {
      RawTerm t = term();
      if (t.variable) fail_at(t.pos, "variable " + t.name + " in domain block", {"constant"});
      doc.domain.push_back(std::move(t));
      ++count;
    }
    if (count == 0) unexpected({"constant"});
    next();
  }

  void statement(RawDocument& doc) {
    const SourcePosition start = peek().pos;
    if (is_keyword("true")) {
      next();
      doc.rules.push_back(rule_from(start, {}));
      expect_punct(".");
      return;
    }
    RawAtom first = atom();
    if (peek_punct(".")) {
      next();
      for (const auto& t : first.args) {
        if (t.variable) fail_at(t.pos, "variable " + t.name + " in fact", {"constant"});
      }
      doc.facts.push_back(std::move(first));
      return;
    }
    std::vector<RawAtom> body{std::move(first)};
    while (peek_punct(",")) {
      next();
      body.push_back(atom());
    }
    if (!peek_punct("->")) unexpected({"'.'", "','", "'->'"});
    doc.rules.push_back(rule_from(start, std::move(body)));
    expect_punct(".");
  }

  // Parses the rest of a rule. With an empty `body`, either the body is read
  // here or "true" has already been consumed.
  RawRule rule_from(SourcePosition start, std::vector<RawAtom> body) {
    RawRule r;
    r.pos = start;
    if (body.empty() && !peek_punct("->")) {
      if (is_keyword("true")) {
        next();
      } else {
        body.push_back(atom());
        while (peek_punct(",")) {
          next();
          body.push_back(atom());
        }
      }
    }
    r.body = std::move(body);
    expect_punct("->");
    if (is_keyword("false")) {
      next();
      return r;
    }
    r.head.push_back(disjunct());
    while (peek_punct("|")) {
      next();
      r.head.push_back(disjunct());
    }
    return r;
  }

  RawDisjunct disjunct() {
    RawDisjunct d;
    if (is_keyword("exists")) {
      next();
      while (peek().kind == Tok::Word && !peek_punct("(", 1)) {
        RawTerm v = term();
        if (!v.variable) fail_at(v.pos, "existential " + v.name + " must be a variable", {"variable"});
        d.existentials.push_back(std::move(v));
      }
      if (d.existentials.empty()) unexpected({"variable"});
      expect_punct(".");
    } else if (peek().kind == Tok::Word && !peek_punct("(", 1)) {
      d.equality = true;
      d.lhs = term();
      expect_punct("=");
      d.rhs = term();
      for (const auto* t : {&d.lhs, &d.rhs}) {
        if (!t->variable) {
          throw ParseError(ErrorKind::ConstantInRule, t->pos.line, t->pos.column,
                           "constant " + constant_text(Constant(t->name)) + " in rule");
        }
      }
      return d;
    }
    d.atoms.push_back(atom());
    while (peek_punct(",")) {
      next();
      d.atoms.push_back(atom());
    }
    return d;
  }

  RawAtom atom() {
    if (peek().kind != Tok::Word || !peek_punct("(", 1)) unexpected({"atom"});
    RawAtom a;
    a.pos = peek().pos;
    a.relation = next().text;
    if (is_reserved_name(a.relation) || a.relation.front() == '_') {
      fail_at(a.pos, "invalid relation name " + a.relation, {});
    }
    next();
    a.args.push_back(term());
    while (peek_punct(",")) {
      next();
      a.args.push_back(term());
    }
    expect_punct(")");
    return a;
  }

  RawTerm term() {
    RawTerm t = primary();
    if (t.variable) return t;
    while (peek_punct("*")) {
      next();
      RawTerm rhs = primary();
      if (rhs.variable) fail_at(rhs.pos, "variable " + rhs.name + " in pair constant", {"constant"});
      t.name = make_pair_constant(Constant(t.name), Constant(rhs.name)).str();
    }
    return t;
  }

  RawTerm primary() {
    const Token& tok = peek();
    RawTerm t;
    t.pos = tok.pos;
    if (tok.kind == Tok::Word && !peek_punct("(", 1)) {
      if (tok.text.front() == '_') {
        if (is_reserved_name(tok.text)) fail_here("reserved name " + tok.text + " is not allowed in input", {});
        unexpected({"term"});
      }
      t.variable = std::isupper(static_cast<unsigned char>(tok.text.front())) != 0;
      t.name = tok.text;
      next();
      return t;
    }
    if (tok.kind == Tok::Quoted) {
      if (is_reserved_name(tok.text)) fail_here("reserved name " + tok.text + " is not allowed in input", {});
      for (auto bad : {kPairOpen, kPairClose, std::string_view(",")}) {
        if (tok.text.find(bad) != std::string::npos) {
          fail_here("quoted constant may not contain '" + std::string(bad) + "'", {});
        }
      }
      if (tok.text.empty()) fail_here("empty constant name", {});
      t.name = tok.text;
      next();
      return t;
    }
    if (peek_punct("(")) {
      next();
      RawTerm inner = term();
      if (inner.variable) fail_at(inner.pos, "variable " + inner.name + " in pair constant", {"constant"});
      expect_punct(")");
      inner.pos = t.pos;
      return inner;
    }
    unexpected({"variable", "constant"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// -------------------------------------------------------------- resolution

class Resolver {
 public:
  Resolver(const RawDocument& raw, const ParseOptions& options) {
    if (raw.schema) {
      std::vector<RelationDecl> decls;
      std::set<std::string> seen;
      for (const auto& d : *raw.schema) {
        if (d.arity < 1) {
          throw ParseError(ErrorKind::InvalidSchema, d.pos.line, d.pos.column,
                           "relation " + d.name + " must have positive arity");
        }
        if (!seen.insert(d.name).second) {
          throw ParseError(ErrorKind::InvalidSchema, d.pos.line, d.pos.column, "duplicate relation " + d.name);
        }
        decls.push_back({d.name, d.arity});
      }
      auto declared = make_schema(std::move(decls));
      if (options.schema && !same_schema(options.schema, declared)) {
        throw ParseError(ErrorKind::SchemaMismatch, raw.schema_pos.line, raw.schema_pos.column,
                         "declared schema differs from the expected one");
      }
      schema_ = options.schema ? options.schema : declared;
      declared_ = true;
    } else if (options.schema) {
      schema_ = options.schema;
    } else {
      schema_ = infer(raw);
    }
  }

  const SchemaPtr& schema() const { return schema_; }
  bool declared() const { return declared_; }

  Atom atom(const RawAtom& a, bool in_rule) const {
    auto id = schema_->find(a.relation);
    if (!id) {
      throw ParseError(ErrorKind::UnknownRelation, a.pos.line, a.pos.column, "unknown relation " + a.relation);
    }
    if (static_cast<int>(a.args.size()) != schema_->arity(*id)) {
      throw ParseError(ErrorKind::Arity, a.pos.line, a.pos.column,
                       "relation " + a.relation + " expects " + std::to_string(schema_->arity(*id)) +
                           " arguments, got " + std::to_string(a.args.size()));
    }
    Atom out{*id, {}};
    for (const auto& t : a.args) {
      if (in_rule && !t.variable) {
        throw ParseError(ErrorKind::ConstantInRule, t.pos.line, t.pos.column,
                         "constant " + constant_text(Constant(t.name)) + " in rule");
      }
      out.args.push_back(t.variable ? Term::var(t.name) : Term::constant(t.name));
    }
    return out;
  }

  DisjunctiveDependency rule(const RawRule& r) const {
    std::vector<Atom> body;
    for (const auto& a : r.body) body.push_back(atom(a, true));
    std::vector<Disjunct> head;
    for (const auto& d : r.head) {
      if (d.equality) {
        head.emplace_back(Equality{Variable(d.lhs.name), Variable(d.rhs.name)});
        continue;
      }
      ExistentialConjunction conj;
      for (const auto& v : d.existentials) conj.existentials.emplace_back(v.name);
      for (const auto& a : d.atoms) conj.atoms.push_back(atom(a, true));
      head.emplace_back(std::move(conj));
    }
    try {
      return DisjunctiveDependency(schema_, std::move(body), std::move(head));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.kind(), r.pos.line, r.pos.column, e.what());
    }
  }

 private:
  static SchemaPtr infer(const RawDocument& raw) {
    std::vector<RelationDecl> decls;
    std::map<std::string, int> arity;
    auto see = [&](const RawAtom& a) {
      const int n = static_cast<int>(a.args.size());
      auto [it, inserted] = arity.emplace(a.relation, n);
      if (inserted) {
        decls.push_back({a.relation, n});
      } else if (it->second != n) {
        throw ParseError(ErrorKind::Arity, a.pos.line, a.pos.column,
                         "relation " + a.relation + " was first used with " + std::to_string(it->second) +
                             " arguments, here with " + std::to_string(n));
      }
    };
    // Source order: facts and rules interleave, so sort uses by position.
    std::vector<const RawAtom*> uses;
    for (const auto& f : raw.facts) uses.push_back(&f);
    for (const auto& r : raw.rules) {
      for (const auto& a : r.body) uses.push_back(&a);
      for (const auto& d : r.head) {
        for (const auto& a : d.atoms) uses.push_back(&a);
      }
    }
    std::stable_sort(uses.begin(), uses.end(), [](const RawAtom* x, const RawAtom* y) {
      return std::pair(x->pos.line, x->pos.column) < std::pair(y->pos.line, y->pos.column);
    });
    for (const auto* a : uses) see(*a);
    return make_schema(std::move(decls));
  }

  SchemaPtr schema_;
  bool declared_ = false;
};

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join_args(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += ",";
    out += parts[i];
  }
  return out;
}

std::string atoms_text(const std::vector<Atom>& atoms, const Schema& schema) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_text(atoms[i], schema);
  }
  return out;
}

std::string conjunction_text(const ExistentialConjunction& c, const Schema& schema) {
  std::string out;
  if (!c.existentials.empty()) {
    out += "exists";
    for (const auto& v : c.existentials) out += " " + v.str();
    out += ". ";
  }
  return out + atoms_text(c.atoms, schema);
}

std::string body_text(const std::vector<Atom>& body, const Schema& schema) {
  return body.empty() ? "true" : atoms_text(body, schema);
}

}  // namespace

std::vector<Dexr> SourceDocument::dexrs() const {
  std::vector<Dexr> out;
  for (const auto& r : rules) {
    if (!r.rule.is_dexr()) {
      throw Error(ErrorKind::InvalidRule, std::to_string(r.position.line) + ":" + std::to_string(r.position.column) +
                                              ": rule is not a dexr: " + to_text(r.rule));
    }
    out.push_back(r.rule.to_dexr());
  }
  return out;
}

std::vector<DisjunctiveDependency> SourceDocument::dependencies() const {
  std::vector<DisjunctiveDependency> out;
  for (const auto& r : rules) out.push_back(r.rule);
  return out;
}

SourceDocument parse(std::string_view text, const ParseOptions& options) {
  Parser parser(text);
  const RawDocument raw = parser.document();
  Resolver resolver(raw, options);
  SourceDocument doc{resolver.schema(), resolver.declared(), Structure(resolver.schema()), false, {}};
  doc.has_structure = !raw.facts.empty() || raw.has_domain;
  for (const auto& t : raw.domain) doc.structure.add_constant(Constant(t.name));
  for (const auto& f : raw.facts) {
    const Atom a = resolver.atom(f, false);
    Fact fact{a.relation, {}};
    for (const auto& t : a.args) fact.args.push_back(t.name);
    doc.structure.add_fact(fact);
  }
  for (const auto& r : raw.rules) doc.rules.push_back({resolver.rule(r), r.pos});
  return doc;
}

DisjunctiveDependency parse_rule(std::string_view text, const SchemaPtr& schema) {
  Parser parser(text);
  const RawRule raw = parser.single_rule();
  RawDocument doc;
  doc.rules.push_back(raw);
  Resolver resolver(doc, ParseOptions{schema});
  return resolver.rule(raw);
}

Dexr parse_dexr(std::string_view text, const SchemaPtr& schema) {
  auto dd = parse_rule(text, schema);
  if (!dd.is_dexr()) throw Error(ErrorKind::InvalidRule, "rule is not a dexr: " + to_text(dd));
  return dd.to_dexr();
}

Structure parse_structure(std::string_view text, const SchemaPtr& schema) {
  auto doc = parse(text, ParseOptions{schema});
  if (!doc.rules.empty()) {
    const auto& p = doc.rules.front().position;
    throw ParseError(ErrorKind::Syntax, p.line, p.column, "rules are not allowed in a structure");
  }
  return doc.structure;
}

Constant parse_constant(std::string_view text) {
  Parser parser(text);
  return Constant(parser.single_constant().name);
}

Constant make_pair_constant(Constant left, Constant right) {
  return Constant(std::string(kPairOpen) + left.str() + "," + right.str() + std::string(kPairClose));
}

bool is_pair_constant(Constant c) {
  const auto& s = c.str();
  return s.size() > kPairOpen.size() + kPairClose.size() && s.starts_with(kPairOpen) && s.ends_with(kPairClose);
}

std::pair<Constant, Constant> split_pair_constant(Constant c) {
  if (!is_pair_constant(c)) throw Error(ErrorKind::NotAProduct, "constant " + c.str() + " is not a pair");
  const std::string_view s = c.str();
  const std::string_view inner = s.substr(kPairOpen.size(), s.size() - kPairOpen.size() - kPairClose.size());
  int depth = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner.substr(i, kPairOpen.size()) == kPairOpen) {
      ++depth;
      i += kPairOpen.size() - 1;
    } else if (inner.substr(i, kPairClose.size()) == kPairClose) {
      --depth;
      i += kPairClose.size() - 1;
    } else if (inner[i] == ',' && depth == 0) {
      return {Constant(inner.substr(0, i)), Constant(inner.substr(i + 1))};
    }
  }
  throw Error(ErrorKind::NotAProduct, "malformed pair constant " + c.str());
}

bool is_reserved_name(std::string_view name) {
  if (name.size() < 3 || name[0] != '_' || (name[1] != 'n' && name[1] != 'f')) return false;
  return std::all_of(name.begin() + 2, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string to_text(const Schema& schema) {
  std::string out = "schema {";
  for (const auto& r : schema.relations()) out += " " + r.name + "/" + std::to_string(r.arity);
  return out + " }";
}

std::string constant_text(Constant c) {
  if (is_pair_constant(c)) {
    auto [l, r] = split_pair_constant(c);
    const std::string right = constant_text(r);
    return constant_text(l) + "*" + (is_pair_constant(r) ? "(" + right + ")" : right);
  }
  const auto& s = c.str();
  if (is_identifier(s) || is_reserved_name(s)) return s;
  return quote(s);
}

std::string to_text(const Atom& atom, const Schema& schema) {
  std::vector<std::string> parts;
  for (const auto& t : atom.args) parts.push_back(t.is_variable() ? t.name.str() : constant_text(t.name));
  return schema.name(atom.relation) + "(" + join_args(parts) + ")";
}

std::string to_text(const Fact& fact, const Schema& schema) {
  std::vector<std::string> parts;
  for (const auto& c : fact.args) parts.push_back(constant_text(c));
  return schema.name(fact.relation) + "(" + join_args(parts) + ")";
}

namespace {

std::string domain_block(const Structure& s) {
  if (active_domain(s) == s.domain()) return "";
  std::string out = "domain {";
  for (const auto& c : s.domain()) out += " " + constant_text(c);
  return out + " }";
}

}  // namespace

std::string to_text(const Structure& s) {
  std::string out;
  if (auto block = domain_block(s); !block.empty()) out += block + "\n";
  for (const auto& f : s.facts()) out += to_text(f, *s.schema()) + ".\n";
  return out;
}

std::string to_inline_text(const Structure& s) {
  std::string out = domain_block(s);
  for (const auto& f : s.facts()) {
    if (!out.empty()) out += " ";
    out += to_text(f, *s.schema()) + ".";
  }
  return out.empty() ? "(empty)" : out;
}

std::string to_text(const Dexr& rule) {
  std::string out = body_text(rule.body(), *rule.schema()) + " -> ";
  for (std::size_t i = 0; i < rule.head().size(); ++i) {
    if (i > 0) out += " | ";
    out += conjunction_text(rule.head()[i], *rule.schema());
  }
  return out + ".";
}

std::string to_text(const DisjunctiveDependency& rule) {
  std::string out = body_text(rule.body(), *rule.schema()) + " -> ";
  if (rule.head().empty()) return out + "false.";
  for (std::size_t i = 0; i < rule.head().size(); ++i) {
    if (i > 0) out += " | ";
    if (const auto* eq = std::get_if<Equality>(&rule.head()[i])) {
      out += eq->lhs.str() + " = " + eq->rhs.str();
    } else {
      out += conjunction_text(std::get<ExistentialConjunction>(rule.head()[i]), *rule.schema());
    }
  }
  return out + ".";
}

}  // namespace dexr
