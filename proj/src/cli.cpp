#include "dexr/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <numeric>
#include <optional>
#include <sstream>

#include "dexr/chase.hpp"
#include "dexr/diagrams.hpp"
#include "dexr/entailment.hpp"
#include "dexr/error.hpp"
#include "dexr/products.hpp"
#include "dexr/rewrite.hpp"
#include "dexr/satisfaction.hpp"
#include "dexr/syntax.hpp"

namespace dexr::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LocatedParseError {
  std::string source;
  ParseError error;
};

struct Report {
  Json json = Json::object();
  std::ostringstream text;
  int code = kPositive;

  void status(const std::string& s, int exit_code) {
    json["status"] = s;
    json["exit_code"] = exit_code;
    code = exit_code;
    text << "status: " << s << "\n";
  }
};

struct Globals {
  std::string format = "text";
  std::optional<int> max_depth;
  std::optional<int> max_nodes;
  std::optional<int> max_domain;
  std::optional<int> countermodel_bound;
  std::optional<std::size_t> candidate_cap;

  ChaseBudget budget(ChaseBudget b) const {
    if (max_depth) b.max_depth = *max_depth;
    if (max_nodes) b.max_nodes = *max_nodes;
    if (max_domain) b.max_domain = *max_domain;
    return b;
  }

  EntailOptions entail() const {
    EntailOptions o;
    o.budget = budget(o.budget);
    if (countermodel_bound) o.countermodel_bound = *countermodel_bound;
    return o;
  }

  CompatOptions compat() const {
    CompatOptions o;
    o.budget = budget(o.budget);
    return o;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class F>
auto located(const std::string& source, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw LocatedParseError{source, e};
  }
}

SourceDocument parse_file(const std::string& path, const SchemaPtr& schema) {
  const auto text = read_file(path);
  return located(path, [&] { return parse(text, ParseOptions{schema}); });
}

SchemaPtr merged_schema(const SchemaPtr& a, const SchemaPtr& b) {
  auto rels = a->relations();
  for (const auto& r : b->relations()) {
    auto it = std::find_if(rels.begin(), rels.end(), [&](const RelationDecl& x) { return x.name == r.name; });
    if (it == rels.end()) {
      rels.push_back(r);
    } else if (it->arity != r.arity) {
      throw Error(ErrorKind::Arity, "relation " + r.name + " is used with arities " + std::to_string(it->arity) +
                                        " and " + std::to_string(r.arity));
    }
  }
  return make_schema(std::move(rels));
}

// Parses the files against one schema: the first declared one, or else the
// union of the inferred ones in file order.
std::vector<SourceDocument> load(const std::vector<std::string>& paths) {
  std::vector<SourceDocument> first;
  for (const auto& p : paths) first.push_back(parse_file(p, nullptr));
  SchemaPtr schema;
  for (const auto& d : first) {
    if (d.schema_declared) {
      schema = d.schema;
      break;
    }
  }
  if (!schema) {
    schema = first.front().schema;
    for (std::size_t i = 1; i < first.size(); ++i) schema = merged_schema(schema, first[i].schema);
  }
  std::vector<SourceDocument> out;
  for (const auto& p : paths) out.push_back(parse_file(p, schema));
  return out;
}

Json structure_json(const Structure& s) {
  Json dom = Json::array();
  for (const auto& c : s.domain()) dom.push_back(constant_text(c));
  Json facts = Json::array();
  for (const auto& f : s.facts()) facts.push_back(to_text(f, *s.schema()));
  return Json{{"domain", dom}, {"facts", facts}};
}

Json profile_json(const RuleProfile& p) { return Json{{"n", p.n}, {"m", p.m}, {"l", p.l}}; }

std::string profile_text(const RuleProfile& p) {
  return "(" + std::to_string(p.n) + "," + std::to_string(p.m) + "," + std::to_string(p.l) + ")";
}

Json assignment_json(const Assignment& a) {
  Json out = Json::object();
  for (const auto& [v, c] : a) out[v.str()] = constant_text(c);
  return out;
}

std::string assignment_text(const Assignment& a) {
  std::string out;
  for (const auto& [v, c] : a) {
    if (!out.empty()) out += ", ";
    out += v.str() + "=" + constant_text(c);
  }
  return out;
}

std::string path_text(const std::vector<std::size_t>& path) {
  if (path.empty()) return "-";
  std::string out;
  for (auto p : path) {
    if (!out.empty()) out += ".";
    out += std::to_string(p + 1);
  }
  return out;
}

std::string indented(const std::string& block, const std::string& prefix) {
  std::string out;
  std::istringstream in(block);
  for (std::string line; std::getline(in, line);) out += prefix + line + "\n";
  return out;
}

int entail_code(EntailStatus s) {
  switch (s) {
    case EntailStatus::Entailed: return kPositive;
    case EntailStatus::NotEntailed: return kNegative;
    case EntailStatus::Unknown: return kUnknown;
  }
  return kUnknown;
}

int compat_code(CompatStatus s) {
  switch (s) {
    case CompatStatus::Compatible: return kPositive;
    case CompatStatus::NotCompatible: return kNegative;
    case CompatStatus::Unknown: return kUnknown;
  }
  return kUnknown;
}

int rewrite_code(RewriteStatus s) {
  switch (s) {
    case RewriteStatus::Rewritten: return kPositive;
    case RewriteStatus::Fail: return kNegative;
    case RewriteStatus::Unknown: return kUnknown;
  }
  return kUnknown;
}

Json satisfaction_report(Report& r, const Structure& s, const std::vector<SourceRule>& rules) {
  Json out = Json::array();
  bool all = true;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& dd = rules[i].rule;
    const auto violation = find_violation(s, dd);
    all = all && !violation;
    Json entry{{"rule", to_text(dd)}, {"satisfied", !violation}};
    r.text << "  " << i + 1 << ". " << to_text(dd) << "  " << (violation ? "violated" : "satisfied");
    if (violation) {
      entry["violation"] = assignment_json(*violation);
      r.text << " at " << (violation->empty() ? "the empty match" : assignment_text(*violation));
    }
    r.text << "\n";
    out.push_back(std::move(entry));
  }
  r.json["all_satisfied"] = all;
  return out;
}

// --- subcommands ---------------------------------------------------------

Report cmd_check(const std::string& file) {
  const auto doc = load({file}).front();
  Report r;
  r.json["schema"] = to_text(*doc.schema);
  Json rules = Json::array();
  std::ostringstream body;
  body << to_text(*doc.schema) << "\n";
  body << "rules: " << doc.rules.size() << "\n";
  for (std::size_t i = 0; i < doc.rules.size(); ++i) {
    const auto& dd = doc.rules[i].rule;
    const auto prof = profile_of(dd);
    Json entry{{"rule", to_text(dd)}, {"line", doc.rules[i].position.line}, {"profile", profile_json(prof)}};
    std::string tags = dd.is_dexr() ? "dexr" : (dd.is_deqr() ? "deqr" : "dd");
    entry["kind"] = tags;
    if (dd.is_dexr()) {
      const auto rule = dd.to_dexr();
      entry["linear"] = rule.is_linear();
      entry["guarded"] = rule.is_guarded();
      if (rule.is_linear()) tags += " linear";
      if (rule.is_guarded()) tags += " guarded";
    }
    body << "  " << i + 1 << ". " << to_text(dd) << "  " << profile_text(prof) << " " << tags << "\n";
    rules.push_back(std::move(entry));
  }
  r.json["rules"] = rules;
  if (doc.has_structure) {
    r.json["structure"] = structure_json(doc.structure);
    body << "structure: " << doc.structure.fact_count() << " facts, " << doc.structure.domain().size()
         << " elements\n"
         << indented(to_text(doc.structure), "  ");
  }
  r.status("Valid", kPositive);
  r.text << body.str();
  return r;
}

Report cmd_model(const std::string& file, const std::string& structure_file) {
  std::vector<SourceDocument> docs = structure_file.empty() ? load({file}) : load({file, structure_file});
  const auto& source = docs.back();
  if (!source.has_structure) throw UsageError("no structure given; pass --structure or add facts to " + file);
  Report r;
  Report inner;
  const Json rules = satisfaction_report(inner, source.structure, docs.front().rules);
  const bool all = inner.json["all_satisfied"].get<bool>();
  r.status(all ? "Model" : "NotModel", all ? kPositive : kNegative);
  r.json["structure"] = structure_json(source.structure);
  r.json["rules"] = rules;
  r.text << inner.text.str();
  return r;
}

Report cmd_chase(const Globals& g, const std::string& file, const std::string& structure_file, bool tree) {
  std::vector<SourceDocument> docs = structure_file.empty() ? load({file}) : load({file, structure_file});
  const auto rules = docs.front().dexrs();
  const auto& start = docs.back().structure;
  ChaseOptions options;
  options.budget = g.budget(options.budget);
  options.keep_tree = tree;
  const auto outcome = chase(start, rules, options);

  Report r;
  r.status(outcome.complete() ? "Complete" : "Truncated", outcome.complete() ? kPositive : kUnknown);
  Json results = Json::array();
  r.text << "saturated: " << outcome.saturated.size() << "\n";
  for (std::size_t i = 0; i < outcome.saturated.size(); ++i) {
    const auto& res = outcome.saturated[i];
    results.push_back(Json{{"path", res.path}, {"depth", res.depth}, {"structure", structure_json(res.structure)}});
    r.text << "  " << i + 1 << ". path " << path_text(res.path) << ": " << to_inline_text(res.structure) << "\n";
  }
  r.json["saturated"] = results;
  r.json["truncated"] = outcome.truncated_count();
  r.json["closed"] = outcome.closed;
  r.json["nodes"] = outcome.nodes;
  r.text << "truncated: " << outcome.truncated_count() << "\n";
  r.text << "nodes: " << outcome.nodes << "\n";
  if (outcome.tree) {
    const auto dump = tree_text(*outcome.tree);
    r.json["tree"] = dump;
    r.text << "tree:\n" << indented(dump, "  ");
  }
  return r;
}

Report cmd_product(const Globals& g, const std::string& a, const std::string& b, const std::string& repair) {
  std::vector<std::string> paths{a, b};
  if (!repair.empty()) paths.push_back(repair);
  const auto docs = load(paths);
  const auto& i = docs[0].structure;
  const auto& j = docs[1].structure;
  Report r;
  if (repair.empty()) {
    const auto p = direct_product(i, j);
    r.status("Product", kPositive);
    r.json["structure"] = structure_json(p);
    r.text << "elements: " << p.domain().size() << "\n" << indented(to_text(p), "  ");
    return r;
  }
  const auto rules = docs[2].dexrs();
  try {
    const auto l = repairable_direct_product(i, j, rules, g.budget({}));
    r.status("Repaired", kPositive);
    r.json["structure"] = structure_json(l);
    r.json["product_facts"] = direct_product(i, j).fact_count();
    r.text << "elements: " << l.domain().size() << "\n" << indented(to_text(l), "  ");
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Exhausted) throw;
    r.status("Unknown", kUnknown);
    r.json["note"] = e.what();
    r.text << "note: " << e.what() << "\n";
  }
  return r;
}

Report cmd_critical(const std::string& file, int k) {
  const auto doc = load({file}).front();
  const auto c = critical_structure(doc.schema, k);
  Report inner;
  const Json rules = satisfaction_report(inner, c, doc.rules);
  const bool all = inner.json["all_satisfied"].get<bool>();
  Report r;
  r.status(all ? "Model" : "NotModel", all ? kPositive : kNegative);
  r.json["structure"] = structure_json(c);
  r.json["rules"] = rules;
  r.text << "critical structure (" << k << " elements):\n" << indented(to_text(c), "  ");
  r.text << inner.text.str();
  return r;
}

Structure select_substructure(const std::string& selector, const Structure& i, CompatVariant variant) {
  const auto trimmed = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  const std::string text = trimmed(selector);
  Structure k(i.schema());
  if (text.find('(') != std::string::npos) {
    const std::string src = text.ends_with('.') ? text : text + ".";
    k = located("--k-sub", [&] { return parse_structure(src, i.schema()); });
    if (!is_subset(k, i)) throw UsageError("--k-sub facts are not facts of the structure");
  } else if (!text.empty() && text != "-") {
    std::set<Constant> dom;
    std::istringstream in(text);
    for (std::string part; std::getline(in, part, ',');) {
      dom.insert(located("--k-sub", [&] { return parse_constant(trimmed(part)); }));
    }
    k = induced_substructure(i, dom);
  }
  if (variant == CompatVariant::Linear && !is_linear(k)) throw UsageError("--k-sub must select at most one fact");
  if (variant == CompatVariant::Guarded && !is_guarded(k)) throw UsageError("--k-sub must select a guarded structure");
  return k;
}

Json check_json(const DiagramCheck& c) {
  Json out{{"diagram", to_text(c.diagram)}, {"status", to_string(c.status)}};
  if (c.model) out["model"] = structure_json(*c.model);
  return out;
}

std::string check_text(const DiagramCheck& c) {
  std::string out = "[" + std::string(to_string(c.status)) + "] " + to_text(c.diagram);
  if (c.model) out += "  model: " + to_inline_text(*c.model);
  return out;
}

Report cmd_diagram(const Globals& g, const std::string& rules_file, const std::string& structure_file,
                   const std::string& selector, int m, int l, CompatVariant variant, bool all_candidates) {
  const auto docs = load({rules_file, structure_file});
  const auto rules = docs[0].dexrs();
  const auto& i = docs[1].structure;
  const auto k = select_substructure(selector, i, variant);
  const auto options = g.compat();
  const auto cands = neg_candidates(k, i, m, NegOptions{all_candidates ? NegMode::All : NegMode::Minimal,
                                                        options.neg.max_conjunctions});

  Report r;
  Json jc = Json::array();
  std::ostringstream body;
  body << "K: " << to_inline_text(k) << "\n";
  body << "candidates (m=" << m << "): " << cands.size() << "\n";
  for (std::size_t c = 0; c < cands.size(); ++c) {
    const auto t = to_text(cands[c], *i.schema());
    jc.push_back(t);
    body << "  G" << c + 1 << ": " << t << "\n";
  }

  Json jd = Json::array();
  std::size_t count = 0;
  bool capped = false;
  const std::size_t top = std::min<std::size_t>(static_cast<std::size_t>(std::max(l, 0)), cands.size());
  std::ostringstream listing;
  for (std::size_t size = 0; size <= top && !capped; ++size) {
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (count == options.max_diagrams) {
        capped = true;
        break;
      }
      std::vector<NegConjunction> chosen;
      std::vector<std::size_t> labels;
      for (auto x : idx) {
        chosen.push_back(cands[x]);
        labels.push_back(x + 1);
      }
      const auto d = build_diagram(k, i, chosen);
      const auto dd = diagram_to_dd(d);
      const auto check = find_diagram_model(d, rules, options);
      ++count;
      auto entry = check_json(check);
      entry["g"] = labels;
      entry["variablized"] = to_text(variablize(d));
      entry["dd"] = to_text(dd);
      jd.push_back(std::move(entry));
      std::string g_text;
      for (auto x : labels) g_text += (g_text.empty() ? "G" : ",G") + std::to_string(x);
      listing << "  " << count << ". {" << g_text << "} " << check_text(check) << "\n";
      listing << "     dd: " << to_text(dd) << "\n";
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == cands.size() - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t q = pos; q < size; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  r.status(capped ? "Truncated" : "Listed", capped ? kUnknown : kPositive);
  r.json["k"] = structure_json(k);
  r.json["candidates"] = jc;
  r.json["diagrams"] = jd;
  r.text << body.str() << "diagrams (|G| <= " << l << "): " << count << "\n" << listing.str();
  return r;
}

Report cmd_compat(const Globals& g, const std::string& rules_file, const std::string& structure_file,
                  const RuleProfile& profile, CompatVariant variant) {
  const auto docs = load({rules_file, structure_file});
  const auto rules = docs[0].dexrs();
  const auto& i = docs[1].structure;
  const auto verdict = check_compat_with(i, rules, profile, variant, g.compat());
  Report r;
  r.status(std::string(to_string(verdict.status)), compat_code(verdict.status));
  r.json["variant"] = to_string(variant);
  r.json["profile"] = profile_json(profile);
  r.json["substructures"] = verdict.substructures;
  r.text << "variant: " << to_string(variant) << "\n";
  r.text << "profile: " << profile_text(profile) << "\n";
  r.text << "substructures: " << verdict.substructures << "\n";
  r.text << "diagrams: " << verdict.checks.size() << "\n";
  if (const auto* w = verdict.witness()) {
    r.json["witness"] = check_json(*w);
    r.text << "witness: " << to_text(w->diagram) << "\n";
  }
  if (!verdict.note.empty()) {
    r.json["note"] = verdict.note;
    r.text << "note: " << verdict.note << "\n";
  }
  Json checks = Json::array();
  for (std::size_t c = 0; c < verdict.checks.size(); ++c) {
    checks.push_back(check_json(verdict.checks[c]));
    r.text << "  " << c + 1 << ". " << check_text(verdict.checks[c]) << "\n";
  }
  r.json["checks"] = checks;
  return r;
}

Json verdict_json(const Verdict& v) {
  Json out{{"status", to_string(v.status)}};
  if (v.status == EntailStatus::Entailed) out["depth"] = v.depth;
  if (v.countermodel) out["countermodel"] = structure_json(*v.countermodel);
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

std::string verdict_details(const Verdict& v) {
  std::string out;
  if (v.status == EntailStatus::Entailed) out += "depth: " + std::to_string(v.depth) + "\n";
  if (v.countermodel) out += "countermodel: " + to_inline_text(*v.countermodel) + "\n";
  if (!v.note.empty()) out += "note: " + v.note + "\n";
  return out;
}

Verdict entail_one(std::span<const Dexr> premises, const DisjunctiveDependency& dd, const EntailOptions& o) {
  return dd.is_dexr() ? entails(premises, dd.to_dexr(), o) : entails_dd(premises, dd, o);
}

Report cmd_entail(const Globals& g, const std::string& rules_file, const std::string& rule_text,
                  const std::string& other_file) {
  if (rule_text.empty() == other_file.empty()) throw UsageError("pass exactly one of --rule and --rules");
  const auto options = g.entail();
  Report r;
  if (other_file.empty()) {
    const auto doc = load({rules_file}).front();
    const auto premises = doc.dexrs();
    const auto conclusion = located("--rule", [&] { return parse_rule(rule_text, doc.schema); });
    const auto v = entail_one(premises, conclusion, options);
    r.status(std::string(to_string(v.status)), entail_code(v.status));
    r.json["conclusion"] = to_text(conclusion);
    r.json["verdict"] = verdict_json(v);
    r.text << "conclusion: " << to_text(conclusion) << "\n" << verdict_details(v);
    return r;
  }
  const auto docs = load({rules_file, other_file});
  const auto premises = docs[0].dexrs();
  Json list = Json::array();
  std::ostringstream body;
  EntailStatus overall = EntailStatus::Entailed;
  for (std::size_t c = 0; c < docs[1].rules.size(); ++c) {
    const auto& dd = docs[1].rules[c].rule;
    const auto v = entail_one(premises, dd, options);
    if (v.status == EntailStatus::NotEntailed) {
      overall = EntailStatus::NotEntailed;
    } else if (v.status == EntailStatus::Unknown && overall == EntailStatus::Entailed) {
      overall = EntailStatus::Unknown;
    }
    auto entry = verdict_json(v);
    entry["conclusion"] = to_text(dd);
    list.push_back(std::move(entry));
    body << "  " << c + 1 << ". " << to_text(dd) << "  " << to_string(v.status) << "\n"
         << indented(verdict_details(v), "     ");
  }
  r.status(std::string(to_string(overall)), entail_code(overall));
  r.json["conclusions"] = list;
  r.text << body.str();
  return r;
}

struct RewriteFlags {
  std::optional<int> n;
  std::optional<int> m;
  std::optional<int> l;
  std::optional<std::size_t> l_prime;
  std::optional<int> p;
  bool wide_bound = false;
  bool no_minimize = false;
};

Report cmd_rewrite(const Globals& g, const std::string& file, const RewriteFlags& f) {
  const auto doc = load({file}).front();
  const auto rules = doc.dexrs();
  RewriteConfig config;
  if (f.n || f.m || f.l) {
    RuleProfile base = rules.empty() ? RuleProfile{1, 0, 1} : profile_of(rules);
    if (f.n) base.n = *f.n;
    if (f.m) base.m = *f.m;
    if (f.l) base.l = *f.l;
    config.profile = base;
  }
  config.l_prime = f.l_prime;
  config.p = f.p;
  config.bound = f.wide_bound ? BoundVariant::Wide : BoundVariant::Tight;
  config.entail = g.entail();
  if (g.candidate_cap) config.candidate_cap = *g.candidate_cap;
  config.minimize = !f.no_minimize;

  const auto res = rewrite_guarded_to_linear(doc.schema, rules, config);
  Report r;
  r.status(std::string(to_string(res.status)), rewrite_code(res.status));
  r.json["profile"] = profile_json(res.profile);
  r.json["l_prime"] = res.l_prime;
  r.json["candidates"] = res.candidates;
  r.json["entailed"] = res.entailed;
  r.json["unknown"] = res.unknown;
  r.text << "profile: " << profile_text(res.profile) << "\n";
  r.text << "l': " << res.l_prime << "\n";
  r.text << "candidates: " << res.candidates << "\n";
  r.text << "entailed: " << res.entailed << "\n";
  r.text << "unknown: " << res.unknown << "\n";
  Json out = Json::array();
  if (res.status == RewriteStatus::Rewritten) {
    r.text << "rules:\n";
    for (const auto& rule : res.rules) {
      out.push_back(to_text(rule));
      r.text << "  " << to_text(rule) << "\n";
    }
  }
  r.json["rules"] = out;
  if (res.failing_rule) {
    r.json["failing_rule"] = to_text(rules[*res.failing_rule]);
    r.text << "failing rule: " << to_text(rules[*res.failing_rule]) << "\n";
  }
  if (res.countermodel) {
    r.json["countermodel"] = structure_json(*res.countermodel);
    r.text << "countermodel: " << to_inline_text(*res.countermodel) << "\n";
  }
  if (!res.note.empty()) {
    r.json["note"] = res.note;
    r.text << "note: " << res.note << "\n";
  }
  return r;
}

const std::map<std::string, CompatVariant> kVariants{
    {"plain", CompatVariant::Plain}, {"linear", CompatVariant::Linear}, {"guarded", CompatVariant::Guarded}};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reasoning over disjunctive existential rules", "dexr"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-depth", g.max_depth, "Chase depth budget")->check(CLI::PositiveNumber);
  app.add_option("--max-nodes", g.max_nodes, "Chase node budget")->check(CLI::PositiveNumber);
  app.add_option("--max-domain", g.max_domain, "Chase domain-size budget")->check(CLI::PositiveNumber);
  app.add_option("--countermodel-bound", g.countermodel_bound, "Largest countermodel domain searched")
      ->check(CLI::PositiveNumber);
  app.add_option("--candidate-cap", g.candidate_cap, "Rewrite candidate cap")->check(CLI::PositiveNumber);

  std::string file;
  std::string second;
  std::string structure;
  std::string repair;
  std::string rule_text;
  std::string other;
  std::string selector;
  std::string variant_name = "plain";
  bool tree = false;
  bool all_candidates = false;
  int k = 1;
  int n = 0;
  int m = 0;
  int l = 1;
  RewriteFlags rf;

  auto* check = app.add_subcommand("check", "Parse and validate a rule file");
  check->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* model = app.add_subcommand("model", "Check a structure against every rule");
  model->add_option("file", file)->required()->check(CLI::ExistingFile);
  model->add_option("--structure", structure)->check(CLI::ExistingFile);

  auto* chase_cmd = app.add_subcommand("chase", "Run the disjunctive chase");
  chase_cmd->add_option("file", file)->required()->check(CLI::ExistingFile);
  chase_cmd->add_option("--structure", structure)->check(CLI::ExistingFile);
  chase_cmd->add_flag("--tree", tree, "Print the chase tree");

  auto* product = app.add_subcommand("product", "Direct or repairable direct product");
  product->add_option("left", file)->required()->check(CLI::ExistingFile);
  product->add_option("right", second)->required()->check(CLI::ExistingFile);
  product->add_option("--repair", repair, "Rules to repair the product against")->check(CLI::ExistingFile);

  auto* critical = app.add_subcommand("critical", "Critical structure and its satisfaction report");
  critical->add_option("file", file)->required()->check(CLI::ExistingFile);
  critical->add_option("--k", k, "Number of elements")->required()->check(CLI::PositiveNumber);

  auto* diagram = app.add_subcommand("diagram", "List negative candidates and diagrams of a substructure");
  diagram->add_option("rules", file)->required()->check(CLI::ExistingFile);
  diagram->add_option("--structure", structure)->required()->check(CLI::ExistingFile);
  diagram->add_option("--k-sub", selector, "Constants a,b,... (induced) or one fact R(a,b)")->required();
  diagram->add_option("--m", m)->required()->check(CLI::NonNegativeNumber);
  diagram->add_option("--l", l)->required()->check(CLI::NonNegativeNumber);
  diagram->add_option("--variant", variant_name)->check(CLI::IsMember({"plain", "linear", "guarded"}));
  diagram->add_flag("--all", all_candidates, "Keep non-minimal negative candidates");

  auto* compat = app.add_subcommand("compat", "Diagrammatic compatibility of a structure with the rules");
  compat->add_option("rules", file)->required()->check(CLI::ExistingFile);
  compat->add_option("--structure", structure)->required()->check(CLI::ExistingFile);
  compat->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);
  compat->add_option("--m", m)->required()->check(CLI::NonNegativeNumber);
  compat->add_option("--l", l)->required()->check(CLI::NonNegativeNumber);
  compat->add_option("--variant", variant_name)->check(CLI::IsMember({"plain", "linear", "guarded"}));

  auto* entail = app.add_subcommand("entail", "Decide whether the rules entail a rule or a rule set");
  entail->add_option("premises", file)->required()->check(CLI::ExistingFile);
  auto* rule_opt = entail->add_option("--rule", rule_text, "A single rule, e.g. \"R(X) -> S(X).\"");
  auto* rules_opt = entail->add_option("--rules", other, "A file of rules")->check(CLI::ExistingFile);
  rule_opt->excludes(rules_opt);

  auto* rewrite = app.add_subcommand("rewrite", "Rewrite guarded rules into linear ones");
  rewrite->add_option("rules", file)->required()->check(CLI::ExistingFile);
  rewrite->add_option("--n", rf.n)->check(CLI::NonNegativeNumber);
  rewrite->add_option("--m", rf.m)->check(CLI::NonNegativeNumber);
  rewrite->add_option("--l", rf.l)->check(CLI::PositiveNumber);
  rewrite->add_option("--lp", rf.l_prime, "Disjunct bound for candidates")->check(CLI::PositiveNumber);
  rewrite->add_option("--p", rf.p, "Atom bound per candidate disjunct")->check(CLI::PositiveNumber);
  rewrite->add_flag("--wide-bound,--alg1-bound", rf.wide_bound, "Use the larger disjunct bound variant");
  rewrite->add_flag("--no-minimize", rf.no_minimize, "Print every entailed candidate");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPositive : kUsage;
  }

  const auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  const bool json = g.format == "json";
  Report report;
  try {
    const auto variant = kVariants.at(variant_name);
    if (sub == check) {
      report = cmd_check(file);
    } else if (sub == model) {
      report = cmd_model(file, structure);
    } else if (sub == chase_cmd) {
      report = cmd_chase(g, file, structure, tree);
    } else if (sub == product) {
      report = cmd_product(g, file, second, repair);
    } else if (sub == critical) {
      report = cmd_critical(file, k);
    } else if (sub == diagram) {
      report = cmd_diagram(g, file, structure, selector, m, l, variant, all_candidates);
    } else if (sub == compat) {
      report = cmd_compat(g, file, structure, RuleProfile{n, m, l}, variant);
    } else if (sub == entail) {
      report = cmd_entail(g, file, rule_text, other);
    } else {
      report = cmd_rewrite(g, file, rf);
    }
  } catch (const LocatedParseError& e) {
    Json j{{"command", command},
           {"status", "Error"},
           {"exit_code", kUsage},
           {"error",
            {{"kind", to_string(e.error.kind())},
             {"message", e.error.detail()},
             {"source", e.source},
             {"line", e.error.line()},
             {"column", e.error.column()},
             {"expected", e.error.expected()}}}};
    if (json) {
      out << j.dump(2) << "\n";
    } else {
      err << e.source << ":" << e.error.line() << ":" << e.error.column() << ": " << to_string(e.error.kind())
          << ": " << e.error.detail() << "\n";
    }
    return kUsage;
  } catch (const std::exception& e) {
    std::string kind = "Usage";
    int code = kUsage;
    if (const auto* de = dynamic_cast<const Error*>(&e)) {
      kind = std::string(to_string(de->kind()));
      if (de->kind() == ErrorKind::LimitExceeded || de->kind() == ErrorKind::Exhausted) code = kUnknown;
    }
    if (json) {
      Json j{{"command", command},
             {"status", "Error"},
             {"exit_code", code},
             {"error", {{"kind", kind}, {"message", e.what()}}}};
      out << j.dump(2) << "\n";
    } else {
      err << "error: " << kind << ": " << e.what() << "\n";
    }
    return code;
  }

  if (json) {
    Json j{{"command", command}};
    j.update(report.json);
    out << j.dump(2) << "\n";
  } else {
    out << report.text.str();
  }
  return report.code;
}

}  // namespace dexr::cli
