#include "rbk/dsl.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <string>

#include "rbk/error.hpp"
#include "rbk/preorder.hpp"

namespace rbk {

namespace {

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw = {"rulebook", "rule",    "group",
                                           "aggregate", "epsilon", "linear"};
  return kw;
}

struct Token {
  enum Kind { ident, number, symbol, end };
  Kind kind = end;
  std::string text;
  double num = 0.0;
  std::size_t col = 0;  // 1-based
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }
bool number_start(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
}

std::vector<Token> lex_line(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    const std::size_t col = i + 1;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Token::ident, std::string(line.substr(i, j - i)), 0.0, col});
      i = j;
      continue;
    }
    if (number_start(c)) {
      double value = 0.0;
      const char* first = line.data() + i;
      const char* last = line.data() + line.size();
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc{} || ptr == first) {
        throw ParseError(line_no, col, "malformed number");
      }
      out.push_back({Token::number, std::string(first, ptr), value, col});
      i = static_cast<std::size_t>(ptr - line.data());
      continue;
    }
    if (std::string_view("=(){},:<").find(c) != std::string_view::npos) {
      out.push_back({Token::symbol, std::string(1, c), 0.0, col});
      ++i;
      continue;
    }
    throw ParseError(line_no, col, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Token::end, "", 0.0, line.size() + 1});
  return out;
}

// Cursor over one line's tokens with grammar-shaped accessors.
class Cursor {
 public:
  Cursor(std::vector<Token> tokens, std::size_t line) : toks_(std::move(tokens)), line_(line) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Token::end; }

  Token take() { return toks_[pos_++]; }

  std::string expect_ident(const char* what) {
    if (peek().kind != Token::ident) fail(std::string("expected ") + what);
    return take().text;
  }
  void expect_keyword(const char* word) {
    if (peek().kind != Token::ident || peek().text != word) {
      fail(std::string("expected '") + word + "'");
    }
    take();
  }
  double expect_number() {
    if (peek().kind != Token::number) fail("expected a number");
    return take().num;
  }
  void expect_symbol(char sym) {
    if (peek().kind != Token::symbol || peek().text[0] != sym) {
      fail(std::string("expected '") + sym + "'");
    }
    take();
  }
  bool try_symbol(char sym) {
    if (peek().kind == Token::symbol && peek().text[0] == sym) {
      take();
      return true;
    }
    return false;
  }
  void expect_end() {
    if (!at_end()) fail("expected end of line");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, peek().col, msg);
  }
  std::size_t line() const { return line_; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

// IDENT ":" NUMBER ("," IDENT ":" NUMBER)*
std::vector<std::pair<std::string, double>> parse_pair_list(Cursor& cur, const char* what) {
  std::vector<std::pair<std::string, double>> out;
  do {
    std::string key = cur.expect_ident(what);
    cur.expect_symbol(':');
    out.emplace_back(std::move(key), cur.expect_number());
  } while (cur.try_symbol(','));
  return out;
}

class DocBuilder {
 public:
  void require_declared(const std::string& id, std::size_t line) const {
    if (!declared_.count(id)) {
      throw SemanticError("line " + std::to_string(line) + ": unknown rule id '" + id +
                          "' (rules must be declared before use)");
    }
  }

  void add_rule(RuleDecl decl, std::size_t line) {
    if (keywords().count(decl.id)) {
      throw SemanticError("line " + std::to_string(line) + ": '" + decl.id +
                          "' is a reserved word");
    }
    if (!declared_.insert(decl.id).second || used_ids_.count(decl.id)) {
      throw SemanticError("line " + std::to_string(line) + ": duplicate id '" + decl.id + "'");
    }
    used_ids_.insert(decl.id);
    parent_[decl.id] = decl.id;
    doc.rules.push_back(std::move(decl));
  }

  void add_group(std::vector<std::string> members, std::size_t line) {
    std::set<std::string> seen;
    for (const auto& m : members) {
      require_declared(m, line);
      if (!seen.insert(m).second) {
        throw SemanticError("line " + std::to_string(line) + ": rule '" + m +
                            "' listed twice in one group");
      }
    }
    for (std::size_t i = 1; i < members.size(); ++i) unite(members[0], members[i]);
    doc.groups.push_back(std::move(members));
  }

  void add_priority(const std::string& lo, const std::string& hi, std::size_t line) {
    require_declared(lo, line);
    require_declared(hi, line);
    doc.priorities.emplace_back(lo, hi);
  }

  void add_aggregate(AggregateDecl decl, std::size_t line) {
    if (keywords().count(decl.id)) {
      throw SemanticError("line " + std::to_string(line) + ": '" + decl.id +
                          "' is a reserved word");
    }
    if (declared_.count(decl.id) || !used_ids_.insert(decl.id).second) {
      throw SemanticError("line " + std::to_string(line) + ": duplicate id '" + decl.id + "'");
    }
    std::set<std::string> seen;
    for (const auto& [src, weight] : decl.weights) {
      require_declared(src, line);
      if (!seen.insert(src).second) {
        throw SemanticError("line " + std::to_string(line) + ": rule '" + src +
                            "' listed twice in one aggregate");
      }
      (void)weight;
    }
    for (std::size_t i = 1; i < decl.weights.size(); ++i) {
      if (find(decl.weights[0].first) != find(decl.weights[i].first)) {
        throw SemanticError("line " + std::to_string(line) + ": aggregate '" + decl.id +
                            "' spans rules '" + decl.weights[0].first + "' and '" +
                            decl.weights[i].first +
                            "' that are not in the same equivalence class (group them first)");
      }
    }
    doc.aggregates.push_back(std::move(decl));
  }

  // Priorities may not create two-way reachability unless a group already
  // declares the rules equivalent.
  void check_cycles() const {
    std::vector<std::string> ids(declared_.begin(), declared_.end());
    Preorder order(ids, doc.priorities);
    for (const auto& cls : order.equivalence_classes()) {
      for (std::size_t i = 1; i < cls.size(); ++i) {
        if (find(cls[0]) != find(cls[i])) {
          throw SemanticError("priority cycle between '" + cls[0] + "' and '" + cls[i] +
                              "'; declare a group to make rules equivalent");
        }
      }
    }
  }

  void normalize() {
    std::sort(doc.rules.begin(), doc.rules.end(),
              [](const RuleDecl& a, const RuleDecl& b) { return a.id < b.id; });
    for (auto& r : doc.rules) std::sort(r.params.begin(), r.params.end());

    // canonical groups are the union-find classes of size >= 2
    std::map<std::string, std::vector<std::string>> classes;
    for (const auto& id : declared_) classes[find(id)].push_back(id);
    doc.groups.clear();
    for (auto& [root, members] : classes) {
      if (members.size() < 2) continue;
      std::sort(members.begin(), members.end());
      doc.groups.push_back(std::move(members));
    }
    std::sort(doc.groups.begin(), doc.groups.end());

    std::sort(doc.priorities.begin(), doc.priorities.end());
    doc.priorities.erase(std::unique(doc.priorities.begin(), doc.priorities.end()),
                         doc.priorities.end());
    std::erase_if(doc.priorities, [](const auto& e) { return e.first == e.second; });

    std::sort(doc.aggregates.begin(), doc.aggregates.end(),
              [](const AggregateDecl& a, const AggregateDecl& b) { return a.id < b.id; });
    for (auto& a : doc.aggregates) std::sort(a.weights.begin(), a.weights.end());
  }

  RulebookDoc doc;

 private:
  std::string find(const std::string& id) const {
    std::string cur = id;
    while (parent_.at(cur) != cur) cur = parent_.at(cur);
    return cur;
  }
  void unite(const std::string& a, const std::string& b) { parent_[find(a)] = find(b); }

  std::set<std::string> declared_;  // rule ids
  std::set<std::string> used_ids_;  // rules + aggregates
  std::map<std::string, std::string> parent_;
};

}  // namespace

RulebookDoc parse_rulebook(std::string_view text) {
  DocBuilder builder;
  bool header_seen = false;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    ++line_no;
    std::size_t nl = text.find('\n', start);
    std::string_view line =
        text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }

    Cursor cur(lex_line(line, line_no), line_no);
    if (cur.at_end()) continue;

    if (!header_seen) {
      cur.expect_keyword("rulebook");
      builder.doc.name = cur.expect_ident("a rulebook name");
      cur.expect_end();
      header_seen = true;
      continue;
    }

    const Token& first = cur.peek();
    if (first.kind != Token::ident) {
      cur.fail("expected a statement (rule, group, priority, aggregate, or epsilon)");
    }
    if (first.text == "rule") {
      cur.take();
      RuleDecl decl;
      decl.id = cur.expect_ident("a rule id");
      cur.expect_symbol('=');
      decl.kind = cur.expect_ident("a rule kind");
      cur.expect_symbol('(');
      if (!cur.try_symbol(')')) {
        decl.params = parse_pair_list(cur, "a parameter name");
        cur.expect_symbol(')');
      }
      cur.expect_end();
      builder.add_rule(std::move(decl), line_no);
    } else if (first.text == "group") {
      cur.take();
      cur.expect_symbol('{');
      std::vector<std::string> members;
      do {
        members.push_back(cur.expect_ident("a rule id"));
      } while (cur.try_symbol(','));
      cur.expect_symbol('}');
      cur.expect_end();
      builder.add_group(std::move(members), line_no);
    } else if (first.text == "aggregate") {
      cur.take();
      AggregateDecl decl;
      decl.id = cur.expect_ident("an aggregate id");
      cur.expect_symbol('=');
      cur.expect_keyword("linear");
      cur.expect_symbol('(');
      decl.weights = parse_pair_list(cur, "a rule id");
      cur.expect_symbol(')');
      cur.expect_end();
      builder.add_aggregate(std::move(decl), line_no);
    } else if (first.text == "epsilon") {
      cur.take();
      const double eps = cur.expect_number();
      cur.expect_end();
      if (eps < 0.0) {
        throw SemanticError("line " + std::to_string(line_no) + ": epsilon must be >= 0");
      }
      builder.doc.epsilon = eps;
    } else {
      // priority statement: IDENT < IDENT
      const std::string lo = cur.expect_ident("a rule id");
      cur.expect_symbol('<');
      const std::string hi = cur.expect_ident("a rule id");
      cur.expect_end();
      builder.add_priority(lo, hi, line_no);
    }
  }

  if (!header_seen) {
    throw ParseError(1, 1, "expected 'rulebook NAME' header");
  }
  if (builder.doc.rules.empty()) {
    throw SemanticError("rulebook must contain at least one rule");
  }
  builder.check_cycles();
  builder.normalize();
  return builder.doc;
}

namespace {

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

void append_pair_list(std::string& out, const std::vector<std::pair<std::string, double>>& list) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i > 0) out += ", ";
    out += list[i].first;
    out += ':';
    out += format_number(list[i].second);
  }
}

}  // namespace

std::string serialize_rulebook(const RulebookDoc& doc) {
  std::string out = "rulebook " + doc.name + "\n";
  out += "epsilon " + format_number(doc.epsilon) + "\n";
  for (const auto& r : doc.rules) {
    out += "rule " + r.id + " = " + r.kind + "(";
    append_pair_list(out, r.params);
    out += ")\n";
  }
  for (const auto& g : doc.groups) {
    out += "group {";
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i > 0) out += ", ";
      out += g[i];
    }
    out += "}\n";
  }
  for (const auto& [lo, hi] : doc.priorities) {
    out += lo + " < " + hi + "\n";
  }
  for (const auto& a : doc.aggregates) {
    out += "aggregate " + a.id + " = linear(";
    append_pair_list(out, a.weights);
    out += ")\n";
  }
  return out;
}

}  // namespace rbk
