#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "udsg/semantics_graph.hpp"

namespace udsg {

/// A term in the triple universe: a resource id, a string literal, or a
/// binary64 number.
struct Term {
  enum class Kind { Resource, Str, Num };
  Kind kind = Kind::Resource;
  std::string text;
  double number = 0.0;

  static Term resource(std::string s) { return {Kind::Resource, std::move(s), 0.0}; }
  static Term str(std::string s) { return {Kind::Str, std::move(s), 0.0}; }
  static Term num(double d) { return {Kind::Num, {}, d}; }

  bool operator==(const Term& o) const {
    if (kind != o.kind) return false;
    return kind == Kind::Num ? number == o.number : text == o.text;
  }
  bool operator<(const Term& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (kind == Kind::Num) return number < o.number;
    return text < o.text;
  }
};

struct Triple {
  std::string subject;
  std::string predicate;
  Term object;

  bool operator<(const Triple& o) const {
    return std::tie(subject, predicate, object) < std::tie(o.subject, o.predicate, o.object);
  }
  bool operator==(const Triple&) const = default;
};

/// Immutable indexed triple collection. Edges are reified via singleton
/// predicates: each graph edge contributes one structural triple
/// (source, edge-id, target) plus one attribute triple per edge attribute
/// with the edge-id as subject, so an edge can occupy predicate position in
/// one pattern and subject position in another.
class TripleView {
 public:
  void add(Triple t) {
    std::size_t i = triples_.size();
    by_subject_[t.subject].push_back(i);
    by_predicate_[t.predicate].push_back(i);
    triples_.push_back(std::move(t));
  }

  const std::vector<Triple>& triples() const { return triples_; }

  const std::vector<std::size_t>* with_subject(const std::string& s) const {
    auto it = by_subject_.find(s);
    return it == by_subject_.end() ? nullptr : &it->second;
  }
  const std::vector<std::size_t>* with_predicate(const std::string& p) const {
    auto it = by_predicate_.find(p);
    return it == by_predicate_.end() ? nullptr : &it->second;
  }

 private:
  std::vector<Triple> triples_;
  std::map<std::string, std::vector<std::size_t>> by_subject_;
  std::map<std::string, std::vector<std::size_t>> by_predicate_;
};

inline std::string edge_resource_id(const std::string& source, const std::string& target,
                                    const std::string& domain) {
  return source + "%%" + target + "%%" + domain;
}

namespace detail {

/// Annotation attribute keys are stored as "<subspace>.<property>"; queries
/// address the bare property name, so the subspace prefix is stripped for
/// the triple representation (property names are unique across subspaces).
inline std::string triple_attribute_name(const std::string& key) {
  for (const char* prefix : {"factuality.", "genericity.", "time.", "wordsense.", "protoroles."}) {
    std::string p(prefix);
    if (key.rfind(p, 0) == 0) return key.substr(p.size());
  }
  return key;
}

inline Term attr_term(const AttrValue& v) {
  if (is_numeric(v)) return Term::num(as_double(v));
  return Term::str(std::get<std::string>(v));
}

}  // namespace detail

/// Converts one graph into triples, appending to `view`.
inline void add_triples(TripleView& view, const UdsGraph& u) {
  auto add_node_attrs = [&](const std::string& id, const AttrMap& attrs) {
    for (const auto& [k, v] : attrs)
      view.add({id, detail::triple_attribute_name(k), detail::attr_term(v)});
  };
  auto add_edge = [&](const std::string& source, const std::string& target, const AttrMap& attrs) {
    std::string eid = edge_resource_id(source, target, attr_string(attrs, "domain"));
    view.add({source, eid, Term::resource(target)});
    for (const auto& [k, v] : attrs)
      view.add({eid, detail::triple_attribute_name(k), detail::attr_term(v)});
  };
  for (const auto& [id, node] : u.syntax.nodes) add_node_attrs(id, node.attributes);
  for (const auto& e : u.syntax.edges) add_edge(e.source, e.target, e.attributes);
  for (const auto& [id, node] : u.semantics_nodes) add_node_attrs(id, node.attributes);
  for (const auto& e : u.semantics_edges) add_edge(e.source, e.target, e.attributes);
}

inline TripleView to_triples(const UdsGraph& u) {
  TripleView view;
  add_triples(view, u);
  return view;
}

// ---------------------------------------------------------------------------
// Query AST
// ---------------------------------------------------------------------------

struct PatternTerm {
  bool is_var = false;
  std::string name;  // variable name (without '?') or constant text
};

struct TriplePattern {
  PatternTerm subject, predicate, object;
};

struct FilterExpr {
  enum class Kind { Cmp, And, Or } kind = Kind::Cmp;
  // Cmp:
  std::string var;
  std::string op;  // < > = != >= <=
  bool rhs_is_number = false;
  double rhs_number = 0.0;
  std::string rhs_string;
  // And/Or:
  std::vector<FilterExpr> children;
};

struct Group {
  std::vector<TriplePattern> patterns;
  std::vector<FilterExpr> filters;
  std::vector<std::vector<Group>> unions;  // each union: list of alternative groups
};

struct QueryAst {
  std::vector<std::string> select_vars;
  Group where;
};

class QuerySyntaxError : public std::runtime_error {
 public:
  QuerySyntaxError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")") {}
};

class UnsupportedFeatureError : public std::runtime_error {
 public:
  explicit UnsupportedFeatureError(const std::string& feature)
      : std::runtime_error("unsupported feature: " + feature) {}
};

class QueryTypeError : public std::runtime_error {
 public:
  explicit QueryTypeError(const std::string& var)
      : std::runtime_error("type error: filter compares string and number for variable ?" + var) {}
};

namespace queryparse {

struct Token {
  enum class Kind { Var, Const, Str, Num, Word, Punct, End } kind;
  std::string text;
  double number = 0.0;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
    std::size_t start = i_;
    if (i_ >= text_.size()) return {Token::Kind::End, "", 0, start};
    char c = text_[i_];
    if (c == '?') {
      ++i_;
      std::string name;
      while (i_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_'))
        name += text_[i_++];
      if (name.empty()) throw QuerySyntaxError("empty variable name", start);
      return {Token::Kind::Var, name, 0, start};
    }
    if (c == '<') {
      // Angle-bracketed constant term.
      auto end = text_.find('>', i_);
      // Disambiguate comparison operators from constants: a constant has a
      // closing '>' with no whitespace before it.
      if (end != std::string::npos) {
        std::string inner = text_.substr(i_ + 1, end - i_ - 1);
        if (!inner.empty() && inner.find_first_of(" \t\n(") == std::string::npos) {
          i_ = end + 1;
          return {Token::Kind::Const, inner, 0, start};
        }
      }
      // fall through: comparison '<' or '<='
    }
    if (c == '"') {
      ++i_;
      std::string s;
      while (i_ < text_.size() && text_[i_] != '"') {
        if (text_[i_] == '\\' && i_ + 1 < text_.size()) ++i_;
        s += text_[i_++];
      }
      if (i_ >= text_.size()) throw QuerySyntaxError("unterminated string literal", start);
      ++i_;
      return {Token::Kind::Str, s, 0, start};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '-' || c == '+') && i_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[i_ + 1])))) {
      std::size_t j = i_;
      if (c == '-' || c == '+') ++j;
      while (j < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[j])) ||
                                  text_[j] == '.' || text_[j] == 'e' || text_[j] == 'E' ||
                                  ((text_[j] == '-' || text_[j] == '+') &&
                                   (text_[j - 1] == 'e' || text_[j - 1] == 'E'))))
        ++j;
      double val = std::stod(text_.substr(i_, j - i_));
      i_ = j;
      return {Token::Kind::Num, text_.substr(start, j - start), val, start};
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string w;
      while (i_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_'))
        w += text_[i_++];
      return {Token::Kind::Word, w, 0, start};
    }
    // Punctuation / operators.
    for (const char* op : {"&&", "||", "!=", ">=", "<="}) {
      if (text_.compare(i_, 2, op) == 0) {
        i_ += 2;
        return {Token::Kind::Punct, op, 0, start};
      }
    }
    ++i_;
    return {Token::Kind::Punct, std::string(1, c), 0, start};
  }

 private:
  const std::string& text_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) { advance(); }

  QueryAst parse() {
    expect_keyword("SELECT");
    QueryAst ast;
    while (cur_.kind == Token::Kind::Var) {
      ast.select_vars.push_back(cur_.text);
      advance();
    }
    if (ast.select_vars.empty())
      throw QuerySyntaxError("SELECT requires at least one variable", cur_.pos);
    expect_keyword("WHERE");
    ast.where = parse_group();
    if (cur_.kind != Token::Kind::End) {
      if (cur_.kind == Token::Kind::Word) {
        std::string upper = cur_.text;
        std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
        if (unsupported_keywords().count(upper)) throw UnsupportedFeatureError(upper);
      }
      throw QuerySyntaxError("unexpected trailing input '" + cur_.text + "'", cur_.pos);
    }
    check_select_vars(ast);
    return ast;
  }

 private:
  static const std::set<std::string>& unsupported_keywords() {
    static const std::set<std::string> k{
        "OPTIONAL", "MINUS", "BIND", "VALUES", "SERVICE", "GRAPH", "ORDER",
        "GROUP", "LIMIT", "OFFSET", "PREFIX", "BASE", "ASK", "CONSTRUCT",
        "DESCRIBE", "EXISTS", "SELECT"};
    return k;
  }

  Group parse_group() {
    expect_punct("{");
    Group g;
    while (true) {
      if (cur_.kind == Token::Kind::Punct && cur_.text == "}") {
        advance();
        break;
      }
      if (cur_.kind == Token::Kind::End)
        throw QuerySyntaxError("unterminated group (missing '}')", cur_.pos);
      if (cur_.kind == Token::Kind::Word) {
        std::string upper = cur_.text;
        std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
        if (upper == "FILTER") {
          advance();
          g.filters.push_back(parse_filter());
          maybe_dot();
          continue;
        }
        if (unsupported_keywords().count(upper)) throw UnsupportedFeatureError(upper);
        throw QuerySyntaxError("unexpected keyword '" + cur_.text + "'", cur_.pos);
      }
      if (cur_.kind == Token::Kind::Punct && cur_.text == "{") {
        // UNION of groups.
        std::vector<Group> branches;
        branches.push_back(parse_group());
        while (cur_.kind == Token::Kind::Word) {
          std::string upper = cur_.text;
          std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
          if (upper != "UNION") break;
          advance();
          branches.push_back(parse_group());
        }
        if (branches.size() < 2)
          throw QuerySyntaxError("group braces without UNION", cur_.pos);
        g.unions.push_back(std::move(branches));
        maybe_dot();
        continue;
      }
      parse_triple_block(g);
    }
    return g;
  }

  void parse_triple_block(Group& g) {
    PatternTerm subject = parse_term();
    while (true) {
      PatternTerm pred = parse_term();
      PatternTerm obj = parse_term();
      g.patterns.push_back({subject, pred, obj});
      if (cur_.kind == Token::Kind::Word) {
        std::string upper = cur_.text;
        std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
        if (upper == "FILTER") {
          advance();
          g.filters.push_back(parse_filter());
        } else if (unsupported_keywords().count(upper)) {
          throw UnsupportedFeatureError(upper);
        } else {
          throw QuerySyntaxError("unexpected keyword '" + cur_.text + "'", cur_.pos);
        }
      }
      if (cur_.kind == Token::Kind::Punct && cur_.text == ";") {
        advance();
        continue;
      }
      maybe_dot();
      break;
    }
  }

  PatternTerm parse_term() {
    if (cur_.kind == Token::Kind::Var) {
      PatternTerm t{true, cur_.text};
      advance();
      return t;
    }
    if (cur_.kind == Token::Kind::Const) {
      PatternTerm t{false, cur_.text};
      advance();
      return t;
    }
    if (cur_.kind == Token::Kind::Word) {
      std::string upper = cur_.text;
      std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
      if (unsupported_keywords().count(upper)) throw UnsupportedFeatureError(upper);
      if (upper == "A") throw UnsupportedFeatureError("rdf:type shorthand 'a'");
    }
    throw QuerySyntaxError("expected variable or <constant>, got '" + cur_.text + "'", cur_.pos);
  }

  FilterExpr parse_filter() {
    expect_punct("(");
    FilterExpr e = parse_or();
    expect_punct(")");
    return e;
  }

  FilterExpr parse_or() {
    FilterExpr left = parse_and();
    while (cur_.kind == Token::Kind::Punct && cur_.text == "||") {
      advance();
      FilterExpr right = parse_and();
      FilterExpr node;
      node.kind = FilterExpr::Kind::Or;
      node.children = {std::move(left), std::move(right)};
      left = std::move(node);
    }
    return left;
  }

  FilterExpr parse_and() {
    FilterExpr left = parse_atom();
    while (cur_.kind == Token::Kind::Punct && cur_.text == "&&") {
      advance();
      FilterExpr right = parse_atom();
      FilterExpr node;
      node.kind = FilterExpr::Kind::And;
      node.children = {std::move(left), std::move(right)};
      left = std::move(node);
    }
    return left;
  }

  FilterExpr parse_atom() {
    if (cur_.kind == Token::Kind::Punct && cur_.text == "(") {
      advance();
      FilterExpr e = parse_or();
      expect_punct(")");
      return e;
    }
    if (cur_.kind != Token::Kind::Var)
      throw QuerySyntaxError("filter comparison must start with a variable", cur_.pos);
    FilterExpr e;
    e.kind = FilterExpr::Kind::Cmp;
    e.var = cur_.text;
    advance();
    if (cur_.kind != Token::Kind::Punct ||
        (cur_.text != "<" && cur_.text != ">" && cur_.text != "=" && cur_.text != "!=" &&
         cur_.text != ">=" && cur_.text != "<="))
      throw QuerySyntaxError("expected comparison operator, got '" + cur_.text + "'", cur_.pos);
    e.op = cur_.text;
    advance();
    if (cur_.kind == Token::Kind::Num) {
      e.rhs_is_number = true;
      e.rhs_number = cur_.number;
    } else if (cur_.kind == Token::Kind::Str || cur_.kind == Token::Kind::Const) {
      e.rhs_is_number = false;
      e.rhs_string = cur_.text;
    } else {
      throw QuerySyntaxError("expected literal after comparison operator", cur_.pos);
    }
    advance();
    return e;
  }

  void check_select_vars(const QueryAst& ast) {
    std::set<std::string> pattern_vars;
    collect_vars(ast.where, pattern_vars);
    for (const auto& v : ast.select_vars)
      if (!pattern_vars.count(v))
        throw QuerySyntaxError("selected variable ?" + v + " does not occur in any pattern", 0);
  }

  static void collect_vars(const Group& g, std::set<std::string>& out) {
    for (const auto& p : g.patterns)
      for (const auto* t : {&p.subject, &p.predicate, &p.object})
        if (t->is_var) out.insert(t->name);
    for (const auto& u : g.unions)
      for (const auto& b : u) collect_vars(b, out);
  }

  void maybe_dot() {
    if (cur_.kind == Token::Kind::Punct && cur_.text == ".") advance();
  }

  void expect_keyword(const std::string& kw) {
    std::string upper = cur_.kind == Token::Kind::Word ? cur_.text : "";
    std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
    if (upper != kw) throw QuerySyntaxError("expected " + kw, cur_.pos);
    advance();
  }

  void expect_punct(const std::string& p) {
    if (cur_.kind != Token::Kind::Punct || cur_.text != p)
      throw QuerySyntaxError("expected '" + p + "', got '" + cur_.text + "'", cur_.pos);
    advance();
  }

  void advance() { cur_ = lexer_.next(); }

  Lexer lexer_;
  Token cur_;
};

}  // namespace queryparse

inline QueryAst parse_query(const std::string& text) {
  return queryparse::Parser(text).parse();
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

using Binding = std::map<std::string, Term>;

struct BindingSet {
  std::vector<Binding> rows;
};

namespace evaldetail {

inline bool term_matches(const PatternTerm& pt, const Term& value, const Binding& binding) {
  if (!pt.is_var) {
    // Constants match resources and string literals by text.
    return value.kind != Term::Kind::Num && value.text == pt.name;
  }
  auto it = binding.find(pt.name);
  if (it == binding.end()) return true;
  return it->second == value;
}

inline bool filter_passes(const FilterExpr& e, const Binding& binding) {
  if (e.kind == FilterExpr::Kind::And)
    return filter_passes(e.children[0], binding) && filter_passes(e.children[1], binding);
  if (e.kind == FilterExpr::Kind::Or)
    return filter_passes(e.children[0], binding) || filter_passes(e.children[1], binding);
  auto it = binding.find(e.var);
  if (it == binding.end()) return false;  // unbound filter variable: row rejected
  const Term& t = it->second;
  if (e.rhs_is_number) {
    if (t.kind != Term::Kind::Num) throw QueryTypeError(e.var);
    double l = t.number, r = e.rhs_number;
    if (e.op == "<") return l < r;
    if (e.op == ">") return l > r;
    if (e.op == "=") return l == r;
    if (e.op == "!=") return l != r;
    if (e.op == ">=") return l >= r;
    return l <= r;
  }
  if (t.kind == Term::Kind::Num) throw QueryTypeError(e.var);
  int cmp = t.text.compare(e.rhs_string);
  if (e.op == "<") return cmp < 0;
  if (e.op == ">") return cmp > 0;
  if (e.op == "=") return cmp == 0;
  if (e.op == "!=") return cmp != 0;
  if (e.op == ">=") return cmp >= 0;
  return cmp <= 0;
}

inline void match_pattern(const TriplePattern& p, const TripleView& view, const Binding& binding,
                          std::vector<Binding>& out) {
  // Candidate narrowing via subject/predicate indexes.
  const std::vector<std::size_t>* candidates = nullptr;
  std::string bound_subject, bound_predicate;
  if (!p.subject.is_var) {
    bound_subject = p.subject.name;
  } else if (auto it = binding.find(p.subject.name); it != binding.end()) {
    if (it->second.kind != Term::Kind::Resource) return;  // subjects are resources
    bound_subject = it->second.text;
  }
  if (!p.predicate.is_var) {
    bound_predicate = p.predicate.name;
  } else if (auto it = binding.find(p.predicate.name); it != binding.end()) {
    if (it->second.kind != Term::Kind::Resource) return;
    bound_predicate = it->second.text;
  }
  if (!bound_subject.empty()) {
    candidates = view.with_subject(bound_subject);
    if (!candidates) return;
  } else if (!bound_predicate.empty()) {
    candidates = view.with_predicate(bound_predicate);
    if (!candidates) return;
  }

  auto try_triple = [&](const Triple& t) {
    if (!term_matches(p.subject, Term::resource(t.subject), binding)) return;
    if (!term_matches(p.predicate, Term::resource(t.predicate), binding)) return;
    if (!term_matches(p.object, t.object, binding)) return;
    Binding b = binding;
    if (p.subject.is_var) b[p.subject.name] = Term::resource(t.subject);
    if (p.predicate.is_var) b[p.predicate.name] = Term::resource(t.predicate);
    if (p.object.is_var) b[p.object.name] = t.object;
    out.push_back(std::move(b));
  };

  if (candidates) {
    for (std::size_t i : *candidates) try_triple(view.triples()[i]);
  } else {
    for (const auto& t : view.triples()) try_triple(t);
  }
}

inline std::vector<Binding> eval_group(const Group& g, const TripleView& view,
                                       const Binding& initial) {
  std::vector<Binding> rows{initial};
  for (const auto& p : g.patterns) {
    std::vector<Binding> next;
    for (const auto& row : rows) match_pattern(p, view, row, next);
    rows = std::move(next);
    if (rows.empty()) break;
  }
  for (const auto& f : g.filters) {
    std::vector<Binding> next;
    for (const auto& row : rows)
      if (filter_passes(f, row)) next.push_back(row);
    rows = std::move(next);
  }
  for (const auto& branches : g.unions) {
    std::vector<Binding> next;
    for (const auto& row : rows)
      for (const auto& branch : branches) {
        auto sub = eval_group(branch, view, row);
        next.insert(next.end(), sub.begin(), sub.end());
      }
    rows = std::move(next);
  }
  return rows;
}

}  // namespace evaldetail

/// Evaluates a query: conjunctive pattern matching in textual order with
/// backtracking join; UNION concatenates branch results under the shared
/// outer bindings; duplicate rows are preserved. Result rows are projected
/// to the selected variables and sorted lexicographically.
inline BindingSet evaluate(const QueryAst& q, const TripleView& view, bool distinct = false) {
  auto full = evaldetail::eval_group(q.where, view, {});
  BindingSet out;
  for (const auto& row : full) {
    Binding projected;
    bool complete = true;
    for (const auto& v : q.select_vars) {
      auto it = row.find(v);
      if (it == row.end()) {
        complete = false;
        break;
      }
      projected[v] = it->second;
    }
    if (complete) out.rows.push_back(std::move(projected));
  }
  std::sort(out.rows.begin(), out.rows.end(),
            [](const Binding& a, const Binding& b) { return a < b; });
  if (distinct)
    out.rows.erase(std::unique(out.rows.begin(), out.rows.end()), out.rows.end());
  return out;
}

}  // namespace udsg
