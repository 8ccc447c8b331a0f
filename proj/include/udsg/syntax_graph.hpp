#pragma once

#include <algorithm>
#include <map>
#include <tuple>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "udsg/attributes.hpp"
#include "udsg/conllu.hpp"

namespace udsg {

struct SyntaxNode {
  std::string id;
  AttrMap attributes;

  bool operator==(const SyntaxNode&) const = default;
};

/// Dependency edge, always pointing from head to dependent. Attributes:
/// domain="syntax", type="dependency", deprel.
struct SyntaxEdge {
  std::string source;
  std::string target;
  AttrMap attributes;

  bool operator==(const SyntaxEdge&) const = default;
};

struct SyntaxGraph {
  std::string sentence_id;
  std::map<std::string, SyntaxNode> nodes;
  std::vector<SyntaxEdge> edges;
  std::string root_id;
  int token_count = 0;

  std::string token_node_id(int position) const {
    return sentence_id + "-syntax-" + std::to_string(position);
  }

  const SyntaxNode& token_node(int position) const {
    auto it = nodes.find(token_node_id(position));
    if (it == nodes.end())
      throw std::out_of_range("no token at position " + std::to_string(position) +
                              " in sentence " + sentence_id);
    return it->second;
  }

  bool operator==(const SyntaxGraph&) const = default;
};

inline std::string syntax_root_id(const std::string& sentence_id) {
  return sentence_id + "-root";
}

/// Builds the syntax-domain rooted digraph: one node per token plus a root
/// node, one head->dependent edge per token. Refuses invalid sentences.
inline SyntaxGraph build_syntax_graph(const Sentence& s) {
  auto violations = validate_sentence(s);
  if (!violations.empty()) {
    std::string msg = "cannot build syntax graph for '" + s.sentence_id + "':";
    for (const auto& v : violations) msg += " " + v + ";";
    throw std::invalid_argument(msg);
  }

  SyntaxGraph g;
  g.sentence_id = s.sentence_id;
  g.token_count = static_cast<int>(s.tokens.size());
  g.root_id = syntax_root_id(s.sentence_id);

  SyntaxNode root;
  root.id = g.root_id;
  root.attributes["domain"] = std::string("root");
  root.attributes["type"] = std::string("root");
  g.nodes[root.id] = root;

  for (const auto& t : s.tokens) {
    SyntaxNode n;
    n.id = g.token_node_id(t.position);
    n.attributes["position"] = static_cast<long long>(t.position);
    n.attributes["domain"] = std::string("syntax");
    n.attributes["type"] = std::string("token");
    n.attributes["form"] = t.form;
    n.attributes["lemma"] = t.lemma;
    n.attributes["upos"] = t.upos;
    n.attributes["xpos"] = t.xpos;
    n.attributes["deprel"] = t.deprel;
    for (const auto& [k, v] : t.feats) n.attributes[k] = v;
    g.nodes[n.id] = n;
  }

  for (const auto& t : s.tokens) {
    SyntaxEdge e;
    e.source = t.head == 0 ? g.root_id : g.token_node_id(t.head);
    e.target = g.token_node_id(t.position);
    e.attributes["domain"] = std::string("syntax");
    e.attributes["type"] = std::string("dependency");
    e.attributes["deprel"] = t.deprel;
    g.edges.push_back(e);
  }
  // Canonical edge order keeps structural equality and rendering stable.
  std::sort(g.edges.begin(), g.edges.end(), [](const SyntaxEdge& a, const SyntaxEdge& b) {
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  });
  return g;
}

namespace detail {

inline std::map<int, std::vector<int>> dependency_children(const SyntaxGraph& g) {
  std::map<int, std::vector<int>> children;
  for (const auto& e : g.edges) {
    if (e.source == g.root_id) continue;
    auto src = g.nodes.at(e.source);
    auto tgt = g.nodes.at(e.target);
    int sp = static_cast<int>(std::get<long long>(src.attributes.at("position")));
    int tp = static_cast<int>(std::get<long long>(tgt.attributes.at("position")));
    children[sp].push_back(tp);
  }
  return children;
}

}  // namespace detail

/// Positions of all tokens reachable from `position` via zero or more
/// dependency edges, ascending; always contains `position` itself.
inline std::set<int> subtree_positions(const SyntaxGraph& g, int position) {
  if (!g.nodes.count(g.token_node_id(position)))
    throw std::out_of_range("unknown position " + std::to_string(position) +
                            " in sentence " + g.sentence_id);
  auto children = detail::dependency_children(g);
  std::set<int> out;
  std::vector<int> stack{position};
  while (!stack.empty()) {
    int p = stack.back();
    stack.pop_back();
    if (!out.insert(p).second) continue;
    auto it = children.find(p);
    if (it != children.end())
      for (int c : it->second) stack.push_back(c);
  }
  return out;
}

}  // namespace udsg
