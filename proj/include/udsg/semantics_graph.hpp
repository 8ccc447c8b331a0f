#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "udsg/predicate_extraction.hpp"
#include "udsg/syntax_graph.hpp"

namespace udsg {

struct SemanticsNode {
  std::string id;
  AttrMap attributes;

  bool operator==(const SemanticsNode&) const = default;
};

/// Edge in the semantics layer. domain="interface" edges point from a
/// semantics node to a syntax node (type "head" or "nonhead"); domain=
/// "semantics" edges connect semantics nodes (type "dependency" or "head").
struct SemanticsEdge {
  std::string source;
  std::string target;
  AttrMap attributes;

  bool operator==(const SemanticsEdge&) const = default;
};

struct UdsGraph {
  std::string sentence_id;
  Split split = Split::train;
  SyntaxGraph syntax;
  std::map<std::string, SemanticsNode> semantics_nodes;
  std::vector<SemanticsEdge> semantics_edges;

  std::string predicate_node_id(int position) const {
    return sentence_id + "-semantics-pred-" + std::to_string(position);
  }
  std::string argument_node_id(int position) const {
    return sentence_id + "-semantics-arg-" + std::to_string(position);
  }

  bool operator==(const UdsGraph&) const = default;
};

/// Performative nodes carry fixed id suffixes so queries can address them.
inline bool is_performative(const std::string& node_id) {
  for (const char* suffix : {"-semantics-arg-sentence", "-semantics-pred-speaker",
                             "-semantics-arg-author", "-semantics-arg-addressee"}) {
    std::string s(suffix);
    if (node_id.size() >= s.size() && node_id.compare(node_id.size() - s.size(), s.size(), s) == 0)
      return true;
  }
  return false;
}

namespace detail {

inline void sort_semantics_edges(std::vector<SemanticsEdge>& edges) {
  std::sort(edges.begin(), edges.end(), [](const SemanticsEdge& a, const SemanticsEdge& b) {
    auto ka = std::tuple(a.source, a.target, attr_string(a.attributes, "domain"),
                         attr_string(a.attributes, "type"));
    auto kb = std::tuple(b.source, b.target, attr_string(b.attributes, "domain"),
                         attr_string(b.attributes, "type"));
    return ka < kb;
  });
}

inline SemanticsEdge make_edge(std::string source, std::string target,
                               const std::string& domain, const std::string& type) {
  SemanticsEdge e;
  e.source = std::move(source);
  e.target = std::move(target);
  e.attributes["domain"] = domain;
  e.attributes["type"] = type;
  return e;
}

}  // namespace detail

/// Assembles the semantics layer from extracted predicate structures:
/// one predicate node per structure, one argument node per distinct argument
/// head (shared across predicates), instance edges to span tokens, dependency
/// edges predicate->argument, and a (semantics, head) edge from each clausal
/// argument node to the predicate node with the same head.
inline UdsGraph build_semantics_layer(const SyntaxGraph& g,
                                      const std::vector<PredicateStructure>& preds) {
  UdsGraph u;
  u.sentence_id = g.sentence_id;
  u.syntax = g;

  auto check_position = [&](int p) {
    if (p < 1 || p > g.token_count)
      throw std::invalid_argument("predicate structure references position " +
                                  std::to_string(p) + " outside sentence " + g.sentence_id);
  };

  std::set<int> pred_positions;
  for (const auto& p : preds) pred_positions.insert(p.head_position);

  auto add_instance_edges = [&](const std::string& sem_id, int head, const std::set<int>& span) {
    u.semantics_edges.push_back(
        detail::make_edge(sem_id, g.token_node_id(head), "interface", "head"));
    for (int pos : span) {
      if (pos == head) continue;
      u.semantics_edges.push_back(
          detail::make_edge(sem_id, g.token_node_id(pos), "interface", "nonhead"));
    }
  };

  for (const auto& pred : preds) {
    check_position(pred.head_position);
    SemanticsNode pn;
    pn.id = u.predicate_node_id(pred.head_position);
    pn.attributes["domain"] = std::string("semantics");
    pn.attributes["type"] = std::string("predicate");
    u.semantics_nodes[pn.id] = pn;
    for (int pos : pred.span) check_position(pos);
    add_instance_edges(pn.id, pred.head_position, pred.span);
  }

  std::set<int> seen_args;
  for (const auto& pred : preds) {
    for (const auto& arg : pred.arguments) {
      check_position(arg.head_position);
      std::string arg_id = u.argument_node_id(arg.head_position);
      if (seen_args.insert(arg.head_position).second) {
        SemanticsNode an;
        an.id = arg_id;
        an.attributes["domain"] = std::string("semantics");
        an.attributes["type"] = std::string("argument");
        u.semantics_nodes[an.id] = an;
        for (int pos : arg.span) check_position(pos);
        add_instance_edges(an.id, arg.head_position, arg.span);
      }
      u.semantics_edges.push_back(
          detail::make_edge(u.predicate_node_id(pred.head_position), arg_id,
                            "semantics", "dependency"));
      if (arg.is_clausal && pred_positions.count(arg.head_position)) {
        u.semantics_edges.push_back(
            detail::make_edge(arg_id, u.predicate_node_id(arg.head_position),
                              "semantics", "head"));
      }
    }
  }
  detail::sort_semantics_edges(u.semantics_edges);
  return u;
}

/// Predicate nodes not dominated by any non-performative semantics node via
/// (semantics, dependency) or (semantics, head) edges.
inline std::set<std::string> maximal_predicates(const UdsGraph& u) {
  std::set<std::string> out;
  for (const auto& [id, node] : u.semantics_nodes) {
    if (attr_string(node.attributes, "type") != "predicate") continue;
    if (is_performative(id)) continue;
    bool dominated = false;
    for (const auto& e : u.semantics_edges) {
      if (e.target != id) continue;
      if (attr_string(e.attributes, "domain") != "semantics") continue;
      const std::string type = attr_string(e.attributes, "type");
      if (type != "dependency" && type != "head") continue;
      if (!is_performative(e.source)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.insert(id);
  }
  return out;
}

/// Adds the four performative nodes: a sentence argument (instance head edge
/// to the syntactic root, semantics head edges to each maximal predicate),
/// a speaker predicate, an author argument, and an addressee argument. The
/// speaker predicate gets dependency edges to the other three. All four
/// carry only a domain attribute.
inline UdsGraph add_performative_nodes(const UdsGraph& input) {
  UdsGraph u = input;
  const std::string sid = u.sentence_id;
  const std::string sentence_id_node = sid + "-semantics-arg-sentence";
  const std::string speaker_id = sid + "-semantics-pred-speaker";
  const std::string author_id = sid + "-semantics-arg-author";
  const std::string addressee_id = sid + "-semantics-arg-addressee";

  auto maximal = maximal_predicates(u);

  for (const auto& id : {sentence_id_node, speaker_id, author_id, addressee_id}) {
    SemanticsNode n;
    n.id = id;
    n.attributes["domain"] = std::string("semantics");
    u.semantics_nodes[id] = n;
  }

  u.semantics_edges.push_back(
      detail::make_edge(sentence_id_node, u.syntax.root_id, "interface", "head"));
  for (const auto& pred_id : maximal)
    u.semantics_edges.push_back(
        detail::make_edge(sentence_id_node, pred_id, "semantics", "head"));
  for (const auto& target : {sentence_id_node, author_id, addressee_id})
    u.semantics_edges.push_back(
        detail::make_edge(speaker_id, target, "semantics", "dependency"));

  detail::sort_semantics_edges(u.semantics_edges);
  return u;
}

}  // namespace udsg
