#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "udsg/syntax_graph.hpp"

namespace udsg {

/// Rule table for deterministic predicate/argument extraction. The defaults
/// reproduce the standard ditransitive and clausal-subordination patterns;
/// the table is loadable from a config file so the rules stay auditable.
struct RuleConfig {
  std::set<std::string> predicate_trigger_relations{
      "root", "ccomp", "xcomp", "advcl", "acl", "acl:relcl", "conj-of-predicate"};
  std::set<std::string> argument_relations{
      "nsubj", "nsubjpass", "csubj", "obj", "dobj", "iobj", "ccomp", "xcomp", "obl", "nmod"};
  std::map<std::string, std::string> relation_aliases{{"dobj", "obj"}, {"nmod", "obl"}};
  bool case_lift = true;

  static RuleConfig from_file(const std::string& path);
};

/// Applies the alias table once; unknown labels pass through.
inline std::string normalize_relation(const std::string& deprel, const RuleConfig& cfg) {
  auto it = cfg.relation_aliases.find(deprel);
  return it == cfg.relation_aliases.end() ? deprel : it->second;
}

struct ArgumentStructure {
  int head_position = 0;
  std::set<int> span;
  bool is_clausal = false;

  bool operator==(const ArgumentStructure&) const = default;
};

struct PredicateStructure {
  int head_position = 0;
  std::set<int> span;
  std::vector<ArgumentStructure> arguments;

  bool operator==(const PredicateStructure&) const = default;
};

namespace detail {

struct TokenView {
  int position;
  std::string upos;
  std::string deprel;  // incoming relation, already aliased
  int head;
};

inline std::vector<TokenView> token_views(const SyntaxGraph& g, const RuleConfig& cfg) {
  std::vector<TokenView> toks;
  for (int p = 1; p <= g.token_count; ++p) {
    const auto& n = g.token_node(p);
    TokenView t;
    t.position = p;
    t.upos = attr_string(n.attributes, "upos");
    t.deprel = normalize_relation(attr_string(n.attributes, "deprel"), cfg);
    t.head = 0;
    toks.push_back(t);
  }
  for (const auto& e : g.edges) {
    if (e.source == g.root_id) continue;
    int sp = static_cast<int>(std::get<long long>(g.nodes.at(e.source).attributes.at("position")));
    int tp = static_cast<int>(std::get<long long>(g.nodes.at(e.target).attributes.at("position")));
    toks[static_cast<std::size_t>(tp - 1)].head = sp;
  }
  return toks;
}

}  // namespace detail

/// Extracts predicates, argument heads, and head/span sets from a syntax
/// graph. Rules, in order:
///   1. predicate heads: tokens whose aliased incoming relation is in the
///      trigger set and whose upos is VERB; tokens with a "cop" dependent
///      (the copular complement becomes the head); VERB conjuncts of
///      predicate heads when "conj-of-predicate" is in the trigger set.
///   2. arguments: dependents whose aliased relation is in the argument
///      set; ccomp/csubj dependents that are themselves predicate heads
///      become clausal arguments; a conjunct predicate lacking a subject
///      shares the first conjunct's subject.
///   3. argument span: the head's full subtree, minus case markers attached
///      directly to the argument head when case_lift is on (those lift into
///      the predicate span); clausal argument spans keep the full subtree
///      including the mark token.
///   4. predicate span: the head plus lifted case markers.
inline std::vector<PredicateStructure> extract_predicates(const SyntaxGraph& g,
                                                          const RuleConfig& cfg = {}) {
  auto toks = detail::token_views(g, cfg);
  auto at = [&](int p) -> const detail::TokenView& { return toks[static_cast<std::size_t>(p - 1)]; };

  std::map<int, std::vector<int>> children;
  for (const auto& t : toks)
    if (t.head != 0) children[t.head].push_back(t.position);
  for (auto& [h, cs] : children) std::sort(cs.begin(), cs.end());

  std::set<int> pred_heads;
  for (const auto& t : toks) {
    if (cfg.predicate_trigger_relations.count(t.deprel) && t.upos == "VERB")
      pred_heads.insert(t.position);
  }
  for (const auto& t : toks) {
    auto it = children.find(t.position);
    if (it == children.end()) continue;
    for (int c : it->second)
      if (at(c).deprel == "cop") pred_heads.insert(t.position);
  }
  if (cfg.predicate_trigger_relations.count("conj-of-predicate")) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& t : toks) {
        if (t.deprel == "conj" && t.upos == "VERB" && t.head != 0 &&
            pred_heads.count(t.head) && !pred_heads.count(t.position)) {
          pred_heads.insert(t.position);
          changed = true;
        }
      }
    }
  }

  static const std::set<std::string> kSubjectRelations{"nsubj", "nsubjpass", "csubj"};

  std::vector<PredicateStructure> preds;
  for (int p : pred_heads) {
    PredicateStructure pred;
    pred.head_position = p;

    std::vector<int> arg_heads;
    auto it = children.find(p);
    if (it != children.end())
      for (int c : it->second)
        if (cfg.argument_relations.count(at(c).deprel)) arg_heads.push_back(c);

    // Conjunct predicates borrow the first conjunct's subject.
    if (at(p).deprel == "conj" && pred_heads.count(at(p).head)) {
      bool has_subject = std::any_of(arg_heads.begin(), arg_heads.end(), [&](int c) {
        return kSubjectRelations.count(at(c).deprel) > 0;
      });
      if (!has_subject) {
        auto hit = children.find(at(p).head);
        if (hit != children.end())
          for (int c : hit->second)
            if (kSubjectRelations.count(at(c).deprel)) arg_heads.push_back(c);
      }
    }
    std::sort(arg_heads.begin(), arg_heads.end());
    arg_heads.erase(std::unique(arg_heads.begin(), arg_heads.end()), arg_heads.end());

    std::set<int> lifted;
    for (int a : arg_heads) {
      ArgumentStructure arg;
      arg.head_position = a;
      const std::string& rel = at(a).deprel;
      arg.is_clausal = (rel == "ccomp" || rel == "csubj") && pred_heads.count(a) > 0;
      arg.span = subtree_positions(g, a);
      if (!arg.is_clausal && cfg.case_lift) {
        auto ait = children.find(a);
        if (ait != children.end()) {
          for (int c : ait->second) {
            if (at(c).deprel == "case") {
              arg.span.erase(c);
              lifted.insert(c);
            }
          }
        }
      }
      pred.arguments.push_back(arg);
    }
    pred.span.insert(p);
    pred.span.insert(lifted.begin(), lifted.end());
    preds.push_back(pred);
  }
  return preds;  // pred_heads is ordered, so output is ordered by head position
}

inline RuleConfig RuleConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open rule config: " + path);
  RuleConfig cfg;
  std::string line;
  auto parse_set = [](const std::string& v) {
    std::set<std::string> out;
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item.erase(0, item.find_first_not_of(" \t"));
      item.erase(item.find_last_not_of(" \t") + 1);
      if (!item.empty()) out.insert(item);
    }
    return out;
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    val.erase(0, val.find_first_not_of(" \t"));
    val.erase(val.find_last_not_of(" \t") + 1);
    if (key == "predicate_trigger_relations") {
      cfg.predicate_trigger_relations = parse_set(val);
    } else if (key == "argument_relations") {
      cfg.argument_relations = parse_set(val);
    } else if (key == "relation_aliases") {
      cfg.relation_aliases.clear();
      for (const auto& pair : parse_set(val)) {
        auto colon = pair.find(':');
        if (colon == std::string::npos)
          throw std::runtime_error("bad alias entry '" + pair + "' (expected from:to)");
        cfg.relation_aliases[pair.substr(0, colon)] = pair.substr(colon + 1);
      }
    } else if (key == "case_lift") {
      cfg.case_lift = (val == "true" || val == "1" || val == "yes");
    } else {
      throw std::runtime_error("unknown rule config key: " + key);
    }
  }
  return cfg;
}

}  // namespace udsg
