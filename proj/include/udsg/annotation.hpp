#pragma once

#include <array>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "udsg/semantics_graph.hpp"

namespace udsg {

/// Fixed inventory of annotation subspaces and their properties.
namespace registry {

inline const std::vector<std::string>& node_subspaces() {
  static const std::vector<std::string> k{"factuality", "genericity", "time", "wordsense"};
  return k;
}

inline const std::vector<std::string>& duration_properties() {
  static const std::vector<std::string> k{
      "dur-instant", "dur-seconds", "dur-minutes", "dur-hours", "dur-days", "dur-weeks",
      "dur-months", "dur-years", "dur-decades", "dur-centuries", "dur-forever"};
  return k;
}

inline const std::vector<std::string>& protorole_properties() {
  static const std::vector<std::string> k{
      "instigation", "volition", "awareness", "sentient", "change-of-location",
      "existed-before", "existed-during", "existed-after", "change-of-possession",
      "change-of-state", "change-of-state-continuous", "was-used", "was-for-benefit",
      "partitive", "manner", "purpose", "location", "time"};
  return k;
}

inline const std::map<std::string, std::vector<std::string>>& subspaces() {
  static const std::map<std::string, std::vector<std::string>> k{
      {"factuality", {"factual"}},
      {"genericity",
       {"pred-particular", "pred-dynamic", "pred-hypothetical", "arg-particular", "arg-kind",
        "arg-abstract"}},
      {"time", duration_properties()},
      {"protoroles", protorole_properties()},
  };
  return k;
}

/// Wordsense properties are sense keys at collection time and
/// "supersense.<class>" after aggregation, so they are not enumerable here.
inline bool valid_property(const std::string& subspace, const std::string& property) {
  if (subspace == "wordsense") return !property.empty();
  auto it = subspaces().find(subspace);
  if (it == subspaces().end()) return false;
  for (const auto& p : it->second)
    if (p == property) return true;
  return false;
}

inline bool known_subspace(const std::string& s) {
  return s == "wordsense" || subspaces().count(s) > 0;
}

}  // namespace registry

/// Annotation target: either a semantics node or a (semantics, dependency)
/// edge identified by its endpoints.
struct AnnTarget {
  std::string node;    // node id, or edge source when is_edge
  std::string edge_to; // edge target when is_edge
  bool is_edge = false;

  static AnnTarget for_node(std::string id) { return {std::move(id), {}, false}; }
  static AnnTarget for_edge(std::string source, std::string target) {
    return {std::move(source), std::move(target), true};
  }
  auto operator<=>(const AnnTarget&) const = default;

  std::string display() const { return is_edge ? node + " -> " + edge_to : node; }
};

struct RawResponse {
  std::string annotator_id;
  AnnTarget target;
  std::string subspace;
  std::string property;  // sense key for wordsense
  int response = 0;
  std::optional<int> confidence;
  std::optional<bool> applicable;  // protoroles only, required when response <= 3
};

struct RawAnnotationSet {
  std::vector<RawResponse> records;

  using GroupKey = std::tuple<std::string, std::string, AnnTarget>;  // subspace, property, target
  std::map<GroupKey, std::vector<const RawResponse*>> grouped() const {
    std::map<GroupKey, std::vector<const RawResponse*>> m;
    for (const auto& r : records) m[{r.subspace, r.property, r.target}].push_back(&r);
    return m;
  }
};

class AnnotationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void validate_response(const RawResponse& r, std::size_t record_no) {
  auto fail = [&](const std::string& msg) {
    throw AnnotationError("record " + std::to_string(record_no) + ": " + msg);
  };
  if (!registry::known_subspace(r.subspace)) fail("unknown subspace '" + r.subspace + "'");
  if (!registry::valid_property(r.subspace, r.property))
    fail("unknown property '" + r.property + "' in subspace '" + r.subspace + "'");
  if (r.subspace == "protoroles") {
    if (!r.target.is_edge) fail("protoroles responses target edges");
    if (r.response < 1 || r.response > 5) fail("protoroles response must be 1-5");
    if (r.response <= 3 && !r.applicable)
      fail("applicable flag required for ordinal response <= 3");
    if (r.response > 3 && r.applicable)
      fail("applicable flag only present for ordinal response <= 3");
  } else {
    if (r.target.is_edge) fail(r.subspace + " responses target nodes");
    if (r.applicable) fail("applicable flag is protoroles-only");
    if (r.subspace == "time") {
      if (r.response < 0 || r.response > 10) fail("time response must be a duration index 0-10");
    } else {
      if (r.response != 0 && r.response != 1) fail(r.subspace + " uses a binary instrument");
    }
  }
  if (r.subspace == "wordsense") {
    if (r.confidence) fail("wordsense annotations carry no confidence response");
  } else if (r.subspace != "protoroles" && r.confidence) {
    if (*r.confidence < 1 || *r.confidence > 5) fail("confidence must be 1-5");
  }
}

}  // namespace detail

/// Loads line-delimited JSON annotation records. Each line is an object:
///   {"annotator": str, "target": str | {"source": str, "target": str},
///    "subspace": str, "property": str, "response": int,
///    "confidence": int?, "applicable": bool?}
inline RawAnnotationSet load_raw_annotations(std::istream& in) {
  RawAnnotationSet set;
  std::string line;
  std::size_t record_no = 0;
  while (std::getline(in, line)) {
    ++record_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw AnnotationError("record " + std::to_string(record_no) + ": " + e.what());
    }
    RawResponse r;
    try {
      r.annotator_id = j.at("annotator").get<std::string>();
      const auto& tgt = j.at("target");
      if (tgt.is_string()) {
        r.target = AnnTarget::for_node(tgt.get<std::string>());
      } else {
        r.target = AnnTarget::for_edge(tgt.at("source").get<std::string>(),
                                       tgt.at("target").get<std::string>());
      }
      r.subspace = j.at("subspace").get<std::string>();
      r.property = j.at("property").get<std::string>();
      r.response = j.at("response").get<int>();
      if (j.contains("confidence")) r.confidence = j.at("confidence").get<int>();
      if (j.contains("applicable")) r.applicable = j.at("applicable").get<bool>();
    } catch (const nlohmann::json::exception& e) {
      throw AnnotationError("record " + std::to_string(record_no) + ": " + e.what());
    }
    detail::validate_response(r, record_no);
    set.records.push_back(std::move(r));
  }
  return set;
}

inline RawAnnotationSet load_raw_annotations(const std::string& text) {
  std::istringstream in(text);
  return load_raw_annotations(in);
}

/// Normalized attribute value paired with a researcher confidence in [0,1].
struct AttributeValue {
  double value = 0.0;
  double confidence = 0.0;
};

using AttributeMap = std::map<std::tuple<AnnTarget, std::string, std::string>, AttributeValue>;

namespace detail {

inline bool subspace_targets_predicate(const std::string& subspace, const std::string& property) {
  if (subspace == "factuality" || subspace == "time") return true;
  if (subspace == "genericity") return property.rfind("pred-", 0) == 0;
  return false;
}

inline bool subspace_targets_argument(const std::string& subspace, const std::string& property) {
  if (subspace == "wordsense") return true;
  if (subspace == "genericity") return property.rfind("arg-", 0) == 0;
  return false;
}

}  // namespace detail

/// Attaches normalized attribute/confidence pairs to a graph. Keys are
/// stored as "<subspace>.<property>" plus "<subspace>.<property>.confidence".
/// Node subspaces must target nodes of the right kind; protoroles must
/// target (semantics, dependency) edges.
inline UdsGraph attach_attributes(const UdsGraph& input, const AttributeMap& attrs) {
  UdsGraph u = input;
  for (const auto& [key, av] : attrs) {
    const auto& [target, subspace, property] = key;
    if (av.confidence < 0.0 || av.confidence > 1.0)
      throw AnnotationError("confidence out of [0,1] for " + target.display());
    const std::string attr_key = subspace + "." + property;
    if (target.is_edge) {
      if (subspace != "protoroles")
        throw AnnotationError(subspace + " attributes target nodes, got edge " + target.display());
      bool found = false;
      for (auto& e : u.semantics_edges) {
        if (e.source == target.node && e.target == target.edge_to &&
            attr_string(e.attributes, "domain") == "semantics" &&
            attr_string(e.attributes, "type") == "dependency") {
          e.attributes[attr_key] = av.value;
          e.attributes[attr_key + ".confidence"] = av.confidence;
          found = true;
        }
      }
      if (!found)
        throw AnnotationError("no (semantics, dependency) edge " + target.display());
    } else {
      if (subspace == "protoroles")
        throw AnnotationError("protoroles attributes target edges, got node " + target.node);
      auto it = u.semantics_nodes.find(target.node);
      if (it == u.semantics_nodes.end())
        throw AnnotationError("unknown semantics node " + target.node);
      const std::string type = attr_string(it->second.attributes, "type");
      if (detail::subspace_targets_predicate(subspace, property) && type != "predicate")
        throw AnnotationError(subspace + "." + property + " is annotated on predicates, but " +
                              target.node + " is a " + (type.empty() ? "performative" : type) +
                              " node");
      if (detail::subspace_targets_argument(subspace, property) && type != "argument")
        throw AnnotationError(subspace + "." + property + " is annotated on arguments, but " +
                              target.node + " is a " + (type.empty() ? "performative" : type) +
                              " node");
      it->second.attributes[attr_key] = av.value;
      it->second.attributes[attr_key + ".confidence"] = av.confidence;
    }
  }
  return u;
}

/// Subspaces a node is annotated for: any "<subspace>.<property>" key.
inline std::set<std::string> annotated_subspaces(const AttrMap& attrs) {
  std::set<std::string> out;
  for (const auto& s : registry::node_subspaces()) {
    for (const auto& [k, v] : attrs) {
      if (k.rfind(s + ".", 0) == 0) {
        out.insert(s);
        break;
      }
    }
  }
  return out;
}

/// Cross-tab coverage counts for one split: 4x4 symmetric matrices over the
/// node subspaces (stored fully; render upper triangle).
struct CrosstabMatrices {
  std::array<std::array<long long, 4>, 4> nodes{};
  std::array<std::array<long long, 4>, 4> edges{};
};

using CrosstabResult = std::map<Split, CrosstabMatrices>;

inline CrosstabResult crosstab_counts(const std::vector<UdsGraph>& corpus) {
  CrosstabResult result;
  for (Split s : {Split::train, Split::dev, Split::test}) result[s];  // all splits present

  const auto& subs = registry::node_subspaces();
  auto index_of = [&](const std::string& s) {
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (subs[i] == s) return static_cast<int>(i);
    return -1;
  };

  for (const auto& g : corpus) {
    auto& m = result[g.split];
    for (const auto& [id, node] : g.semantics_nodes) {
      auto ann = annotated_subspaces(node.attributes);
      for (const auto& r : ann)
        for (const auto& c : ann)
          m.nodes[static_cast<std::size_t>(index_of(r))][static_cast<std::size_t>(index_of(c))]++;
    }
    for (const auto& e : g.semantics_edges) {
      if (attr_string(e.attributes, "domain") != "semantics" ||
          attr_string(e.attributes, "type") != "dependency")
        continue;
      bool has_protoroles = false;
      for (const auto& [k, v] : e.attributes)
        if (k.rfind("protoroles.", 0) == 0) has_protoroles = true;
      if (!has_protoroles) continue;
      auto src = g.semantics_nodes.find(e.source);
      auto tgt = g.semantics_nodes.find(e.target);
      if (src == g.semantics_nodes.end() || tgt == g.semantics_nodes.end()) continue;
      auto a = annotated_subspaces(src->second.attributes);
      auto b = annotated_subspaces(tgt->second.attributes);
      for (std::size_t r = 0; r < subs.size(); ++r) {
        for (std::size_t c = 0; c < subs.size(); ++c) {
          if ((a.count(subs[r]) && b.count(subs[c])) || (a.count(subs[c]) && b.count(subs[r])))
            m.edges[r][c]++;
        }
      }
    }
  }
  return result;
}

}  // namespace udsg
