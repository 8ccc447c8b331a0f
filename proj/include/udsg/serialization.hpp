#pragma once

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "udsg/query.hpp"
#include "udsg/semantics_graph.hpp"

namespace udsg {

inline constexpr const char* kDocumentSchemaVersion = "1";
inline constexpr const char* kNtriplesBase = "http://example.org/udsg/";

class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace serdetail {

inline nlohmann::json attr_to_json(const AttrValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  if (const auto* i = std::get_if<long long>(&v)) return *i;
  return std::get<double>(v);
}

inline AttrValue attr_from_json(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer() || j.is_number_unsigned()) return j.get<long long>();
  if (j.is_number_float()) return j.get<double>();
  throw DocumentError("unsupported attribute value type: " + j.dump());
}

inline nlohmann::json attrs_to_json(const AttrMap& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : m) j[k] = attr_to_json(v);
  return j;
}

inline AttrMap attrs_from_json(const nlohmann::json& j) {
  AttrMap m;
  for (const auto& [k, v] : j.items()) m[k] = attr_from_json(v);
  return m;
}

}  // namespace serdetail

/// Renders a graph to its native JSON document. Output is deterministic:
/// nlohmann::json objects keep keys sorted, nodes and edges are emitted in
/// canonical order, and doubles use round-trip-exact shortest decimals.
inline std::string render_document(const UdsGraph& u) {
  nlohmann::json doc;
  doc["schema_version"] = kDocumentSchemaVersion;
  doc["sentence_id"] = u.sentence_id;
  doc["split"] = to_string(u.split);

  std::map<std::string, const AttrMap*> nodes;
  for (const auto& [id, n] : u.syntax.nodes) nodes[id] = &n.attributes;
  for (const auto& [id, n] : u.semantics_nodes) nodes[id] = &n.attributes;
  doc["nodes"] = nlohmann::json::array();
  for (const auto& [id, attrs] : nodes) {
    nlohmann::json n;
    n["id"] = id;
    n["attributes"] = serdetail::attrs_to_json(*attrs);
    doc["nodes"].push_back(n);
  }

  struct EdgeRef {
    const std::string* source;
    const std::string* target;
    const AttrMap* attrs;
  };
  std::vector<EdgeRef> edges;
  for (const auto& e : u.syntax.edges) edges.push_back({&e.source, &e.target, &e.attributes});
  for (const auto& e : u.semantics_edges) edges.push_back({&e.source, &e.target, &e.attributes});
  std::sort(edges.begin(), edges.end(), [](const EdgeRef& a, const EdgeRef& b) {
    auto ka = std::tuple(*a.source, *a.target, attr_string(*a.attrs, "domain"),
                         attr_string(*a.attrs, "type"));
    auto kb = std::tuple(*b.source, *b.target, attr_string(*b.attrs, "domain"),
                         attr_string(*b.attrs, "type"));
    return ka < kb;
  });
  doc["edges"] = nlohmann::json::array();
  for (const auto& e : edges) {
    nlohmann::json j;
    j["source"] = *e.source;
    j["target"] = *e.target;
    j["attributes"] = serdetail::attrs_to_json(*e.attrs);
    doc["edges"].push_back(j);
  }
  return doc.dump(2) + "\n";
}

/// Parses a native JSON document back into a graph. Semantics-layer
/// invariants are revalidated: every non-performative semantics node must
/// have exactly one (interface, head) instance edge. Unknown attributes
/// survive untouched.
inline UdsGraph parse_document(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DocumentError(std::string("malformed document: ") + e.what());
  }
  std::string version = doc.value("schema_version", "");
  if (version != kDocumentSchemaVersion)
    throw DocumentError("unknown schema_version '" + version + "'");

  UdsGraph u;
  u.sentence_id = doc.at("sentence_id").get<std::string>();
  u.split = split_from_string(doc.value("split", "train"));
  u.syntax.sentence_id = u.sentence_id;

  for (const auto& jn : doc.at("nodes")) {
    std::string id = jn.at("id").get<std::string>();
    AttrMap attrs = serdetail::attrs_from_json(jn.at("attributes"));
    std::string domain = attr_string(attrs, "domain");
    if (domain == "syntax" || domain == "root") {
      SyntaxNode n{id, attrs};
      if (domain == "root") u.syntax.root_id = id;
      if (domain == "syntax") u.syntax.token_count++;
      u.syntax.nodes[id] = std::move(n);
    } else if (domain == "semantics") {
      u.semantics_nodes[id] = SemanticsNode{id, attrs};
    } else {
      throw DocumentError("node '" + id + "' has unknown domain '" + domain + "'");
    }
  }

  for (const auto& je : doc.at("edges")) {
    std::string source = je.at("source").get<std::string>();
    std::string target = je.at("target").get<std::string>();
    AttrMap attrs = serdetail::attrs_from_json(je.at("attributes"));
    std::string domain = attr_string(attrs, "domain");
    if (domain == "syntax") {
      u.syntax.edges.push_back(SyntaxEdge{source, target, attrs});
    } else if (domain == "semantics" || domain == "interface") {
      u.semantics_edges.push_back(SemanticsEdge{source, target, attrs});
    } else {
      throw DocumentError("edge " + source + " -> " + target + " has unknown domain '" +
                          domain + "'");
    }
  }
  detail::sort_semantics_edges(u.semantics_edges);
  std::sort(u.syntax.edges.begin(), u.syntax.edges.end(),
            [](const SyntaxEdge& a, const SyntaxEdge& b) {
              return std::tie(a.source, a.target) < std::tie(b.source, b.target);
            });

  // Revalidate the one-head-instance-edge invariant.
  std::map<std::string, int> head_edges;
  for (const auto& e : u.semantics_edges)
    if (attr_string(e.attributes, "domain") == "interface" &&
        attr_string(e.attributes, "type") == "head")
      head_edges[e.source]++;
  for (const auto& [id, node] : u.semantics_nodes) {
    int count = head_edges.count(id) ? head_edges[id] : 0;
    if (is_performative(id)) {
      const std::string suffix = "-semantics-arg-sentence";
      bool is_sentence_arg = id.size() >= suffix.size() &&
          id.compare(id.size() - suffix.size(), suffix.size(), suffix) == 0;
      int expected = is_sentence_arg ? 1 : 0;
      if (count != expected)
        throw DocumentError("performative node '" + id + "' has " + std::to_string(count) +
                            " head instance edges, expected " + std::to_string(expected));
    } else if (count != 1) {
      throw DocumentError("semantics node '" + id + "' has " + std::to_string(count) +
                          " head instance edges, expected exactly 1");
    }
  }
  return u;
}

namespace serdetail {

inline std::string ntriples_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string iri_encode(const std::string& s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~' || c == '%') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 0xF];
    }
  }
  return out;
}

inline std::string double_repr(double d) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), d);
  return std::string(buf, res.ptr);
}

}  // namespace serdetail

/// Serializes a TripleView to N-Triples: one triple per line, IRIs under a
/// fixed base namespace, typed literals, lines sorted lexicographically and
/// newline-terminated.
inline std::string export_ntriples(const TripleView& view) {
  std::vector<std::string> lines;
  lines.reserve(view.triples().size());
  for (const auto& t : view.triples()) {
    std::string line = "<" + std::string(kNtriplesBase) + serdetail::iri_encode(t.subject) +
                       "> <" + std::string(kNtriplesBase) + serdetail::iri_encode(t.predicate) +
                       "> ";
    switch (t.object.kind) {
      case Term::Kind::Resource:
        line += "<" + std::string(kNtriplesBase) + serdetail::iri_encode(t.object.text) + ">";
        break;
      case Term::Kind::Str:
        line += "\"" + serdetail::ntriples_escape(t.object.text) + "\"";
        break;
      case Term::Kind::Num:
        line += "\"" + serdetail::double_repr(t.object.number) +
                "\"^^<http://www.w3.org/2001/XMLSchema#double>";
        break;
    }
    line += " .";
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

}  // namespace udsg
