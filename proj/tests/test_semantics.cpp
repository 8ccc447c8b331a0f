#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "udsg/semantics_graph.hpp"

using namespace udsg;

namespace {

int count_edges(const UdsGraph& u, const std::string& domain, const std::string& type) {
  int n = 0;
  for (const auto& e : u.semantics_edges)
    if (attr_string(e.attributes, "domain") == domain &&
        attr_string(e.attributes, "type") == type)
      ++n;
  return n;
}

bool has_edge(const UdsGraph& u, const std::string& src, const std::string& tgt,
              const std::string& domain, const std::string& type) {
  for (const auto& e : u.semantics_edges)
    if (e.source == src && e.target == tgt &&
        attr_string(e.attributes, "domain") == domain &&
        attr_string(e.attributes, "type") == type)
      return true;
  return false;
}

}  // namespace

TEST_CASE("gave semantics layer: node and edge census") {
  auto s = fixtures::gave_sentence();
  auto g = build_syntax_graph(s);
  auto u = build_semantics_layer(g, extract_predicates(g));

  CHECK(u.semantics_nodes.size() == 4);  // 1 predicate + 3 arguments
  CHECK(count_edges(u, "interface", "head") == 4);
  CHECK(count_edges(u, "interface", "nonhead") == 2);  // "to" under pred, "the" under book
  CHECK(count_edges(u, "semantics", "dependency") == 3);
  CHECK(count_edges(u, "semantics", "head") == 0);

  CHECK(has_edge(u, u.predicate_node_id(2), g.token_node_id(2), "interface", "head"));
  CHECK(has_edge(u, u.predicate_node_id(2), g.token_node_id(5), "interface", "nonhead"));
  CHECK(has_edge(u, u.argument_node_id(4), g.token_node_id(3), "interface", "nonhead"));
  CHECK(has_edge(u, u.predicate_node_id(2), u.argument_node_id(1), "semantics", "dependency"));
  CHECK(has_edge(u, u.predicate_node_id(2), u.argument_node_id(4), "semantics", "dependency"));
  CHECK(has_edge(u, u.predicate_node_id(2), u.argument_node_id(6), "semantics", "dependency"));
}

TEST_CASE("clausal subordination links the argument node to the embedded predicate") {
  auto s = fixtures::thought_sentence();
  auto g = build_syntax_graph(s);
  auto u = build_semantics_layer(g, extract_predicates(g));

  // 2 predicates plus argument nodes for Gene, gave-clause, Chris, book, Pat
  CHECK(u.semantics_nodes.size() == 7);
  CHECK(has_edge(u, u.argument_node_id(5), u.predicate_node_id(5), "semantics", "head"));
  CHECK(has_edge(u, u.predicate_node_id(2), u.argument_node_id(5), "semantics", "dependency"));
  // nsubj of the embedded clause attaches to the embedded predicate only
  CHECK(has_edge(u, u.predicate_node_id(5), u.argument_node_id(4), "semantics", "dependency"));
  CHECK_FALSE(has_edge(u, u.predicate_node_id(2), u.argument_node_id(4), "semantics", "dependency"));
}

TEST_CASE("argument nodes are shared across predicates") {
  // "Kim ran and jumped": both predicates take the same Kim argument node
  auto s = fixtures::make_sentence("conj", {
      {"Kim", "Kim", "PROPN", "NNP", 2, "nsubj"},
      {"ran", "run", "VERB", "VBD", 0, "root"},
      {"and", "and", "CCONJ", "CC", 4, "cc"},
      {"jumped", "jump", "VERB", "VBD", 2, "conj"},
  });
  auto g = build_syntax_graph(s);
  auto u = build_semantics_layer(g, extract_predicates(g));
  CHECK(u.semantics_nodes.size() == 3);
  CHECK(has_edge(u, u.predicate_node_id(2), u.argument_node_id(1), "semantics", "dependency"));
  CHECK(has_edge(u, u.predicate_node_id(4), u.argument_node_id(1), "semantics", "dependency"));
}

TEST_CASE("maximal predicates exclude subordinated ones") {
  auto s = fixtures::thought_sentence();
  auto g = build_syntax_graph(s);
  auto u = build_semantics_layer(g, extract_predicates(g));
  auto maximal = maximal_predicates(u);
  CHECK(maximal == std::set<std::string>{u.predicate_node_id(2)});

  auto gave = fixtures::full_graph(fixtures::gave_sentence());
  CHECK(maximal_predicates(gave) == std::set<std::string>{gave.predicate_node_id(2)});
}

TEST_CASE("performative layer shape") {
  auto u = fixtures::full_graph(fixtures::gave_sentence());
  const std::string sid = "gave";
  for (const char* suffix : {"-semantics-arg-sentence", "-semantics-pred-speaker",
                             "-semantics-arg-author", "-semantics-arg-addressee"}) {
    REQUIRE(u.semantics_nodes.count(sid + std::string(suffix)) == 1);
    CHECK(is_performative(sid + std::string(suffix)));
    const auto& n = u.semantics_nodes.at(sid + std::string(suffix));
    CHECK(n.attributes.size() == 1);  // only domain
    CHECK(attr_string(n.attributes, "domain") == "semantics");
  }
  CHECK_FALSE(is_performative(u.predicate_node_id(2)));

  CHECK(has_edge(u, sid + "-semantics-arg-sentence", u.syntax.root_id, "interface", "head"));
  CHECK(has_edge(u, sid + "-semantics-arg-sentence", u.predicate_node_id(2), "semantics", "head"));
  for (const char* tgt : {"-semantics-arg-sentence", "-semantics-arg-author",
                          "-semantics-arg-addressee"})
    CHECK(has_edge(u, sid + "-semantics-pred-speaker", sid + std::string(tgt),
                   "semantics", "dependency"));
}

TEST_CASE("empty extraction still yields the performative scaffold") {
  auto s = fixtures::make_sentence("np", {
      {"the", "the", "DET", "DT", 2, "det"},
      {"dog", "dog", "NOUN", "NN", 0, "root"},
  });
  auto u = fixtures::full_graph(s);
  CHECK(u.semantics_nodes.size() == 4);
  CHECK(count_edges(u, "semantics", "dependency") == 3);
  CHECK(count_edges(u, "interface", "head") == 1);
  CHECK(count_edges(u, "semantics", "head") == 0);  // no maximal predicates
}

TEST_CASE("sentence argument heads every maximal predicate") {
  std::mt19937 rng(31);
  for (int i = 0; i < 100; ++i) {
    auto s = fixtures::random_sentence(rng, "m");
    auto g = build_syntax_graph(s);
    auto base = build_semantics_layer(g, extract_predicates(g));
    auto maximal = maximal_predicates(base);
    auto u = add_performative_nodes(base);
    const std::string sent_arg = s.sentence_id + "-semantics-arg-sentence";
    for (const auto& pid : maximal)
      CHECK(has_edge(u, sent_arg, pid, "semantics", "head"));
    int head_edges_from_sentence = 0;
    for (const auto& e : u.semantics_edges)
      if (e.source == sent_arg && attr_string(e.attributes, "domain") == "semantics")
        ++head_edges_from_sentence;
    CHECK(head_edges_from_sentence == static_cast<int>(maximal.size()));
  }
}
