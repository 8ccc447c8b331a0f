#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "udsg/annotation.hpp"
#include "udsg/conllu.hpp"
#include "udsg/predicate_extraction.hpp"
#include "udsg/semantics_graph.hpp"
#include "udsg/syntax_graph.hpp"

namespace fixtures {

struct TokSpec {
  const char* form;
  const char* lemma;
  const char* upos;
  const char* xpos;
  int head;
  const char* deprel;
};

inline udsg::Sentence make_sentence(const std::string& id, const std::vector<TokSpec>& toks,
                                    udsg::Split split = udsg::Split::train) {
  udsg::Sentence s;
  s.sentence_id = id;
  s.split = split;
  int pos = 0;
  for (const auto& t : toks) {
    udsg::TokenRecord r;
    r.position = ++pos;
    r.form = t.form;
    r.lemma = t.lemma;
    r.upos = t.upos;
    r.xpos = t.xpos;
    r.head = t.head;
    r.deprel = t.deprel;
    s.tokens.push_back(r);
  }
  return s;
}

// "Chris gave the book to Pat"
inline udsg::Sentence gave_sentence(const std::string& id = "gave") {
  return make_sentence(id, {
      {"Chris", "Chris", "PROPN", "NNP", 2, "nsubj"},
      {"gave", "give", "VERB", "VBD", 0, "root"},
      {"the", "the", "DET", "DT", 4, "det"},
      {"book", "book", "NOUN", "NN", 2, "obj"},
      {"to", "to", "ADP", "IN", 6, "case"},
      {"Pat", "Pat", "PROPN", "NNP", 2, "obl"},
  });
}

// "Gene thought that Chris gave the book to Pat"
inline udsg::Sentence thought_sentence(const std::string& id = "thought") {
  return make_sentence(id, {
      {"Gene", "Gene", "PROPN", "NNP", 2, "nsubj"},
      {"thought", "think", "VERB", "VBD", 0, "root"},
      {"that", "that", "SCONJ", "IN", 5, "mark"},
      {"Chris", "Chris", "PROPN", "NNP", 5, "nsubj"},
      {"gave", "give", "VERB", "VBD", 2, "ccomp"},
      {"the", "the", "DET", "DT", 7, "det"},
      {"book", "book", "NOUN", "NN", 5, "obj"},
      {"to", "to", "ADP", "IN", 9, "case"},
      {"Pat", "Pat", "PROPN", "NNP", 5, "obl"},
  });
}

// "Kim is tall" (copular predicate headed by the complement)
inline udsg::Sentence copular_sentence(const std::string& id = "copular") {
  return make_sentence(id, {
      {"Kim", "Kim", "PROPN", "NNP", 3, "nsubj"},
      {"is", "be", "AUX", "VBZ", 3, "cop"},
      {"tall", "tall", "ADJ", "JJ", 0, "root"},
  });
}

inline udsg::UdsGraph full_graph(const udsg::Sentence& s, const udsg::RuleConfig& cfg = {}) {
  auto g = udsg::build_syntax_graph(s);
  auto preds = udsg::extract_predicates(g, cfg);
  auto u = udsg::build_semantics_layer(g, preds);
  u.split = s.split;
  return udsg::add_performative_nodes(u);
}

/// Random dependency tree over n tokens: token order shuffled, each token's
/// head drawn from the already-attached prefix (exactly one root, acyclic).
inline udsg::Sentence random_sentence(std::mt19937& rng, const std::string& id) {
  static const std::vector<std::pair<const char*, const char*>> kVocab{
      {"VERB", "run"}, {"VERB", "see"}, {"NOUN", "dog"},  {"NOUN", "idea"}, {"PROPN", "Kim"},
      {"ADJ", "tall"}, {"DET", "the"},  {"ADP", "to"},    {"SCONJ", "that"}, {"AUX", "be"},
  };
  static const std::vector<const char*> kRelations{
      "nsubj", "obj", "dobj", "iobj", "obl", "nmod", "det", "case", "mark",
      "ccomp", "xcomp", "advcl", "acl", "conj", "cop", "amod", "csubj"};

  int n = std::uniform_int_distribution<int>(1, 12)(rng);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<TokSpec> toks(static_cast<std::size_t>(n));
  std::vector<int> attached;
  for (int i = 0; i < n; ++i) {
    int pos = order[static_cast<std::size_t>(i)];
    auto& t = toks[static_cast<std::size_t>(pos - 1)];
    auto [upos, form] =
        kVocab[std::uniform_int_distribution<std::size_t>(0, kVocab.size() - 1)(rng)];
    t.form = form;
    t.lemma = form;
    t.upos = upos;
    t.xpos = "XX";
    if (attached.empty()) {
      t.head = 0;
      t.deprel = "root";
    } else {
      t.head = attached[std::uniform_int_distribution<std::size_t>(0, attached.size() - 1)(rng)];
      t.deprel = kRelations[std::uniform_int_distribution<std::size_t>(0, kRelations.size() - 1)(rng)];
    }
    attached.push_back(pos);
  }
  return make_sentence(id, toks);
}

}  // namespace fixtures
