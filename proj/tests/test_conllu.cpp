#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "udsg/conllu.hpp"

using namespace udsg;

namespace {

const char* kGaveConllu =
    "# sent_id = gave\n"
    "1\tChris\tChris\tPROPN\tNNP\t_\t2\tnsubj\t_\t_\n"
    "2\tgave\tgive\tVERB\tVBD\t_\t0\troot\t_\t_\n"
    "3\tthe\tthe\tDET\tDT\t_\t4\tdet\t_\t_\n"
    "4\tbook\tbook\tNOUN\tNN\t_\t2\tobj\t_\t_\n"
    "5\tto\tto\tADP\tIN\t_\t6\tcase\t_\t_\n"
    "6\tPat\tPat\tPROPN\tNNP\t_\t2\tobl\t_\t_\n";

}  // namespace

TEST_CASE("one-token block parses") {
  auto sents = parse_conllu("1\tHi\thi\tINTJ\tUH\t_\t0\troot\t_\t_\n", Split::train);
  REQUIRE(sents.size() == 1);
  REQUIRE(sents[0].tokens.size() == 1);
  CHECK(sents[0].tokens[0].head == 0);
  CHECK(sents[0].tokens[0].deprel == "root");
  CHECK(sents[0].sentence_id == "sent-1");
}

TEST_CASE("gave fixture parses into a tree rooted at position 2") {
  auto sents = parse_conllu(kGaveConllu, Split::train);
  REQUIRE(sents.size() == 1);
  const auto& s = sents[0];
  CHECK(s.sentence_id == "gave");
  REQUIRE(s.tokens.size() == 6);
  CHECK(s.tokens[1].head == 0);
  CHECK(s.tokens[1].deprel == "root");
  CHECK(s.tokens[0].deprel == "nsubj");
  CHECK(validate_sentence(s).empty());
  CHECK(s == fixtures::gave_sentence());
}

TEST_CASE("9-column line is a parse error citing the line") {
  std::string bad = "1\tHi\thi\tINTJ\tUH\t_\t0\troot\t_\n";
  try {
    parse_conllu(bad, Split::train);
    FAIL("expected ConlluError");
  } catch (const ConlluError& e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
}

TEST_CASE("non-integer head is a parse error") {
  CHECK_THROWS_AS(parse_conllu("1\tHi\thi\tINTJ\tUH\t_\tx\troot\t_\t_\n", Split::train),
                  ConlluError);
}

TEST_CASE("cyclic head structure names the sentence") {
  std::string cyc =
      "# sent_id = cyc\n"
      "1\ta\ta\tX\tX\t_\t2\tdep\t_\t_\n"
      "2\tb\tb\tX\tX\t_\t1\tdep\t_\t_\n"
      "3\tc\tc\tX\tX\t_\t0\troot\t_\t_\n";
  try {
    parse_conllu(cyc, Split::train);
    FAIL("expected ConlluError");
  } catch (const ConlluError& e) {
    CHECK(std::string(e.what()).find("cyc") != std::string::npos);
  }
}

TEST_CASE("multiword ranges and empty nodes are skipped; feats parsed") {
  std::string text =
      "1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\tdo\tdo\tAUX\tVBP\tNumber=Sing|Mood=Ind\t2\taux\t_\t_\n"
      "2\tgo\tgo\tVERB\tVB\t_\t0\troot\t_\t_\n"
      "2.1\televate\t_\t_\t_\t_\t_\t_\t_\t_\n";
  auto sents = parse_conllu(text, Split::dev);
  REQUIRE(sents.size() == 1);
  REQUIRE(sents[0].tokens.size() == 2);
  CHECK(sents[0].tokens[0].feats.at("Number") == "Sing");
  CHECK(sents[0].tokens[0].feats.at("Mood") == "Ind");
  CHECK(sents[0].tokens[1].feats.empty());
  CHECK(sents[0].split == Split::dev);
}

TEST_CASE("duplicate feats key: last wins with a warning") {
  std::vector<std::string> warnings;
  auto sents = parse_conllu("1\ta\ta\tX\tX\tK=1|K=2\t0\troot\t_\t_\n", Split::train, &warnings);
  CHECK(sents[0].tokens[0].feats.at("K") == "2");
  CHECK(warnings.size() == 1);
}

TEST_CASE("validate_sentence reports violations as data") {
  auto good = fixtures::gave_sentence();
  CHECK(validate_sentence(good).empty());

  auto two_roots = good;
  two_roots.tokens[3].head = 0;
  auto v = validate_sentence(two_roots);
  REQUIRE_FALSE(v.empty());
  CHECK(v[0].find("multiple roots") != std::string::npos);

  Sentence cycle = fixtures::make_sentence("c", {
      {"a", "a", "X", "X", 2, "dep"},
      {"b", "b", "X", "X", 1, "dep"},
      {"c", "c", "X", "X", 0, "root"},
  });
  bool found_cycle = false;
  for (const auto& msg : validate_sentence(cycle))
    if (msg.find("cycle") != std::string::npos) found_cycle = true;
  CHECK(found_cycle);
}

TEST_CASE("parse after render is the identity on retained rows") {
  std::mt19937 rng(20260826);
  for (int i = 0; i < 50; ++i) {
    auto s = fixtures::random_sentence(rng, "rt-" + std::to_string(i));
    auto rendered = render_conllu(s);
    auto reparsed = parse_conllu_block(rendered, s.split, s.sentence_id);
    CHECK(reparsed == s);
    CHECK(validate_sentence(reparsed).empty());
  }
}
