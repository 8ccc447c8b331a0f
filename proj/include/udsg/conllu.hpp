#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace udsg {

enum class Split { train, dev, test };

inline std::string to_string(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::dev: return "dev";
    case Split::test: return "test";
  }
  return "train";
}

inline Split split_from_string(const std::string& s) {
  if (s == "train") return Split::train;
  if (s == "dev") return Split::dev;
  if (s == "test") return Split::test;
  throw std::invalid_argument("unknown split: " + s);
}

/// One basic-token row of a CoNLL-U file. Multiword-token ranges and
/// empty nodes are not modeled; they are skipped at parse time.
struct TokenRecord {
  int position = 0;  // 1-indexed ordinal
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;
  std::map<std::string, std::string> feats;
  int head = 0;  // 0 = attached to root
  std::string deprel;

  bool operator==(const TokenRecord&) const = default;
};

struct Sentence {
  std::string sentence_id;
  std::vector<TokenRecord> tokens;
  Split split = Split::train;

  bool operator==(const Sentence&) const = default;
};

class ConlluError : public std::runtime_error {
 public:
  ConlluError(const std::string& msg, std::size_t line = 0)
      : std::runtime_error(line ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Checks the Sentence invariants. Violations are data, not errors:
/// an empty result means the sentence is well-formed.
inline std::vector<std::string> validate_sentence(const Sentence& s) {
  std::vector<std::string> violations;
  const int n = static_cast<int>(s.tokens.size());
  bool positions_ok = true;
  for (int i = 0; i < n; ++i) {
    if (s.tokens[static_cast<std::size_t>(i)].position != i + 1) {
      violations.push_back("positions are not exactly 1.." + std::to_string(n));
      positions_ok = false;
      break;
    }
  }
  int roots = 0;
  for (const auto& t : s.tokens) {
    if (t.head < 0 || t.head > n)
      violations.push_back("token " + std::to_string(t.position) + " has head out of range");
    if (t.head == t.position)
      violations.push_back("token " + std::to_string(t.position) + " is its own head");
    if (t.head == 0) ++roots;
  }
  if (roots == 0) violations.push_back("no root: no token has head 0");
  if (roots > 1) violations.push_back("multiple roots: " + std::to_string(roots) + " tokens have head 0");
  // Cycle check: walk head chains; any chain longer than n tokens loops.
  if (positions_ok && roots == 1) {
    for (const auto& t : s.tokens) {
      int cur = t.position;
      int steps = 0;
      while (cur != 0 && steps <= n) {
        if (cur < 1 || cur > n) break;
        cur = s.tokens[static_cast<std::size_t>(cur - 1)].head;
        ++steps;
      }
      if (steps > n) {
        violations.push_back("cycle in head structure involving token " + std::to_string(t.position));
        break;
      }
    }
  }
  return violations;
}

namespace detail {

inline std::vector<std::string> split_on(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline bool is_plain_integer(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace detail

/// Parses one blank-line-separated CoNLL-U block into a Sentence.
/// `first_line` is the 1-based line number of the block's first line in the
/// enclosing file, used for error messages. `fallback_id` supplies the
/// sentence_id when no `# sent_id` comment is present.
inline Sentence parse_conllu_block(const std::string& block, Split split,
                                   const std::string& fallback_id,
                                   std::size_t first_line = 1,
                                   std::vector<std::string>* warnings = nullptr) {
  Sentence sent;
  sent.split = split;
  sent.sentence_id = fallback_id;

  std::istringstream in(block);
  std::string line;
  std::size_t lineno = first_line - 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(1, eq - 1);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        if (key == "sent_id") {
          std::string val = line.substr(eq + 1);
          val.erase(0, val.find_first_not_of(" \t"));
          val.erase(val.find_last_not_of(" \t") + 1);
          if (!val.empty()) sent.sentence_id = val;
        }
      }
      continue;
    }
    auto cols = detail::split_on(line, '\t');
    if (cols.size() != 10)
      throw ConlluError("expected 10 tab-separated columns, got " + std::to_string(cols.size()), lineno);
    const std::string& id = cols[0];
    // Skip multiword-token ranges ("3-4") and empty nodes ("5.1").
    if (id.find('-') != std::string::npos || id.find('.') != std::string::npos) continue;
    if (!detail::is_plain_integer(id)) throw ConlluError("malformed token id '" + id + "'", lineno);

    TokenRecord tok;
    tok.position = std::stoi(id);
    tok.form = cols[1];
    tok.lemma = cols[2];
    tok.upos = cols[3];
    tok.xpos = cols[4];
    if (cols[5] != "_" && !cols[5].empty()) {
      for (const auto& pair : detail::split_on(cols[5], '|')) {
        auto eq = pair.find('=');
        if (eq == std::string::npos) continue;
        std::string k = pair.substr(0, eq);
        std::string v = pair.substr(eq + 1);
        if (tok.feats.count(k) && warnings)
          warnings->push_back(sent.sentence_id + ": duplicate feats key '" + k + "', last value wins");
        tok.feats[k] = v;
      }
    }
    if (!detail::is_plain_integer(cols[6]))
      throw ConlluError("non-integer head '" + cols[6] + "'", lineno);
    tok.head = std::stoi(cols[6]);
    tok.deprel = cols[7];
    // DEPS and MISC columns ignored.
    sent.tokens.push_back(tok);
  }
  auto violations = validate_sentence(sent);
  if (!violations.empty()) {
    std::string msg = "invalid sentence '" + sent.sentence_id + "':";
    for (const auto& v : violations) msg += " " + v + ";";
    throw ConlluError(msg);
  }
  return sent;
}

/// Splits CoNLL-U text into blocks, returning (block text, first line number).
inline std::vector<std::pair<std::string, std::size_t>> split_conllu_blocks(const std::string& text) {
  std::vector<std::pair<std::string, std::size_t>> blocks;
  std::istringstream in(text);
  std::string line;
  std::string cur;
  std::size_t lineno = 0, block_start = 0;
  bool in_block = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = line;
    if (!stripped.empty() && stripped.back() == '\r') stripped.pop_back();
    if (stripped.empty()) {
      if (in_block) {
        blocks.emplace_back(cur, block_start);
        cur.clear();
        in_block = false;
      }
      continue;
    }
    if (!in_block) {
      block_start = lineno;
      in_block = true;
    }
    cur += stripped;
    cur += '\n';
  }
  if (in_block) blocks.emplace_back(cur, block_start);
  return blocks;
}

inline std::vector<Sentence> parse_conllu(const std::string& text, Split split,
                                          std::vector<std::string>* warnings = nullptr) {
  std::vector<Sentence> out;
  std::size_t index = 0;
  for (const auto& [block, start] : split_conllu_blocks(text)) {
    ++index;
    out.push_back(parse_conllu_block(block, split, "sent-" + std::to_string(index), start, warnings));
  }
  return out;
}

/// Renders a Sentence back to CoNLL-U token rows (no comments, DEPS/MISC
/// as "_"). Together with parse_conllu this is the identity on retained rows.
inline std::string render_conllu(const Sentence& s) {
  std::string out;
  for (const auto& t : s.tokens) {
    out += std::to_string(t.position);
    out += '\t' + t.form + '\t' + t.lemma + '\t' + t.upos + '\t' + t.xpos + '\t';
    if (t.feats.empty()) {
      out += '_';
    } else {
      bool first = true;
      for (const auto& [k, v] : t.feats) {
        if (!first) out += '|';
        out += k + '=' + v;
        first = false;
      }
    }
    out += '\t' + std::to_string(t.head) + '\t' + t.deprel + "\t_\t_\n";
  }
  return out;
}

}  // namespace udsg
