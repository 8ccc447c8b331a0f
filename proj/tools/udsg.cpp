// Command-line pipeline: build graphs from CoNLL-U, normalize raw
// annotations, attach attributes, query, print coverage stats, and export
// N-Triples. Exit codes: 0 success, 1 data failure, 2 usage/parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "udsg/annotation.hpp"
#include "udsg/conllu.hpp"
#include "udsg/pipeline.hpp"
#include "udsg/predicate_extraction.hpp"
#include "udsg/query.hpp"
#include "udsg/semantics_graph.hpp"
#include "udsg/serialization.hpp"

namespace fs = std::filesystem;
using namespace udsg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsageError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::vector<UdsGraph> load_graphs(const std::vector<std::string>& paths) {
  std::vector<UdsGraph> graphs;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(p))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) graphs.push_back(parse_document(read_file(f.string())));
    } else {
      graphs.push_back(parse_document(read_file(p)));
    }
  }
  return graphs;
}

int cmd_build(const std::vector<std::string>& inputs, const std::string& rule_config_path,
              const std::string& out_dir, const std::string& split_name) {
  RuleConfig rules;
  if (!rule_config_path.empty()) rules = RuleConfig::from_file(rule_config_path);
  Split split = split_from_string(split_name);
  fs::create_directories(out_dir);

  int failures = 0;
  std::size_t index = 0;
  for (const auto& path : inputs) {
    std::string text = read_file(path);
    for (const auto& [block, start] : split_conllu_blocks(text)) {
      ++index;
      try {
        Sentence s = parse_conllu_block(block, split, "sent-" + std::to_string(index), start);
        SyntaxGraph g = build_syntax_graph(s);
        auto preds = extract_predicates(g, rules);
        UdsGraph u = add_performative_nodes(build_semantics_layer(g, preds));
        u.split = split;
        write_file((fs::path(out_dir) / (u.sentence_id + ".json")).string(), render_document(u));
      } catch (const std::exception& e) {
        std::cerr << path << ": sentence " << index << " failed: " << e.what() << "\n";
        ++failures;
      }
    }
  }
  return failures ? kExitDataError : kExitOk;
}

int cmd_normalize(const std::vector<std::string>& inputs, const std::string& optimizer_config_path,
                  const std::string& sense_map_path, const std::string& out_dir, bool strict) {
  OptimizerConfig cfg;
  if (!optimizer_config_path.empty()) cfg = OptimizerConfig::from_file(optimizer_config_path);

  RawAnnotationSet raw;
  for (const auto& path : inputs) {
    auto set = load_raw_annotations(read_file(path));
    raw.records.insert(raw.records.end(), set.records.begin(), set.records.end());
  }

  std::map<std::string, std::string> sense_map;
  if (!sense_map_path.empty()) {
    nlohmann::json j = nlohmann::json::parse(read_file(sense_map_path));
    for (const auto& [k, v] : j.items()) sense_map[k] = v.get<std::string>();
  }

  NormalizeResult result = run_normalization(raw, sense_map, cfg);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";

  fs::create_directories(out_dir);
  std::string attrs_text;
  for (const auto& r : result.attributes) {
    nlohmann::json j;
    if (r.target.is_edge) {
      j["target"] = {{"source", r.target.node}, {"target", r.target.edge_to}};
    } else {
      j["target"] = r.target.node;
    }
    j["subspace"] = r.subspace;
    j["property"] = r.property;
    j["value"] = r.value;
    j["confidence"] = r.confidence;
    attrs_text += j.dump() + "\n";
  }
  write_file((fs::path(out_dir) / "attributes.jsonl").string(), attrs_text);

  std::string diag_text;
  bool all_converged = true;
  for (const auto& d : result.diagnostics) {
    nlohmann::json j;
    j["subspace"] = d.subspace;
    j["property"] = d.property;
    j["loss"] = d.loss;
    j["iterations"] = d.iterations;
    j["converged"] = d.converged;
    diag_text += j.dump() + "\n";
    if (!d.converged) {
      all_converged = false;
      std::cerr << "warning: fit " << d.subspace << "." << d.property << " did not converge\n";
    }
  }
  write_file((fs::path(out_dir) / "diagnostics.jsonl").string(), diag_text);
  return (!all_converged && strict) ? kExitDataError : kExitOk;
}

int cmd_annotate(const std::vector<std::string>& graph_paths, const std::string& attributes_path,
                 const std::string& out_dir) {
  std::vector<AttributeRecord> records;
  std::istringstream in(read_file(attributes_path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    AttributeRecord r;
    const auto& tgt = j.at("target");
    r.target = tgt.is_string()
                   ? AnnTarget::for_node(tgt.get<std::string>())
                   : AnnTarget::for_edge(tgt.at("source").get<std::string>(),
                                         tgt.at("target").get<std::string>());
    r.subspace = j.at("subspace").get<std::string>();
    r.property = j.at("property").get<std::string>();
    r.value = j.at("value").get<double>();
    r.confidence = j.at("confidence").get<double>();
    records.push_back(r);
  }

  auto graphs = load_graphs(graph_paths);
  fs::create_directories(out_dir);
  int failures = 0;
  for (auto& g : graphs) {
    AttributeMap mine;
    for (const auto& r : records) {
      const std::string& node = r.target.node;
      if (node.rfind(g.sentence_id + "-", 0) == 0)
        mine[{r.target, r.subspace, r.property}] = AttributeValue{r.value, r.confidence};
    }
    try {
      UdsGraph annotated = attach_attributes(g, mine);
      write_file((fs::path(out_dir) / (g.sentence_id + ".json")).string(),
                 render_document(annotated));
    } catch (const std::exception& e) {
      std::cerr << g.sentence_id << ": " << e.what() << "\n";
      ++failures;
    }
  }
  return failures ? kExitDataError : kExitOk;
}

int cmd_query(const std::string& query_text, const std::vector<std::string>& graph_paths,
              bool distinct) {
  QueryAst ast;
  try {
    ast = parse_query(query_text);
  } catch (const std::exception& e) {
    std::cerr << "query error: " << e.what() << "\n";
    return kExitUsageError;
  }
  auto graphs = load_graphs(graph_paths);
  TripleView view;
  for (const auto& g : graphs) add_triples(view, g);

  BindingSet result;
  try {
    result = evaluate(ast, view, distinct);
  } catch (const std::exception& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return kExitDataError;
  }
  for (std::size_t i = 0; i < ast.select_vars.size(); ++i)
    std::cout << (i ? "\t" : "") << "?" << ast.select_vars[i];
  std::cout << "\n";
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < ast.select_vars.size(); ++i) {
      const Term& t = row.at(ast.select_vars[i]);
      if (i) std::cout << "\t";
      if (t.kind == Term::Kind::Num) {
        std::cout << serdetail::double_repr(t.number);
      } else {
        std::cout << t.text;
      }
    }
    std::cout << "\n";
  }
  return kExitOk;
}

void print_matrix(std::ostream& os, const std::array<std::array<long long, 4>, 4>& m) {
  const auto& subs = registry::node_subspaces();
  std::size_t width = 12;
  os << std::string(width, ' ');
  for (const auto& s : subs) {
    os << s;
    os << std::string(width > s.size() ? width - s.size() : 1, ' ');
  }
  os << "\n";
  for (std::size_t r = 0; r < 4; ++r) {
    os << subs[r] << std::string(width > subs[r].size() ? width - subs[r].size() : 1, ' ');
    for (std::size_t c = 0; c < 4; ++c) {
      std::string cell = c < r ? "" : std::to_string(m[r][c]);  // upper triangle only
      os << cell << std::string(width > cell.size() ? width - cell.size() : 1, ' ');
    }
    os << "\n";
  }
}

int cmd_stats(const std::vector<std::string>& graph_paths) {
  auto graphs = load_graphs(graph_paths);
  auto result = crosstab_counts(graphs);
  for (Split s : {Split::train, Split::dev, Split::test}) {
    const auto& m = result.at(s);
    std::cout << "Annotated Nodes (" << to_string(s) << ")\n";
    print_matrix(std::cout, m.nodes);
    std::cout << "\nAnnotated Edges + Nodes (" << to_string(s) << ")\n";
    print_matrix(std::cout, m.edges);
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_export(const std::vector<std::string>& graph_paths, const std::string& format,
               const std::string& out_path) {
  if (format != "ntriples") {
    std::cerr << "unsupported format '" << format << "'; supported formats: [ntriples]\n";
    return kExitUsageError;
  }
  auto graphs = load_graphs(graph_paths);
  TripleView view;
  for (const auto& g : graphs) add_triples(view, g);
  write_file(out_path, export_ntriples(view));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decompositional semantic graph toolkit"};
  app.require_subcommand(1);

  std::vector<std::string> inputs;
  std::string rule_config, optimizer_config, sense_map, out, split = "train";
  std::string query_text, query_file, format = "ntriples", attributes_path;
  bool strict = false, distinct = false;

  auto* build = app.add_subcommand("build", "build graph documents from CoNLL-U files");
  build->add_option("inputs", inputs, "CoNLL-U files")->required();
  build->add_option("--config", rule_config, "extraction rule config file");
  build->add_option("--out", out, "output directory")->required();
  build->add_option("--split", split, "corpus split (train|dev|test)");

  auto* normalize = app.add_subcommand("normalize", "fit normalization models on raw annotations");
  normalize->add_option("inputs", inputs, "raw annotation JSONL files")->required();
  normalize->add_option("--config", optimizer_config, "optimizer config file");
  normalize->add_option("--sense-map", sense_map, "JSON object mapping senses to supersenses");
  normalize->add_option("--out", out, "output directory")->required();
  normalize->add_flag("--strict", strict, "nonzero exit when any fit fails to converge");

  auto* annotate = app.add_subcommand("annotate", "attach normalized attributes to graph documents");
  annotate->add_option("inputs", inputs, "graph documents or directories")->required();
  annotate->add_option("--attributes", attributes_path, "attributes.jsonl from normalize")->required();
  annotate->add_option("--out", out, "output directory")->required();

  auto* query = app.add_subcommand("query", "run a query over graph documents");
  query->add_option("inputs", inputs, "graph documents or directories")->required();
  query->add_option("--query", query_text, "inline query text");
  query->add_option("--query-file", query_file, "file containing the query");
  query->add_flag("--distinct", distinct, "deduplicate result rows");

  auto* stats = app.add_subcommand("stats", "print per-split annotation cross-tabs");
  stats->add_option("inputs", inputs, "graph documents or directories")->required();

  auto* exp = app.add_subcommand("export", "export graphs to a triple format");
  exp->add_option("inputs", inputs, "graph documents or directories")->required();
  exp->add_option("--format", format, "output format (ntriples)");
  exp->add_option("--out", out, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  try {
    if (build->parsed()) return cmd_build(inputs, rule_config, out, split);
    if (normalize->parsed()) return cmd_normalize(inputs, optimizer_config, sense_map, out, strict);
    if (annotate->parsed()) return cmd_annotate(inputs, attributes_path, out);
    if (query->parsed()) {
      if (query_text.empty() && query_file.empty()) {
        std::cerr << "query: provide --query or --query-file\n";
        return kExitUsageError;
      }
      if (query_text.empty()) query_text = read_file(query_file);
      return cmd_query(query_text, inputs, distinct);
    }
    if (stats->parsed()) return cmd_stats(inputs);
    if (exp->parsed()) return cmd_export(inputs, format, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsageError;
}
