#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "udsg/annotation.hpp"
#include "udsg/norm_models.hpp"

namespace udsg {

/// One normalized attribute record, as written by the normalize step and
/// consumed by the annotate step.
struct AttributeRecord {
  AnnTarget target;
  std::string subspace;
  std::string property;
  double value = 0.0;
  double confidence = 0.0;
};

struct FitDiagnostic {
  std::string subspace;
  std::string property;
  double loss = 0.0;
  int iterations = 0;
  bool converged = true;
};

struct NormalizeResult {
  std::vector<AttributeRecord> attributes;
  std::vector<FitDiagnostic> diagnostics;
  std::vector<std::string> warnings;
};

namespace pipedetail {

// Composite item keys for fits; "\x1f" cannot occur in node ids.
inline constexpr char kSep = '\x1f';

inline std::string target_key(const AnnTarget& t) {
  return t.is_edge ? t.node + kSep + t.edge_to : t.node;
}

inline AnnTarget target_from_key(const std::string& key) {
  auto sep = key.find(kSep);
  if (sep == std::string::npos) return AnnTarget::for_node(key);
  return AnnTarget::for_edge(key.substr(0, sep), key.substr(sep + 1));
}

/// Per-annotator ridit tables from all confidence responses in a subspace.
inline RiditTable subspace_ridit(const std::vector<const RawResponse*>& records) {
  std::map<std::string, std::vector<int>> conf;
  for (const auto* r : records)
    if (r->confidence) conf[r->annotator_id].push_back(*r->confidence);
  return ridit_score(conf);
}

inline void zscore_and_emit(std::map<std::string, std::map<std::string, double>>& by_property,
                            const std::map<std::string, std::map<std::string, double>>& conf,
                            const std::string& subspace, NormalizeResult& out) {
  for (auto& [property, values] : by_property) {
    if (!zscore_group(values))
      out.warnings.push_back(subspace + "." + property +
                             ": degenerate value group (single item or zero variance), centered at 0");
    for (const auto& [key, v] : values) {
      AttributeRecord rec;
      rec.target = target_from_key(key);
      rec.subspace = subspace;
      rec.property = property;
      rec.value = v;
      auto pit = conf.find(property);
      if (pit != conf.end()) {
        auto cit = pit->second.find(key);
        rec.confidence = cit == pit->second.end() ? 0.0 : cit->second;
      }
      out.attributes.push_back(rec);
    }
  }
}

}  // namespace pipedetail

/// Runs the full normalization pipeline over a raw annotation set:
/// factuality/genericity -> ridit-weighted logistic MEM per property;
/// time -> ridit-weighted multinomial MEM over the 11 durations;
/// wordsense -> unweighted logistic MEM over (argument, sense) items plus
/// supersense aggregation (sense_map required when wordsense records exist);
/// protoroles -> ordinal MEM + applicability MEM, combined as
/// sigmoid(delta) * beta. All values are z-scored per property at the end.
inline NormalizeResult run_normalization(const RawAnnotationSet& raw,
                                         const std::map<std::string, std::string>& sense_map = {},
                                         const OptimizerConfig& cfg = {}) {
  NormalizeResult out;

  std::map<std::string, std::vector<const RawResponse*>> by_subspace;
  for (const auto& r : raw.records) by_subspace[r.subspace].push_back(&r);

  // Binary node subspaces: one weighted logistic fit per property.
  for (const std::string subspace : {"factuality", "genericity"}) {
    auto it = by_subspace.find(subspace);
    if (it == by_subspace.end()) continue;
    RiditTable ridit = pipedetail::subspace_ridit(it->second);
    std::map<std::string, std::vector<BinaryResponse>> by_property;
    for (const auto* r : it->second) {
      BinaryResponse b;
      b.item = pipedetail::target_key(r->target);
      b.annotator = r->annotator_id;
      b.value = r->response;
      b.weight = r->confidence ? ridit_weight(ridit, r->annotator_id, *r->confidence) : 0.5;
      by_property[r->property].push_back(b);
    }
    std::map<std::string, std::map<std::string, double>> values, conf;
    for (const auto& [property, data] : by_property) {
      MemFit fit = fit_logistic_mem(data, cfg);
      out.diagnostics.push_back({subspace, property, fit.final_loss, fit.iterations, fit.converged});
      for (const auto& [item, b] : fit.fixed_effects) {
        values[property][item] = b[0];
        conf[property][item] = fit.confidences.at(item);
      }
    }
    pipedetail::zscore_and_emit(values, conf, subspace, out);
  }

  // Time: one multinomial fit over the duration classes.
  if (auto it = by_subspace.find("time"); it != by_subspace.end()) {
    RiditTable ridit = pipedetail::subspace_ridit(it->second);
    const auto& durations = registry::duration_properties();
    std::vector<CategoricalResponse> data;
    for (const auto* r : it->second) {
      CategoricalResponse c;
      c.item = pipedetail::target_key(r->target);
      c.annotator = r->annotator_id;
      c.category = r->response;
      c.weight = r->confidence ? ridit_weight(ridit, r->annotator_id, *r->confidence) : 0.5;
      data.push_back(c);
    }
    MemFit fit = fit_multinomial_mem(data, static_cast<int>(durations.size()), cfg);
    out.diagnostics.push_back({"time", "all-durations", fit.final_loss, fit.iterations, fit.converged});
    std::map<std::string, std::map<std::string, double>> values, conf;
    for (const auto& [item, beta] : fit.fixed_effects) {
      for (std::size_t k = 0; k < durations.size(); ++k) {
        values[durations[k]][item] = beta[k];
        conf[durations[k]][item] = fit.confidences.at(item);
      }
    }
    pipedetail::zscore_and_emit(values, conf, "time", out);
  }

  // Wordsense: unweighted logistic over (argument, sense), then supersense
  // aggregation; missing supersenses default to the global minimum.
  if (auto it = by_subspace.find("wordsense"); it != by_subspace.end()) {
    std::vector<BinaryResponse> data;
    for (const auto* r : it->second) {
      BinaryResponse b;
      b.item = pipedetail::target_key(r->target) + pipedetail::kSep + r->property;
      b.annotator = r->annotator_id;
      b.value = r->response;
      b.weight = 1.0;
      data.push_back(b);
    }
    MemFit fit = fit_logistic_mem(data, cfg);
    out.diagnostics.push_back({"wordsense", "all-senses", fit.final_loss, fit.iterations, fit.converged});
    std::map<std::pair<std::string, std::string>, double> beta, confidence;
    for (const auto& [item, b] : fit.fixed_effects) {
      auto sep = item.rfind(pipedetail::kSep);
      std::pair<std::string, std::string> key{item.substr(0, sep), item.substr(sep + 1)};
      beta[key] = b[0];
      confidence[key] = fit.confidences.at(item);
    }
    SupersenseResult agg = aggregate_supersenses(beta, confidence, sense_map);
    std::map<std::string, std::map<std::string, double>> values, conf;
    for (const auto& [key, v] : agg.values) {
      std::string property = "supersense." + key.second;
      values[property][key.first] = v;
      conf[property][key.first] = agg.confidences.at(key);
    }
    pipedetail::zscore_and_emit(values, conf, "wordsense", out);
  }

  // Protoroles: joint ordinal fit (shared cutpoints per annotator) plus an
  // applicability fit; combined before z-scoring.
  if (auto it = by_subspace.find("protoroles"); it != by_subspace.end()) {
    std::vector<OrdinalResponse> ordinal;
    std::vector<BinaryResponse> applicability;
    for (const auto* r : it->second) {
      std::string item = pipedetail::target_key(r->target) + pipedetail::kSep + r->property;
      ordinal.push_back({item, r->annotator_id, r->response});
      BinaryResponse b;
      b.item = item;
      b.annotator = r->annotator_id;
      b.value = r->response > 3 ? 1 : (*r->applicable ? 1 : 0);  // >= 4 implies applicable
      applicability.push_back(b);
    }
    MemFit fit = fit_ordinal_mem(ordinal, cfg);
    out.diagnostics.push_back(
        {"protoroles", "ordinal", fit.final_loss, fit.iterations, fit.converged});
    std::map<std::string, double> beta;
    for (const auto& [item, b] : fit.fixed_effects) beta[item] = b[0];
    auto delta = fit_applicability(applicability, cfg);
    auto combined = combine_protoroles(beta, delta);

    std::map<std::string, std::map<std::string, double>> values, conf;
    for (const auto& [item, v] : combined) {
      auto sep = item.rfind(pipedetail::kSep);
      std::string property = item.substr(sep + 1);
      std::string target = item.substr(0, sep);
      values[property][target] = v;
      conf[property][target] = fit.confidences.at(item);
    }
    pipedetail::zscore_and_emit(values, conf, "protoroles", out);
  }

  return out;
}

inline AttributeMap to_attribute_map(const std::vector<AttributeRecord>& records) {
  AttributeMap m;
  for (const auto& r : records)
    m[{r.target, r.subspace, r.property}] = AttributeValue{r.value, r.confidence};
  return m;
}

}  // namespace udsg
