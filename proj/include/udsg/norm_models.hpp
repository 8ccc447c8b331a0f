#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace udsg {

/// Lower bound on re-estimated random-effect variances. Keeps the normal
/// and exponential penalties finite at zero initialization.
inline constexpr double kVarianceFloor = 1e-3;

struct OptimizerConfig {
  int max_iterations = 5000;
  double tolerance = 1e-6;  // relative loss change
  double learning_rate = 0.05;

  static OptimizerConfig from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open optimizer config: " + path);
    OptimizerConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(0, eq);
      std::string val = line.substr(eq + 1);
      key.erase(0, key.find_first_not_of(" \t"));
      key.erase(key.find_last_not_of(" \t") + 1);
      if (key == "max_iterations") cfg.max_iterations = std::stoi(val);
      else if (key == "tolerance") cfg.tolerance = std::stod(val);
      else if (key == "learning_rate") cfg.learning_rate = std::stod(val);
      else throw std::runtime_error("unknown optimizer config key: " + key);
    }
    if (cfg.tolerance <= 0) throw std::runtime_error("tolerance must be > 0");
    return cfg;
  }
};

/// Per-annotator map from raw confidence level (1-5) to a ridit weight in
/// (0,1): r(y) = P(Y < y) + 0.5 P(Y = y) under the annotator's own
/// empirical distribution.
using RiditTable = std::map<std::string, std::map<int, double>>;

inline RiditTable ridit_score(const std::map<std::string, std::vector<int>>& responses) {
  RiditTable table;
  for (const auto& [annotator, levels] : responses) {
    if (levels.empty()) continue;
    std::map<int, int> counts;
    for (int l : levels) counts[l]++;
    const double n = static_cast<double>(levels.size());
    double below = 0.0;
    for (const auto& [level, count] : counts) {
      table[annotator][level] = (below + 0.5 * count) / n;
      below += count;
    }
  }
  return table;
}

inline double ridit_weight(const RiditTable& table, const std::string& annotator, int level) {
  auto a = table.find(annotator);
  if (a == table.end()) return 0.5;
  auto l = a->second.find(level);
  if (l == a->second.end()) return 0.5;
  return l->second;
}

struct BinaryResponse {
  std::string item;
  std::string annotator;
  int value = 0;  // 0 or 1
  double weight = 1.0;
};

struct CategoricalResponse {
  std::string item;
  std::string annotator;
  int category = 0;  // 0-based
  double weight = 1.0;
};

struct OrdinalResponse {
  std::string item;
  std::string annotator;
  int level = 1;  // 1-5
};

/// Result of one mixed-effects fit. fixed_effects holds the attribute
/// values (pre z-scoring); random_effects the per-annotator parameters
/// (intercepts, or cutpoints for ordinal fits); confidences the researcher
/// confidence per item.
struct MemFit {
  std::map<std::string, std::vector<double>> fixed_effects;
  std::map<std::string, std::vector<double>> random_effects;
  std::map<std::string, double> confidences;
  double final_loss = 0.0;
  double initial_loss = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<std::string> warnings;

  double beta(const std::string& item) const { return fixed_effects.at(item)[0]; }
};

namespace detail {

inline double sigmoid(double x) {
  if (x >= 0) {
    double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  double e = std::exp(x);
  return e / (1.0 + e);
}

inline double population_variance(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(xs.size());
}

/// Deterministic full-batch Adam. Zero-initialized parameters plus a fixed
/// schedule make fits bit-identical across runs.
struct Adam {
  double lr, beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  std::vector<double> m, v;
  int t = 0;

  explicit Adam(std::size_t n, double learning_rate)
      : lr(learning_rate), m(n, 0.0), v(n, 0.0) {}

  void step(std::vector<double>& params, const std::vector<double>& grad) {
    ++t;
    double bc1 = 1.0 - std::pow(beta1, t);
    double bc2 = 1.0 - std::pow(beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
      m[i] = beta1 * m[i] + (1.0 - beta1) * grad[i];
      v[i] = beta2 * v[i] + (1.0 - beta2) * grad[i] * grad[i];
      params[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + eps);
    }
  }
};

template <typename T>
struct Indexer {
  std::vector<std::string> names;
  std::map<std::string, int> index;

  template <typename Range, typename KeyFn>
  void build(const Range& data, KeyFn key) {
    std::set<std::string> seen;
    for (const auto& d : data) seen.insert(key(d));
    names.assign(seen.begin(), seen.end());
    for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
  }
};

inline const double kLog2Pi = std::log(2.0 * 3.14159265358979323846);

}  // namespace detail

/// Weighted logistic mixed-effects fit: per-item fixed effects beta and
/// per-annotator random intercepts u, maximizing
///   sum_i sum_a r_ai log Bern(y; sigmoid(beta_i + u_a)) + sum_a log N(u_a; 0, Var(u))
/// with Var(u) re-estimated from the current u each iteration (never a free
/// parameter). Confidence per item is the weight-normalized mean likelihood.
inline MemFit fit_logistic_mem(const std::vector<BinaryResponse>& data,
                               const OptimizerConfig& cfg = {}) {
  MemFit fit;
  if (data.empty()) return fit;
  detail::Indexer<BinaryResponse> items, annotators;
  items.build(data, [](const BinaryResponse& r) { return r.item; });
  annotators.build(data, [](const BinaryResponse& r) { return r.annotator; });
  const std::size_t ni = items.names.size(), na = annotators.names.size();

  std::vector<double> params(ni + na, 0.0);  // [beta..., u...]
  std::vector<double> grad(params.size());
  detail::Adam adam(params.size(), cfg.learning_rate);

  struct Obs {
    int item, annotator, y;
    double w;
  };
  std::vector<Obs> obs;
  obs.reserve(data.size());
  for (const auto& r : data)
    obs.push_back({items.index.at(r.item), annotators.index.at(r.annotator), r.value, r.weight});

  double prev_loss = 0.0;
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    std::vector<double> u(params.begin() + static_cast<long>(ni), params.end());
    double var = std::max(detail::population_variance(u), kVarianceFloor);

    std::fill(grad.begin(), grad.end(), 0.0);
    double loss = 0.0;
    for (const auto& o : obs) {
      double p = detail::sigmoid(params[static_cast<std::size_t>(o.item)] +
                                 params[ni + static_cast<std::size_t>(o.annotator)]);
      double lik = o.y ? p : 1.0 - p;
      loss -= o.w * std::log(std::max(lik, 1e-300));
      double g = -o.w * (o.y - p);
      grad[static_cast<std::size_t>(o.item)] += g;
      grad[ni + static_cast<std::size_t>(o.annotator)] += g;
    }
    for (std::size_t a = 0; a < na; ++a) {
      double ua = params[ni + a];
      loss += 0.5 * (detail::kLog2Pi + std::log(var)) + ua * ua / (2.0 * var);
      grad[ni + a] += ua / var;
    }
    if (iter == 0) fit.initial_loss = loss;
    fit.final_loss = loss;
    fit.iterations = iter + 1;
    if (iter > 0 && std::abs(loss - prev_loss) / (std::abs(prev_loss) + 1e-12) < cfg.tolerance) {
      fit.converged = true;
      break;
    }
    prev_loss = loss;
    adam.step(params, grad);
  }

  for (std::size_t i = 0; i < ni; ++i) fit.fixed_effects[items.names[i]] = {params[i]};
  for (std::size_t a = 0; a < na; ++a) fit.random_effects[annotators.names[a]] = {params[ni + a]};

  std::map<std::string, double> num, den;
  for (const auto& o : obs) {
    double p = detail::sigmoid(params[static_cast<std::size_t>(o.item)] +
                               params[ni + static_cast<std::size_t>(o.annotator)]);
    double lik = o.y ? p : 1.0 - p;
    num[items.names[static_cast<std::size_t>(o.item)]] += o.w * lik;
    den[items.names[static_cast<std::size_t>(o.item)]] += o.w;
  }
  for (const auto& [item, d] : den)
    fit.confidences[item] = d > 0 ? num[item] / d : 0.0;
  return fit;
}

/// Multinomial logistic mixed-effects fit over K categories. beta_i and u_a
/// are K-vectors under a sum-to-zero constraint (resolving softmax shift
/// invariance); the normal penalty on u uses per-dimension variances
/// re-estimated each iteration.
inline MemFit fit_multinomial_mem(const std::vector<CategoricalResponse>& data, int k_categories,
                                  const OptimizerConfig& cfg = {}) {
  MemFit fit;
  if (data.empty()) return fit;
  const std::size_t K = static_cast<std::size_t>(k_categories);
  detail::Indexer<CategoricalResponse> items, annotators;
  items.build(data, [](const CategoricalResponse& r) { return r.item; });
  annotators.build(data, [](const CategoricalResponse& r) { return r.annotator; });
  const std::size_t ni = items.names.size(), na = annotators.names.size();

  for (const auto& r : data)
    if (r.category < 0 || r.category >= k_categories)
      throw std::invalid_argument("category out of range for item " + r.item);

  std::vector<double> params((ni + na) * K, 0.0);
  std::vector<double> grad(params.size());
  detail::Adam adam(params.size(), cfg.learning_rate);
  auto beta_at = [&](std::size_t i) { return i * K; };
  auto u_at = [&](std::size_t a) { return (ni + a) * K; };

  struct Obs {
    int item, annotator, y;
    double w;
  };
  std::vector<Obs> obs;
  obs.reserve(data.size());
  for (const auto& r : data)
    obs.push_back({items.index.at(r.item), annotators.index.at(r.annotator), r.category, r.weight});

  auto softmax_probs = [&](const Obs& o, std::vector<double>& p) {
    double mx = -1e300;
    for (std::size_t k = 0; k < K; ++k) {
      p[k] = params[beta_at(static_cast<std::size_t>(o.item)) + k] +
             params[u_at(static_cast<std::size_t>(o.annotator)) + k];
      mx = std::max(mx, p[k]);
    }
    double z = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      p[k] = std::exp(p[k] - mx);
      z += p[k];
    }
    for (std::size_t k = 0; k < K; ++k) p[k] /= z;
  };

  std::vector<double> p(K);
  double prev_loss = 0.0;
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    std::vector<double> var(K);
    for (std::size_t k = 0; k < K; ++k) {
      std::vector<double> uk(na);
      for (std::size_t a = 0; a < na; ++a) uk[a] = params[u_at(a) + k];
      var[k] = std::max(detail::population_variance(uk), kVarianceFloor);
    }

    std::fill(grad.begin(), grad.end(), 0.0);
    double loss = 0.0;
    for (const auto& o : obs) {
      softmax_probs(o, p);
      loss -= o.w * std::log(std::max(p[static_cast<std::size_t>(o.y)], 1e-300));
      for (std::size_t k = 0; k < K; ++k) {
        double g = -o.w * ((static_cast<int>(k) == o.y ? 1.0 : 0.0) - p[k]);
        grad[beta_at(static_cast<std::size_t>(o.item)) + k] += g;
        grad[u_at(static_cast<std::size_t>(o.annotator)) + k] += g;
      }
    }
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t k = 0; k < K; ++k) {
        double ua = params[u_at(a) + k];
        loss += 0.5 * (detail::kLog2Pi + std::log(var[k])) + ua * ua / (2.0 * var[k]);
        grad[u_at(a) + k] += ua / var[k];
      }
    }
    if (iter == 0) fit.initial_loss = loss;
    fit.final_loss = loss;
    fit.iterations = iter + 1;
    if (iter > 0 && std::abs(loss - prev_loss) / (std::abs(prev_loss) + 1e-12) < cfg.tolerance) {
      fit.converged = true;
      break;
    }
    prev_loss = loss;
    adam.step(params, grad);
    // Project each beta_i and u_a back onto the sum-to-zero subspace.
    for (std::size_t blk = 0; blk < ni + na; ++blk) {
      double mean = 0.0;
      for (std::size_t k = 0; k < K; ++k) mean += params[blk * K + k];
      mean /= static_cast<double>(K);
      for (std::size_t k = 0; k < K; ++k) params[blk * K + k] -= mean;
    }
  }

  for (std::size_t i = 0; i < ni; ++i)
    fit.fixed_effects[items.names[i]] =
        std::vector<double>(params.begin() + static_cast<long>(beta_at(i)),
                            params.begin() + static_cast<long>(beta_at(i) + K));
  for (std::size_t a = 0; a < na; ++a)
    fit.random_effects[annotators.names[a]] =
        std::vector<double>(params.begin() + static_cast<long>(u_at(a)),
                            params.begin() + static_cast<long>(u_at(a) + K));

  std::map<std::string, double> num, den;
  for (const auto& o : obs) {
    softmax_probs(o, p);
    num[items.names[static_cast<std::size_t>(o.item)]] += o.w * p[static_cast<std::size_t>(o.y)];
    den[items.names[static_cast<std::size_t>(o.item)]] += o.w;
  }
  for (const auto& [item, d] : den)
    fit.confidences[item] = d > 0 ? num[item] / d : 0.0;
  return fit;
}

/// Cutpoints for one annotator given the raw parameter block
/// [t, g1, g2, g3]: u_l = t + sum_{j<l} exp(g_j), strictly increasing by
/// construction.
inline std::vector<double> ordinal_cutpoints(const double* block) {
  std::vector<double> u(4);
  u[0] = block[0];
  for (int l = 1; l < 4; ++l) u[static_cast<std::size_t>(l)] =
      u[static_cast<std::size_t>(l - 1)] + std::exp(block[l]);
  return u;
}

/// Cumulative-link ("ordinal link logit") mixed-effects fit for 1-5
/// responses: P(y <= l) = sigmoid(u_al - beta_i) for l in 1..4, category
/// probabilities by differencing. Per-annotator cutpoints are parameterized
/// as a base plus exponentiated gaps; the gap penalty is an exponential
/// log-density with rate 1/Var(gap) re-estimated each iteration.
inline MemFit fit_ordinal_mem(const std::vector<OrdinalResponse>& data,
                              const OptimizerConfig& cfg = {}) {
  MemFit fit;
  if (data.empty()) return fit;
  detail::Indexer<OrdinalResponse> items, annotators;
  items.build(data, [](const OrdinalResponse& r) { return r.item; });
  annotators.build(data, [](const OrdinalResponse& r) { return r.annotator; });
  const std::size_t ni = items.names.size(), na = annotators.names.size();

  for (const auto& r : data)
    if (r.level < 1 || r.level > 5)
      throw std::invalid_argument("ordinal level out of range for item " + r.item);

  // Layout: [beta (ni), per annotator: t, g1, g2, g3].
  std::vector<double> params(ni + na * 4, 0.0);
  std::vector<double> grad(params.size());
  detail::Adam adam(params.size(), cfg.learning_rate);
  auto ann_at = [&](std::size_t a) { return ni + a * 4; };

  struct Obs {
    int item, annotator, level;
  };
  std::vector<Obs> obs;
  obs.reserve(data.size());
  for (const auto& r : data)
    obs.push_back({items.index.at(r.item), annotators.index.at(r.annotator), r.level});

  double prev_loss = 0.0;
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    // Exponential penalty rates from the current gap spread.
    std::vector<double> rate(3);
    for (std::size_t j = 0; j < 3; ++j) {
      std::vector<double> gaps(na);
      for (std::size_t a = 0; a < na; ++a) gaps[a] = std::exp(params[ann_at(a) + 1 + j]);
      rate[j] = 1.0 / std::max(detail::population_variance(gaps), kVarianceFloor);
    }

    std::fill(grad.begin(), grad.end(), 0.0);
    double loss = 0.0;
    for (const auto& o : obs) {
      const std::size_t a = static_cast<std::size_t>(o.annotator);
      auto u = ordinal_cutpoints(&params[ann_at(a)]);
      double beta = params[static_cast<std::size_t>(o.item)];
      auto F = [&](int l) {  // P(y <= l)
        if (l <= 0) return 0.0;
        if (l >= 5) return 1.0;
        return detail::sigmoid(u[static_cast<std::size_t>(l - 1)] - beta);
      };
      auto f = [&](int l) {  // dF/du_l
        if (l <= 0 || l >= 5) return 0.0;
        double Fl = F(l);
        return Fl * (1.0 - Fl);
      };
      const int y = o.level;
      double py = std::max(F(y) - F(y - 1), 1e-300);
      loss -= std::log(py);
      // d log py / d beta = (-f(y) + f(y-1)) / py
      grad[static_cast<std::size_t>(o.item)] -= (-f(y) + f(y - 1)) / py;
      // d log py / d u_l
      double du[5] = {0, 0, 0, 0, 0};  // index by cutpoint l=1..4
      if (y <= 4) du[y] += f(y) / py;
      if (y >= 2) du[y - 1] -= f(y - 1) / py;
      // chain to t and gap parameters: u_l = t + sum_{j<l} exp(g_j)
      for (int l = 1; l <= 4; ++l) {
        if (du[l] == 0.0) continue;
        grad[ann_at(a)] -= du[l];
        for (int j = 1; j < l; ++j)
          grad[ann_at(a) + static_cast<std::size_t>(j)] -=
              du[l] * std::exp(params[ann_at(a) + static_cast<std::size_t>(j)]);
      }
    }
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t j = 0; j < 3; ++j) {
        double gap = std::exp(params[ann_at(a) + 1 + j]);
        loss -= std::log(rate[j]) - rate[j] * gap;
        grad[ann_at(a) + 1 + j] += rate[j] * gap;
      }
    }
    if (iter == 0) fit.initial_loss = loss;
    fit.final_loss = loss;
    fit.iterations = iter + 1;
    if (iter > 0 && std::abs(loss - prev_loss) / (std::abs(prev_loss) + 1e-12) < cfg.tolerance) {
      fit.converged = true;
      break;
    }
    prev_loss = loss;
    adam.step(params, grad);
  }

  for (std::size_t i = 0; i < ni; ++i) fit.fixed_effects[items.names[i]] = {params[i]};
  for (std::size_t a = 0; a < na; ++a)
    fit.random_effects[annotators.names[a]] = ordinal_cutpoints(&params[ann_at(a)]);

  std::map<std::string, double> num;
  std::map<std::string, int> cnt;
  for (const auto& o : obs) {
    const std::size_t a = static_cast<std::size_t>(o.annotator);
    auto u = ordinal_cutpoints(&params[ann_at(a)]);
    double beta = params[static_cast<std::size_t>(o.item)];
    auto F = [&](int l) {
      if (l <= 0) return 0.0;
      if (l >= 5) return 1.0;
      return detail::sigmoid(u[static_cast<std::size_t>(l - 1)] - beta);
    };
    num[items.names[static_cast<std::size_t>(o.item)]] += F(o.level) - F(o.level - 1);
    cnt[items.names[static_cast<std::size_t>(o.item)]]++;
  }
  for (const auto& [item, c] : cnt)
    fit.confidences[item] = num[item] / static_cast<double>(c);
  return fit;
}

/// Category probabilities for one item/annotator under an ordinal fit.
inline std::vector<double> ordinal_category_probs(double beta, const std::vector<double>& cutpoints) {
  std::vector<double> p(5);
  double prev = 0.0;
  for (int l = 1; l <= 5; ++l) {
    double cur = l == 5 ? 1.0 : detail::sigmoid(cutpoints[static_cast<std::size_t>(l - 1)] - beta);
    p[static_cast<std::size_t>(l - 1)] = cur - prev;
    prev = cur;
  }
  return p;
}

/// Applicability normalization: an unweighted logistic MEM over binary
/// applicability responses, returning delta per item.
inline std::map<std::string, double> fit_applicability(const std::vector<BinaryResponse>& data,
                                                       const OptimizerConfig& cfg = {}) {
  std::vector<BinaryResponse> uniform = data;
  for (auto& r : uniform) r.weight = 1.0;
  MemFit fit = fit_logistic_mem(uniform, cfg);
  std::map<std::string, double> delta;
  for (const auto& [item, b] : fit.fixed_effects) delta[item] = b[0];
  return delta;
}

/// Protorole score combination: sigmoid(delta) * beta, pulling inapplicable
/// properties toward zero.
inline std::map<std::string, double> combine_protoroles(const std::map<std::string, double>& beta,
                                                        const std::map<std::string, double>& delta) {
  std::vector<std::string> missing;
  for (const auto& [k, v] : beta)
    if (!delta.count(k)) missing.push_back(k);
  for (const auto& [k, v] : delta)
    if (!beta.count(k)) missing.push_back(k);
  if (!missing.empty()) {
    std::string msg = "combine_protoroles key mismatch:";
    for (const auto& k : missing) msg += " " + k;
    throw std::invalid_argument(msg);
  }
  std::map<std::string, double> out;
  for (const auto& [k, b] : beta) out[k] = detail::sigmoid(delta.at(k)) * b;
  return out;
}

/// Supersense aggregation. Input betas/confidences are keyed by
/// (argument, sense); output is keyed by (argument, supersense): the max
/// over the argument's senses in that supersense, defaulting to the global
/// minimum beta (confidence 1) when no sense of the argument falls under it.
struct SupersenseResult {
  std::map<std::pair<std::string, std::string>, double> values;       // (arg, supersense)
  std::map<std::pair<std::string, std::string>, double> confidences;
};

inline SupersenseResult aggregate_supersenses(
    const std::map<std::pair<std::string, std::string>, double>& beta,
    const std::map<std::pair<std::string, std::string>, double>& confidence,
    const std::map<std::string, std::string>& sense_map) {
  SupersenseResult out;
  if (beta.empty()) return out;

  double global_min = 1e300;
  std::set<std::string> args;
  std::set<std::string> supersenses;
  for (const auto& [key, b] : beta) {
    auto it = sense_map.find(key.second);
    if (it == sense_map.end())
      throw std::invalid_argument("sense '" + key.second + "' missing from supersense map");
    global_min = std::min(global_min, b);
    args.insert(key.first);
    supersenses.insert(it->second);
  }
  for (const auto& [sense, ss] : sense_map) supersenses.insert(ss);

  for (const auto& arg : args) {
    for (const auto& ss : supersenses) {
      bool any = false;
      double best_b = -1e300, best_c = -1e300;
      for (const auto& [key, b] : beta) {
        if (key.first != arg || sense_map.at(key.second) != ss) continue;
        any = true;
        best_b = std::max(best_b, b);
        auto cit = confidence.find(key);
        best_c = std::max(best_c, cit == confidence.end() ? 0.0 : cit->second);
      }
      if (any) {
        out.values[{arg, ss}] = best_b;
        out.confidences[{arg, ss}] = best_c;
      } else {
        out.values[{arg, ss}] = global_min;
        out.confidences[{arg, ss}] = 1.0;
      }
    }
  }
  return out;
}

/// Z-scores a group of values in place (population standard deviation).
/// Single-item or zero-variance groups are centered at 0 and reported.
inline bool zscore_group(std::map<std::string, double>& values) {
  if (values.empty()) return true;
  double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (const auto& [k, v] : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (const auto& [k, v] : values) ss += (v - mean) * (v - mean);
  double sd = std::sqrt(ss / n);
  if (values.size() < 2 || sd == 0.0) {
    for (auto& [k, v] : values) v = 0.0;
    return false;  // degenerate: centered at zero, caller should warn
  }
  for (auto& [k, v] : values) v = (v - mean) / sd;
  return true;
}

}  // namespace udsg
