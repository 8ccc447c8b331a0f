#pragma once

// Independent oracles used by the unit and acceptance suites. These
// deliberately share no code with the implementation paths they check.

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "udsg/norm_models.hpp"
#include "udsg/query.hpp"

namespace oracles {

// ---------------------------------------------------------------------------
// Brute-force query matcher: enumerates every assignment of a group's
// variables over the full term universe and tests each pattern and filter,
// instead of index-driven joins.
// ---------------------------------------------------------------------------

inline std::vector<udsg::Term> term_universe(const udsg::TripleView& view) {
  std::set<udsg::Term> terms;
  for (const auto& t : view.triples()) {
    terms.insert(udsg::Term::resource(t.subject));
    terms.insert(udsg::Term::resource(t.predicate));
    terms.insert(t.object);
  }
  return {terms.begin(), terms.end()};
}

/// Distinct triples as a set, for O(log n) holds-checks during enumeration.
inline std::set<udsg::Triple> triple_set(const udsg::TripleView& view) {
  return {view.triples().begin(), view.triples().end()};
}

inline bool bf_pattern_holds(const udsg::TriplePattern& p, const std::set<udsg::Triple>& triples,
                             const udsg::Binding& binding) {
  // Resolve subject and predicate to resource text; non-resource bindings
  // can never occupy those positions.
  std::string s, pr;
  if (p.subject.is_var) {
    const udsg::Term& t = binding.at(p.subject.name);
    if (t.kind != udsg::Term::Kind::Resource) return false;
    s = t.text;
  } else {
    s = p.subject.name;
  }
  if (p.predicate.is_var) {
    const udsg::Term& t = binding.at(p.predicate.name);
    if (t.kind != udsg::Term::Kind::Resource) return false;
    pr = t.text;
  } else {
    pr = p.predicate.name;
  }
  if (p.object.is_var) return triples.count({s, pr, binding.at(p.object.name)}) > 0;
  // A constant object matches either a resource or a string literal.
  return triples.count({s, pr, udsg::Term::resource(p.object.name)}) > 0 ||
         triples.count({s, pr, udsg::Term::str(p.object.name)}) > 0;
}

inline bool bf_filter_passes(const udsg::FilterExpr& e, const udsg::Binding& binding) {
  using K = udsg::FilterExpr::Kind;
  if (e.kind == K::And)
    return bf_filter_passes(e.children[0], binding) && bf_filter_passes(e.children[1], binding);
  if (e.kind == K::Or)
    return bf_filter_passes(e.children[0], binding) || bf_filter_passes(e.children[1], binding);
  auto it = binding.find(e.var);
  if (it == binding.end()) return false;
  const udsg::Term& t = it->second;
  auto apply = [&](int cmp) {
    if (e.op == "<") return cmp < 0;
    if (e.op == ">") return cmp > 0;
    if (e.op == "=") return cmp == 0;
    if (e.op == "!=") return cmp != 0;
    if (e.op == ">=") return cmp >= 0;
    return cmp <= 0;
  };
  if (e.rhs_is_number) {
    if (t.kind != udsg::Term::Kind::Num) throw udsg::QueryTypeError(e.var);
    int cmp = t.number < e.rhs_number ? -1 : (t.number > e.rhs_number ? 1 : 0);
    return apply(cmp);
  }
  if (t.kind == udsg::Term::Kind::Num) throw udsg::QueryTypeError(e.var);
  int c = t.text.compare(e.rhs_string);
  return apply(c < 0 ? -1 : (c > 0 ? 1 : 0));
}

inline std::vector<udsg::Binding> bf_eval_group(const udsg::Group& g,
                                                const std::set<udsg::Triple>& triples,
                                                const udsg::Binding& initial,
                                                const std::vector<udsg::Term>& universe) {
  std::vector<std::string> free_vars;
  {
    std::set<std::string> seen;
    for (const auto& p : g.patterns)
      for (const auto* t : {&p.subject, &p.predicate, &p.object})
        if (t->is_var && !initial.count(t->name) && seen.insert(t->name).second)
          free_vars.push_back(t->name);
  }

  std::vector<udsg::Binding> rows;
  if (!free_vars.empty() && universe.empty()) return rows;
  std::vector<std::size_t> odometer(free_vars.size(), 0);
  while (true) {
    udsg::Binding b = initial;
    for (std::size_t i = 0; i < free_vars.size(); ++i) b[free_vars[i]] = universe[odometer[i]];
    bool ok = true;
    for (const auto& p : g.patterns)
      if (!bf_pattern_holds(p, triples, b)) {
        ok = false;
        break;
      }
    if (ok) {
      for (const auto& f : g.filters)
        if (!bf_filter_passes(f, b)) {
          ok = false;
          break;
        }
    }
    if (ok) rows.push_back(std::move(b));

    if (free_vars.empty()) break;
    std::size_t i = 0;
    while (i < odometer.size()) {
      if (++odometer[i] < universe.size()) break;
      odometer[i] = 0;
      ++i;
    }
    if (i == odometer.size()) break;
  }

  for (const auto& branches : g.unions) {
    std::vector<udsg::Binding> next;
    for (const auto& row : rows)
      for (const auto& branch : branches) {
        auto sub = bf_eval_group(branch, triples, row, universe);
        next.insert(next.end(), sub.begin(), sub.end());
      }
    rows = std::move(next);
  }
  return rows;
}

inline udsg::BindingSet brute_force_evaluate(const udsg::QueryAst& q,
                                             const udsg::TripleView& view,
                                             bool distinct = false) {
  auto universe = term_universe(view);
  auto triples = triple_set(view);
  auto full = bf_eval_group(q.where, triples, {}, universe);
  udsg::BindingSet out;
  for (const auto& row : full) {
    udsg::Binding projected;
    bool complete = true;
    for (const auto& v : q.select_vars) {
      auto it = row.find(v);
      if (it == row.end()) {
        complete = false;
        break;
      }
      projected[v] = it->second;
    }
    if (complete) out.rows.push_back(std::move(projected));
  }
  std::sort(out.rows.begin(), out.rows.end());
  if (distinct) out.rows.erase(std::unique(out.rows.begin(), out.rows.end()), out.rows.end());
  return out;
}

// ---------------------------------------------------------------------------
// Grid-search oracle for the logistic MEM: cyclic per-parameter grid search
// over [-4, 4], alternating with variance re-estimation, entirely separate
// from the gradient path.
// ---------------------------------------------------------------------------

struct GridLogisticResult {
  std::map<std::string, double> beta;
  std::map<std::string, double> u;
};

inline GridLogisticResult grid_fit_logistic(const std::vector<udsg::BinaryResponse>& data,
                                            double step = 0.0125, int passes = 200) {
  std::vector<std::string> items, annotators;
  {
    std::set<std::string> is, as;
    for (const auto& r : data) {
      is.insert(r.item);
      as.insert(r.annotator);
    }
    items.assign(is.begin(), is.end());
    annotators.assign(as.begin(), as.end());
  }
  std::map<std::string, double> beta, u;
  for (const auto& i : items) beta[i] = 0.0;
  for (const auto& a : annotators) u[a] = 0.0;

  auto loglik = [&](double var) {
    double ll = 0.0;
    for (const auto& r : data) {
      double p = 1.0 / (1.0 + std::exp(-(beta[r.item] + u[r.annotator])));
      double lik = r.value ? p : 1.0 - p;
      ll += r.weight * std::log(std::max(lik, 1e-300));
    }
    for (const auto& [a, ua] : u)
      ll += -0.5 * std::log(2.0 * 3.14159265358979323846 * var) - ua * ua / (2.0 * var);
    return ll;
  };

  double prev_best = -1e300;
  for (int pass = 0; pass < passes; ++pass) {
    std::vector<double> us;
    for (const auto& [a, ua] : u) us.push_back(ua);
    double mean = 0.0, ss = 0.0;
    for (double x : us) mean += x;
    mean /= static_cast<double>(us.size());
    for (double x : us) ss += (x - mean) * (x - mean);
    double var = std::max(ss / static_cast<double>(us.size()), udsg::kVarianceFloor);

    auto scan = [&](double& param) {
      double best_v = param, best_ll = -1e300;
      for (double v = -4.0; v <= 4.0 + 1e-12; v += step) {
        param = v;
        double ll = loglik(var);
        if (ll > best_ll) {
          best_ll = ll;
          best_v = v;
        }
      }
      param = best_v;
      return best_ll;
    };
    double best = -1e300;
    for (const auto& i : items) best = scan(beta[i]);
    for (const auto& a : annotators) best = scan(u[a]);
    if (std::abs(best - prev_best) < 1e-12) break;
    prev_best = best;
  }
  return {beta, u};
}

}  // namespace oracles
