#pragma once

// Worked examples shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "scnf/scnf.hpp"

namespace scnf::fixtures {

// Truth table over `parents` from a predicate on the parents' values.
inline BooleanFunction table_of(std::vector<NodeId> parents,
                                const std::function<bool(const std::vector<bool>&)>& f) {
  const std::size_t k = parents.size();
  std::vector<bool> table(std::size_t{1} << k);
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    std::vector<bool> v(k);
    for (std::size_t b = 0; b < k; ++b) v[b] = (idx >> (k - 1 - b)) & 1u;
    table[idx] = f(v);
  }
  return BooleanFunction(std::move(parents), std::move(table));
}

// Three-node PBN of the first worked example.
inline Pbn example1_pbn() {
  std::vector<std::vector<WeightedFunction>> nodes(3);
  nodes[0] = {{table_of({0, 1, 2}, [](auto& v) { return v[1] || (!v[0] && v[2]); }), 0.6},
              {table_of({0, 1}, [](auto& v) { return v[0] || v[1]; }), 0.4}};
  nodes[1] = {{table_of({0, 1}, [](auto& v) { return v[1] && !v[0]; }), 1.0}};
  nodes[2] = {{table_of({0, 2}, [](auto& v) { return v[0] || v[1]; }), 0.8},
              {table_of({2}, [](auto& v) { return !v[0]; }), 0.2}};
  return Pbn(3, std::move(nodes));
}

// Prob(x_i' = T) per previous state 000..111, one row per node.
inline const std::vector<std::vector<double>>& example1_true_probs() {
  static const std::vector<std::vector<double>> t{
      {0, 0.6, 1, 1, 0.4, 0.4, 1, 1},
      {0, 0, 1, 1, 0, 0, 0, 0},
      {0.2, 0.8, 0.2, 0.8, 1, 0.8, 1, 0.8}};
  return t;
}

inline const std::vector<std::string>& example2_names() {
  static const std::vector<std::string> names{"A", "B", "C", "D", "E", "F", "G", "H", "I", "J"};
  return names;
}

// Ten-node series of the second worked example, one trajectory of 12 states.
inline Dataset example2_series() {
  const std::vector<std::string> rows{
      "TFTTTFTTTF", "FTTTFFFFFT", "FTFTTFFFFT", "TTFFTTFFFF", "FTFFTTFFFF", "TTFFTTFFFT",
      "FTFFFTFFFF", "FFTTTFTTTT", "TFTTTFTTTF", "TFTTFFTTTF", "TFTTTFTTTF", "FFTTFFTTTT"};
  Trajectory t;
  for (const auto& r : rows) t.push_back(State::from_string(r));
  return {t};
}

}  // namespace scnf::fixtures

namespace scnf::fixtures {

// Random SCNF network for property tests: per node up to `max_clauses`
// clauses of width 1..3, each stochastic with probability 1/2.
inline ScnfNetwork random_scnfn(std::size_t n, StreamRng& rng, std::size_t max_clauses = 4) {
  std::vector<ScnfRule> rules;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Clause> det;
    std::vector<StochasticClause> sto;
    const auto count = rng.below(max_clauses + 1);
    for (std::uint64_t c = 0; c < count; ++c) {
      std::vector<Literal> lits;
      const auto width = 1 + rng.below(std::min<std::size_t>(3, n));
      for (std::uint64_t w = 0; w < width; ++w) {
        const Literal l{static_cast<NodeId>(rng.below(n)), rng.bernoulli(0.5)};
        if (std::find(lits.begin(), lits.end(), l.negation()) == lits.end()) lits.push_back(l);
      }
      Clause clause(lits);
      const bool dup = std::find(det.begin(), det.end(), clause) != det.end() ||
                       std::any_of(sto.begin(), sto.end(), [&](auto& s) { return s.clause == clause; });
      if (dup) continue;
      if (rng.bernoulli(0.5))
        sto.push_back({clause, 0.05 + 0.9 * rng.uniform()});
      else
        det.push_back(clause);
    }
    rules.emplace_back(std::move(det), std::move(sto));
  }
  return ScnfNetwork(n, std::move(rules));
}

// Brute-force sum over every combination of constituent functions of the
// selection weight times that deterministic network's 0/1 matrix.
inline Eigen::MatrixXd constituent_sum(const Pbn& pbn) {
  const std::size_t n = pbn.size(), S = std::size_t{1} << n;
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(S), static_cast<Eigen::Index>(S));
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) w *= pbn.node(i)[pick[i]].p;
    for (std::size_t from = 0; from < S; ++from) {
      const auto s = State::from_index(from, n);
      State next(n);
      for (std::size_t i = 0; i < n; ++i)
        next.set(i, eval_boolean_function(pbn.node(i)[pick[i]].function, s));
      total(static_cast<Eigen::Index>(from), static_cast<Eigen::Index>(next.index())) += w;
    }
    std::size_t i = 0;
    while (i < n && ++pick[i] == pbn.node(i).size()) pick[i++] = 0;
    if (i == n) break;
  }
  return total;
}

}  // namespace scnf::fixtures
