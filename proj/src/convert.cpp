#include "scnf/convert.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace scnf {

namespace {

// Subsets of {0..m-1} ordered by size, then lexicographically.
std::vector<std::vector<std::size_t>> ordered_subsets(std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(std::size_t{1} << m);
  for (std::size_t size = 0; size <= m; ++size) {
    std::vector<std::size_t> comb(size);
    for (std::size_t k = 0; k < size; ++k) comb[k] = k;
    while (true) {
      out.push_back(comb);
      // advance to the next combination
      std::size_t k = size;
      while (k > 0 && comb[k - 1] == m - size + k - 1) --k;
      if (k == 0) break;
      ++comb[k - 1];
      for (std::size_t t = k; t < size; ++t) comb[t] = comb[t - 1] + 1;
    }
  }
  return out;
}

void collect_nodes(const Clause& c, std::vector<NodeId>& nodes) {
  for (auto l : c.literals()) nodes.push_back(l.node);
}

}  // namespace

Pbn scnfn_to_pbn(const ScnfNetwork& net, std::size_t max_stochastic) {
  const std::size_t n = net.size();
  std::vector<std::vector<WeightedFunction>> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& rule = net.rule(i);
    const auto& theta = rule.stochastic();
    if (theta.size() > max_stochastic)
      throw std::length_error("node x" + std::to_string(i + 1) + " has " +
                              std::to_string(theta.size()) + " stochastic clauses, limit is " +
                              std::to_string(max_stochastic));
    std::vector<NodeId> base_nodes;
    for (const auto& c : rule.deterministic()) collect_nodes(c, base_nodes);

    for (const auto& subset : ordered_subsets(theta.size())) {
      std::vector<NodeId> parents = base_nodes;
      std::vector<Clause> clauses = rule.deterministic();
      for (auto j : subset) {
        collect_nodes(theta[j].clause, parents);
        clauses.push_back(theta[j].clause);
      }
      std::sort(parents.begin(), parents.end());
      parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
      if (parents.size() > kMaxParents)
        throw std::length_error("converted function of x" + std::to_string(i + 1) + " reads " +
                                std::to_string(parents.size()) + " nodes, cap is " +
                                std::to_string(kMaxParents));

      std::vector<bool> table(std::size_t{1} << parents.size());
      State s(n);
      for (std::size_t idx = 0; idx < table.size(); ++idx) {
        for (std::size_t k = 0; k < parents.size(); ++k)
          s.set(parents[k], (idx >> (parents.size() - 1 - k)) & 1u);
        table[idx] = eval_cnf(clauses, s);
      }

      double p = 1.0;
      std::size_t next = 0;
      for (std::size_t j = 0; j < theta.size(); ++j) {
        const bool in = next < subset.size() && subset[next] == j;
        if (in) ++next;
        p *= in ? theta[j].p : 1.0 - theta[j].p;
      }
      nodes[i].push_back({BooleanFunction(std::move(parents), std::move(table)), p});
    }
  }
  return Pbn(n, std::move(nodes));
}

ScnfNetwork pbn_to_scnfn(const Pbn& pbn) {
  const std::size_t n = pbn.size();
  if (n > kMaxExactNodes)
    throw std::length_error("PBN to SCNF conversion limited to " + std::to_string(kMaxExactNodes) +
                            " nodes");
  const std::size_t states = std::size_t{1} << n;
  std::vector<ScnfRule> rules;
  rules.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Clause> deterministic;
    std::vector<StochasticClause> stochastic;
    for (std::size_t idx = 0; idx < states; ++idx) {
      const State s = State::from_index(idx, n);
      double q = 1.0 - pbn_true_probability(pbn, i, s);
      // Selection probabilities sum to 1 only up to rounding.
      if (std::abs(q) < 1e-12) q = 0.0;
      if (std::abs(1.0 - q) < 1e-12) q = 1.0;
      if (q == 0.0) continue;
      std::vector<Literal> lits(n);
      for (std::size_t j = 0; j < n; ++j) lits[j] = {static_cast<NodeId>(j), s[j]};
      Clause c(std::move(lits));
      if (q == 1.0) deterministic.push_back(std::move(c));
      else stochastic.push_back({std::move(c), q});
    }
    rules.emplace_back(std::move(deterministic), std::move(stochastic));
  }
  return ScnfNetwork(n, std::move(rules));
}

}  // namespace scnf
