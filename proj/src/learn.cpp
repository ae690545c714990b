#include "scnf/learn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "scnf/parallel.hpp"

namespace scnf {

// ---------------------------------------------------------------- transitions

TransitionList build_transition_list(const Dataset& series) {
  if (series.empty()) throw std::invalid_argument("no time series given");
  TransitionList out;
  out.n = series.front().empty() ? 0 : series.front().front().size();
  for (const auto& traj : series) {
    if (traj.size() < 2) throw std::invalid_argument("time series needs at least two states");
    for (const auto& s : traj)
      if (s.size() != out.n) throw std::invalid_argument("state width mismatch in time series");
    for (std::size_t t = 0; t + 1 < traj.size(); ++t) out.pairs.emplace_back(traj[t], traj[t + 1]);
  }
  return out;
}

NodeTransitionList node_transitions(const TransitionList& list, NodeId node) {
  if (list.n && node >= list.n) throw std::out_of_range("node index out of range");
  NodeTransitionList out;
  out.pairs.reserve(list.pairs.size());
  for (const auto& [prev, next] : list.pairs) out.pairs.emplace_back(prev, next.at(node));
  return out;
}

StatePartition partition_states(const NodeTransitionList& list) {
  std::vector<State> order;
  std::unordered_map<State, OutcomeCounts, StateHash> counts;
  for (const auto& [prev, value] : list.pairs) {
    auto [it, fresh] = counts.try_emplace(prev);
    if (fresh) order.push_back(prev);
    (value ? it->second.n_true : it->second.n_false) += 1;
  }
  StatePartition part;
  for (const auto& s : order) {
    const auto& c = counts.at(s);
    if (c.n_true && c.n_false) {
      part.s_conflict.push_back(s);
      part.conflict_counts.push_back(c);
    } else if (c.n_true) {
      part.s_true.push_back(s);
    } else {
      part.s_false.push_back(s);
    }
  }
  return part;
}

// ---------------------------------------------------------------- literals

bool selection_before(Literal a, Literal b) {
  if (a.negated != b.negated) return a.negated;
  return a.node < b.node;
}

std::vector<Literal> default_literals(std::size_t n) {
  std::vector<Literal> lits;
  lits.reserve(2 * n);
  for (NodeId i = 0; i < n; ++i) lits.push_back({i, true});
  for (NodeId i = 0; i < n; ++i) lits.push_back({i, false});
  return lits;
}

std::vector<Literal> literals_for(std::span<const NodeId> nodes) {
  std::vector<Literal> lits;
  for (auto i : nodes) {
    lits.push_back({i, true});
    lits.push_back({i, false});
  }
  std::sort(lits.begin(), lits.end(), selection_before);
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  return lits;
}

// ---------------------------------------------------------------- disjunction search

namespace {

using StateRefs = std::vector<const State*>;

std::optional<Clause> search_disjunction(const StateRefs& h_false, const StateRefs& h_true,
                                         std::vector<Literal> lits, const Clause& partial,
                                         DisjunctionTrace* trace) {
  const auto nf = static_cast<long long>(h_false.size());
  const auto nt = static_cast<long long>(h_true.size());
  while (!lits.empty()) {
    // Scores share the denominator |hT||hF|, so compare exact numerators.
    std::size_t best = 0;
    long long best_num = 0;
    std::size_t best_pos = 0, best_neg = 0;
    std::vector<LiteralScore> scores;
    if (trace) scores.reserve(lits.size());
    for (std::size_t k = 0; k < lits.size(); ++k) {
      std::size_t pos = 0, neg = 0;
      for (const State* s : h_true) pos += eval_literal(lits[k], *s);
      for (const State* s : h_false) neg += eval_literal(lits[k], *s);
      const long long num = nf ? static_cast<long long>(pos) * nf - static_cast<long long>(neg) * nt
                               : static_cast<long long>(pos);
      if (k == 0 || num > best_num) {
        best = k;
        best_num = num;
        best_pos = pos;
        best_neg = neg;
      }
      if (trace) {
        const double sc = static_cast<double>(pos) / static_cast<double>(nt) -
                          (nf ? static_cast<double>(neg) / static_cast<double>(nf) : 0.0);
        scores.push_back({lits[k], pos, neg, sc});
      }
    }
    const Literal chosen = lits[best];
    if (trace) trace->push_back({partial, h_false.size(), h_true.size(), std::move(scores), chosen});

    if (best_pos == 0) return std::nullopt;
    if (nf && static_cast<long long>(best_neg) == nf) {
      lits.erase(lits.begin() + static_cast<std::ptrdiff_t>(best));
      continue;
    }
    if (static_cast<long long>(best_pos) == nt) return partial.with(chosen);

    StateRefs rest_true, rest_false;
    for (const State* s : h_true)
      if (!eval_literal(chosen, *s)) rest_true.push_back(s);
    for (const State* s : h_false)
      if (!eval_literal(chosen, *s)) rest_false.push_back(s);
    std::vector<Literal> narrowed;
    narrowed.reserve(lits.size());
    for (auto l : lits)
      if (l.node != chosen.node) narrowed.push_back(l);
    if (auto found = search_disjunction(rest_false, rest_true, std::move(narrowed),
                                        partial.with(chosen), trace)) {
      return found;
    }
    // Backtrack: retry without the chosen literal.
    lits.erase(lits.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return std::nullopt;
}

StateRefs refs(std::span<const State> states) {
  StateRefs out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(&s);
  return out;
}

}  // namespace

std::optional<Clause> disjunction_learn(std::span<const State> h_false,
                                        std::span<const State> h_true,
                                        std::vector<Literal> lits, const Clause& partial,
                                        DisjunctionTrace* trace) {
  if (h_true.empty()) throw std::invalid_argument("disjunction search needs a nonempty hT");
  std::sort(lits.begin(), lits.end(), selection_before);
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::erase_if(lits, [&](Literal l) { return partial.contains(l) || partial.contains(l.negation()); });
  return search_disjunction(refs(h_false), refs(h_true), std::move(lits), partial, trace);
}

std::vector<Clause> cnf_logic_learn(std::span<const State> h_false, std::span<const State> h_true,
                                    const std::vector<Literal>& lits, DisjunctionTrace* trace) {
  std::unordered_set<State, StateHash> positives(h_true.begin(), h_true.end());
  for (const auto& s : h_false)
    if (positives.count(s))
      throw std::invalid_argument("state " + s.to_string() + " is both a negative and a positive example");
  if (h_false.empty()) return {};
  if (h_true.empty()) return {Clause{}};

  std::vector<Literal> ordered = lits;
  std::sort(ordered.begin(), ordered.end(), selection_before);
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  const StateRefs positive_refs = refs(h_true);
  StateRefs remaining = refs(h_false);
  std::vector<Clause> cnf;
  while (!remaining.empty()) {
    auto clause = search_disjunction(remaining, positive_refs, ordered, Clause{}, trace);
    if (!clause)
      throw std::runtime_error("no clause over the available literals separates the examples");
    StateRefs next;
    for (const State* s : remaining)
      if (eval_clause(*clause, *s)) next.push_back(s);
    if (next.size() >= remaining.size())
      throw std::logic_error("learned clause falsifies no remaining negative example");
    remaining.swap(next);
    cnf.push_back(std::move(*clause));
  }
  return cnf;
}

// ---------------------------------------------------------------- probabilities

double prob_false(const ScnfRule& rule, const State& s, std::size_t guard) {
  for (const auto& c : rule.deterministic())
    if (!eval_clause(c, s)) return 1.0;
  double keep = 1.0;
  std::size_t falsified = 0;
  for (const auto& sc : rule.stochastic()) {
    if (eval_clause(sc.clause, s)) continue;
    if (++falsified > guard)
      throw std::length_error("more than " + std::to_string(guard) +
                              " falsifiable stochastic clauses at state " + s.to_string());
    keep *= 1.0 - sc.p;
  }
  return 1.0 - keep;
}

double prob_false_inclusion_exclusion(std::span<const double> p, std::size_t guard) {
  const std::size_t m = p.size();
  if (m > guard) throw std::length_error("inclusion-exclusion term count guard exceeded");
  double total = 0.0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    double prod = 1.0;
    for (std::size_t j = 0; j < m; ++j)
      if (mask >> j & 1u) prod *= p[j];
    total += (__builtin_popcountll(mask) % 2 ? 1.0 : -1.0) * prod;
  }
  return total;
}

// ---------------------------------------------------------------- rule learning

LearnedRule scnf_learn(const NodeTransitionList& list, const std::vector<Literal>& lits,
                       const LearnOptions& options) {
  const StatePartition part = partition_states(list);
  LearnedRule out;
  auto& rep = out.report;
  rep.s_false = part.s_false.size();
  rep.s_true = part.s_true.size();
  rep.s_conflict = part.s_conflict.size();

  std::vector<State> positives = part.s_true;
  positives.insert(positives.end(), part.s_conflict.begin(), part.s_conflict.end());
  auto deterministic = cnf_logic_learn(part.s_false, positives, lits);
  auto stochastic_logic = cnf_logic_learn(part.s_conflict, part.s_true, lits);

  std::vector<StochasticClause> stochastic;
  if (!stochastic_logic.empty()) {
    FitProblem prob;
    prob.clause_count = stochastic_logic.size();
    for (std::size_t l = 0; l < part.s_conflict.size(); ++l) {
      ConflictTerm term;
      for (std::size_t j = 0; j < stochastic_logic.size(); ++j)
        if (!eval_clause(stochastic_logic[j], part.s_conflict[l])) term.clauses.push_back(j);
      term.n_false = part.conflict_counts[l].n_false;
      term.n_true = part.conflict_counts[l].n_true;
      prob.terms.push_back(std::move(term));
    }
    const FitResult fit = fit_parameters(prob, options.fit);
    rep.neg_log_lik = fit.neg_log_lik;
    rep.residual_norm = fit.residual_norm;
    rep.lambda = fit.lambda;
    for (std::size_t j = 0; j < stochastic_logic.size(); ++j)
      stochastic.push_back({std::move(stochastic_logic[j]), fit.p[j]});
  }
  out.rule = ScnfRule(std::move(deterministic), std::move(stochastic));
  rep.deterministic_clauses = out.rule.deterministic().size();
  rep.stochastic_clauses = out.rule.stochastic().size();
  return out;
}

LearnResult scnfn_learn(const TransitionList& list, std::size_t n, const LiteralFilter& filter,
                        const LearnOptions& options, int workers) {
  if (list.n != n) throw std::invalid_argument("transition width does not match node count");
  if (!filter.empty() && filter.size() != n)
    throw std::invalid_argument("literal filter must have one entry per node");
  const auto all = default_literals(n);
  std::vector<LearnedRule> learned(n);
  parallel_for(n, workers, [&](std::size_t i) {
    const auto node_list = node_transitions(list, static_cast<NodeId>(i));
    if (!filter.empty() && filter[i]) {
      for (auto j : *filter[i])
        if (j >= n) throw std::invalid_argument("literal filter references a node outside the network");
      learned[i] = scnf_learn(node_list, literals_for(*filter[i]), options);
    } else {
      learned[i] = scnf_learn(node_list, all, options);
    }
  });
  LearnResult result;
  std::vector<ScnfRule> rules;
  for (auto& l : learned) {
    rules.push_back(std::move(l.rule));
    result.nodes.push_back(l.report);
  }
  result.network = ScnfNetwork(n, std::move(rules));
  return result;
}

double node_log_likelihood(const ScnfRule& rule, const NodeTransitionList& list) {
  double ll = 0.0;
  for (const auto& [prev, value] : list.pairs) {
    const double pf = std::clamp(prob_false(rule, prev, std::numeric_limits<std::size_t>::max()),
                                 kLogClamp, 1.0 - kLogClamp);
    ll += value ? std::log(1.0 - pf) : std::log(pf);
  }
  return ll;
}

}  // namespace scnf
