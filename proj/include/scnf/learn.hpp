#pragma once

/// @file
/// Structure and parameter learning of stochastic CNF rules from observed
/// transitions.
///
/// Per node, previous states are split into those that only ever led to
/// False (sF), only to True (sT), or to both (sC). A deterministic CNF is
/// learned that is False on sF and True on sT and sC; a second CNF, False on
/// sC and True on sT, becomes the stochastic part whose activation
/// probabilities are fitted by maximum likelihood over sC.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "scnf/core.hpp"
#include "scnf/optimize.hpp"

namespace scnf {

using Trajectory = std::vector<State>;
using Dataset = std::vector<Trajectory>;

struct TransitionList {
  std::size_t n = 0;
  std::vector<std::pair<State, State>> pairs;
};

struct NodeTransitionList {
  std::vector<std::pair<State, bool>> pairs;
};

struct OutcomeCounts {
  long n_false = 0;
  long n_true = 0;
};

/// Distinct previous states in order of first appearance.
struct StatePartition {
  std::vector<State> s_false;
  std::vector<State> s_true;
  std::vector<State> s_conflict;
  std::vector<OutcomeCounts> conflict_counts;  // parallel to s_conflict
};

TransitionList build_transition_list(const Dataset& series);
NodeTransitionList node_transitions(const TransitionList& list, NodeId node);
StatePartition partition_states(const NodeTransitionList& list);

/// Candidate-literal order: !x1, !x2, ..., !xN, x1, ..., xN. Score ties in
/// literal selection go to the earliest literal in this order.
bool selection_before(Literal a, Literal b);
std::vector<Literal> default_literals(std::size_t n);
/// Literals over the allowed nodes only, in selection order.
std::vector<Literal> literals_for(std::span<const NodeId> nodes);

struct LiteralScore {
  Literal literal;
  std::size_t positive = 0;  // states of hT the literal makes True
  std::size_t negative = 0;  // states of hF the literal makes True
  double score = 0.0;
};

/// One scoring round of the disjunction search.
struct DisjunctionStep {
  Clause partial;
  std::size_t h_false = 0;
  std::size_t h_true = 0;
  std::vector<LiteralScore> scores;
  Literal selected;
};
using DisjunctionTrace = std::vector<DisjunctionStep>;

/// Greedy backtracking search for a clause extending `partial` that is True
/// on every state of hT and False on at least one state of hF. Returns
/// nullopt when `lits` admits no such extension.
std::optional<Clause> disjunction_learn(std::span<const State> h_false,
                                        std::span<const State> h_true,
                                        std::vector<Literal> lits, const Clause& partial = {},
                                        DisjunctionTrace* trace = nullptr);

/// CNF that is False on every state of hF and True on every state of hT.
/// Empty hF gives the empty CNF; empty hT with nonempty hF gives the single
/// empty clause. Throws if the sets intersect or no clause can be built.
std::vector<Clause> cnf_logic_learn(std::span<const State> h_false, std::span<const State> h_true,
                                    const std::vector<Literal>& lits,
                                    DisjunctionTrace* trace = nullptr);

inline constexpr std::size_t kInclusionExclusionGuard = 25;

/// Probability that the rule evaluates False at `s`: 1 if a deterministic
/// clause is falsified, else 1 - prod(1 - p_j) over the falsified stochastic
/// clauses. Throws std::length_error if more than `guard` are falsified.
double prob_false(const ScnfRule& rule, const State& s,
                  std::size_t guard = kInclusionExclusionGuard);
/// Same quantity by explicit inclusion-exclusion over subsets.
double prob_false_inclusion_exclusion(std::span<const double> p,
                                      std::size_t guard = kInclusionExclusionGuard);

struct NodeReport {
  std::size_t s_false = 0;
  std::size_t s_true = 0;
  std::size_t s_conflict = 0;
  std::size_t deterministic_clauses = 0;
  std::size_t stochastic_clauses = 0;
  double neg_log_lik = 0.0;
  double residual_norm = 0.0;
  double lambda = 0.0;
};

struct LearnOptions {
  FitOptions fit;
};

struct LearnedRule {
  ScnfRule rule;
  NodeReport report;
};

LearnedRule scnf_learn(const NodeTransitionList& list, const std::vector<Literal>& lits,
                       const LearnOptions& options = {});

/// Per node, the nodes whose literals may appear in its rule; nullopt means
/// unrestricted. An empty filter vector leaves every node unrestricted.
using LiteralFilter = std::vector<std::optional<std::vector<NodeId>>>;

struct LearnResult {
  ScnfNetwork network;
  std::vector<NodeReport> nodes;
};

LearnResult scnfn_learn(const TransitionList& list, std::size_t n,
                        const LiteralFilter& filter = {}, const LearnOptions& options = {},
                        int workers = 1);

/// Log-likelihood of a node's transitions under the rule, with P_F clamped
/// to [kLogClamp, 1 - kLogClamp].
double node_log_likelihood(const ScnfRule& rule, const NodeTransitionList& list);

}  // namespace scnf
