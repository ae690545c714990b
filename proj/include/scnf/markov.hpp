#pragma once

/// @file
/// Exact Markov-chain analysis for small networks (n <= kMaxExactNodes):
/// dense transition matrices, k-step probabilities and the weighted state
/// transition diagram. Row mu, column lambda holds P(mu -> lambda), with
/// states indexed x1-most-significant.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scnf/core.hpp"

namespace scnf {

struct TransitionMatrix {
  std::size_t n = 0;
  Eigen::MatrixXd m;

  std::size_t states() const { return std::size_t{1} << n; }
  /// Throws std::logic_error unless entries are in [0, 1] and rows sum to 1.
  void validate(double tolerance = 1e-9) const;
};

/// Joint successor distribution of independent nodes with the given
/// per-node probabilities of being True.
Eigen::RowVectorXd product_distribution(const std::vector<double>& true_probs);

TransitionMatrix pbn_transition_matrix(const Pbn& pbn, int workers = 1);
TransitionMatrix scnf_transition_matrix(const ScnfNetwork& net, int workers = 1);

TransitionMatrix k_step(const TransitionMatrix& tm, unsigned k);
/// Row of the k-step matrix for one start state (k vector-matrix products).
Eigen::RowVectorXd k_step_row(const TransitionMatrix& tm, const State& from, unsigned k);

double node_true_marginal(const TransitionMatrix& tm, const State& from, unsigned k, NodeId node);
std::vector<double> node_true_marginals(const TransitionMatrix& tm, const State& from, unsigned k);

struct DiagramEdge {
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  double weight = 0.0;
};

struct TransitionDiagram {
  std::size_t n = 0;
  std::vector<DiagramEdge> edges;
};

TransitionDiagram transition_diagram(const TransitionMatrix& tm, double threshold = 1e-12);

/// DOT graph: vertices labelled by bit strings, edges by weight (4 decimals).
std::string to_dot(const TransitionDiagram& diagram);
/// CSV with a "from" column and one column per successor state bit string.
std::string to_csv(const TransitionMatrix& tm);

}  // namespace scnf
