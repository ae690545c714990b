#pragma once

/// @file
/// Prediction fidelity between a reference and a learned model, and the
/// k-fold cross-validation harness used when learning.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "scnf/learn.hpp"
#include "scnf/simulate.hpp"

namespace scnf {

struct FidelityPoint {
  unsigned k = 0;
  double delta_bar = 0.0;  // mean |P_T - P^_T| over nodes and initial states
  double sigma = 0.0;      // population std over initial states of the node mean
  double sigma_bar = 0.0;  // mean over initial states of the population std over nodes
};

struct FidelityReport {
  std::size_t inits = 0;
  std::size_t runs = 0;
  unsigned max_step = 0;
  std::vector<FidelityPoint> points;  // k = 1..max_step
};

/// Aggregates absolute errors delta[r][k-1][i] into the three curves.
FidelityReport summarize_errors(const std::vector<std::vector<std::vector<double>>>& delta);

/// R initial states drawn from `seed`; both models simulated M times for K
/// steps from each, on independent streams, and compared per node and step.
FidelityReport fidelity(const Model& reference, const Model& learned, std::size_t inits,
                        std::size_t runs, unsigned max_step, std::uint64_t seed, int workers = 1);

struct CrossValidation {
  LearnResult final_model;          // relearned on every series
  std::vector<double> fold_nll;     // held-out negative log-likelihood per fold
};

/// Negative log-likelihood of every transition in `list` under `net`.
double heldout_nll(const ScnfNetwork& net, const TransitionList& list);

/// Contiguous folds over the series; each fold is scored by a model learned
/// on the others. The returned model is learned on all series.
CrossValidation cross_validate(const Dataset& series, std::size_t folds,
                               const LiteralFilter& filter = {}, const LearnOptions& options = {},
                               int workers = 1);

}  // namespace scnf
