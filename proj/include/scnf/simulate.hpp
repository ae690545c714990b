#pragma once

/// @file
/// Forward simulation of SCNF networks and PBNs, Monte Carlo estimates of
/// k-step node marginals and the autocorrelation convergence diagnostic.
///
/// Trajectory j started from initial state r draws from its own stream
/// keyed by (seed, tag, r, j); estimates sum integer counts before dividing,
/// so every result is identical for any worker count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "scnf/core.hpp"
#include "scnf/rng.hpp"

namespace scnf {

using Model = std::variant<Pbn, ScnfNetwork>;

std::size_t model_size(const Model& model);

/// Synchronous update: every node reads the same previous state. A
/// stochastic clause is activated with probability p; inactive clauses
/// count as True. Activations are drawn only for clauses falsified at `s`.
void step_into(const ScnfNetwork& net, const State& s, State& next, StreamRng& rng);
void step_into(const Pbn& pbn, const State& s, State& next, StreamRng& rng);
State step(const ScnfNetwork& net, const State& s, StreamRng& rng);
State step(const Pbn& pbn, const State& s, StreamRng& rng);
State step(const Model& model, const State& s, StreamRng& rng);

/// [s0, step(s0), ...], steps + 1 states.
std::vector<State> trajectory(const Model& model, const State& s0, std::size_t steps,
                              StreamRng& rng);

struct NodeProbEstimate {
  std::vector<double> per_node;
  std::size_t samples = 0;
};

/// Identifies the stream family of a batch of trajectories.
struct SampleKey {
  std::uint64_t seed = 0;
  std::uint64_t tag = stream::kTrajectory;
  std::uint64_t init = 0;  // index of the initial state
};

/// counts[k-1][i] = number of the M trajectories with node i True at step k,
/// for k = 1..max_step.
std::vector<std::vector<std::uint32_t>> true_counts(const Model& model, const State& from,
                                                    unsigned max_step, std::size_t samples,
                                                    const SampleKey& key, int workers = 1);

NodeProbEstimate estimate_node_probs(const Model& model, const State& from, unsigned k,
                                     std::size_t samples, const SampleKey& key, int workers = 1);

/// prod_i e_i^{mu_i} (1 - e_i)^{1 - mu_i}.
double estimate_state_prob(const NodeProbEstimate& e, const State& mu);

struct AcfReport {
  std::vector<std::size_t> lags;
  std::vector<double> rho;
  std::vector<std::size_t> excluded_inits;  // every node constant
  std::vector<std::string> warnings;
};

/// Autocorrelation of a series at `lag`:
///   sum_{m < M-lag} (x_m - mean)(x_{m+lag} - mean) / sum_{m < M-lag} (x_m - mean)^2
/// with the mean over the whole series. NaN when the denominator is zero.
double series_autocorrelation(std::span<const double> x, std::size_t lag);

/// Running estimates p_r^(i)(m), m = 1..M, per initial state and node; their
/// autocorrelations averaged over non-constant nodes, then over initial
/// states.
AcfReport acf_diagnostic(const Model& model, const std::vector<State>& inits, unsigned k,
                         std::size_t samples, const std::vector<std::size_t>& lags,
                         std::uint64_t seed, int workers = 1);

}  // namespace scnf
