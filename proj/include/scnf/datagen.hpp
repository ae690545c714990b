#pragma once

#include <cstddef>
#include <vector>

#include "scnf/core.hpp"
#include "scnf/learn.hpp"
#include "scnf/rng.hpp"
#include "scnf/simulate.hpp"

namespace scnf {

struct GenConfig {
  std::size_t n = 10;
  double mean_in_degree = 4.0;
  std::size_t constituents = 2;
  RngSeed seed;
};

/// Random Boolean network as a deterministic PBN: per node an in-degree
/// k ~ Poisson(mean) clamped to [1, min(n, 16)], k distinct parents drawn
/// uniformly, truth-table bits from a fair coin.
Pbn random_bn(const GenConfig& cfg, StreamRng& rng);

/// Per node, the distinct functions of the constituent networks with
/// selection probabilities drawn uniformly from the simplex.
Pbn merge_to_pbn(const std::vector<Pbn>& bns, StreamRng& rng);

/// cfg.constituents random BNs merged into one PBN; fully determined by cfg.seed.
Pbn random_pbn(const GenConfig& cfg);

/// num_series trajectories of `steps` transitions each. num_inits initial
/// states are drawn uniformly and assigned round-robin.
Dataset gen_dataset(const Model& model, std::size_t num_series, std::size_t num_inits,
                    std::size_t steps, std::uint64_t seed, int workers = 1);

/// Uniformly drawn states of width n from the seed's initial-state stream.
std::vector<State> random_states(std::size_t n, std::size_t count, std::uint64_t seed,
                                 std::uint64_t tag = stream::kInitialStates);

}  // namespace scnf
