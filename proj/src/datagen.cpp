#include "scnf/datagen.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "scnf/parallel.hpp"

namespace scnf {

Pbn random_bn(const GenConfig& cfg, StreamRng& rng) {
  if (cfg.n == 0) throw std::invalid_argument("network needs at least one node");
  if (!(cfg.mean_in_degree > 0.0)) throw std::invalid_argument("mean in-degree must be positive");
  const std::size_t cap = std::min(cfg.n, kMaxParents);
  std::poisson_distribution<long> degree(cfg.mean_in_degree);
  std::vector<NodeId> all(cfg.n);
  std::iota(all.begin(), all.end(), NodeId{0});

  std::vector<std::vector<WeightedFunction>> nodes(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    const auto k = static_cast<std::size_t>(std::clamp<long>(degree(rng), 1, static_cast<long>(cap)));
    // partial Fisher-Yates for k distinct parents
    std::vector<NodeId> pool = all;
    for (std::size_t t = 0; t < k; ++t) {
      const std::size_t pick = t + static_cast<std::size_t>(rng.below(cfg.n - t));
      std::swap(pool[t], pool[pick]);
    }
    std::vector<NodeId> parents(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(parents.begin(), parents.end());
    std::vector<bool> table(std::size_t{1} << k);
    for (std::size_t b = 0; b < table.size(); ++b) table[b] = (rng() >> 63) != 0;
    nodes[i].push_back({BooleanFunction(std::move(parents), std::move(table)), 1.0});
  }
  return Pbn(cfg.n, std::move(nodes));
}

Pbn merge_to_pbn(const std::vector<Pbn>& bns, StreamRng& rng) {
  if (bns.empty()) throw std::invalid_argument("nothing to merge");
  const std::size_t n = bns.front().size();
  for (const auto& bn : bns)
    if (bn.size() != n) throw std::invalid_argument("constituent networks differ in size");

  std::vector<std::vector<WeightedFunction>> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<BooleanFunction> candidates;
    for (const auto& bn : bns)
      for (const auto& wf : bn.node(i))
        if (std::find(candidates.begin(), candidates.end(), wf.function) == candidates.end())
          candidates.push_back(wf.function);

    std::vector<double> probs;
    if (candidates.size() == 1) {
      probs = {1.0};
    } else if (candidates.size() == 2) {
      const double u = rng.uniform();
      probs = {u, 1.0 - u};
    } else {
      // spacings of sorted uniforms are uniform on the simplex
      std::vector<double> cuts{0.0, 1.0};
      for (std::size_t c = 1; c < candidates.size(); ++c) cuts.push_back(rng.uniform());
      std::sort(cuts.begin(), cuts.end());
      for (std::size_t c = 0; c + 1 < cuts.size(); ++c) probs.push_back(cuts[c + 1] - cuts[c]);
    }
    for (std::size_t c = 0; c < candidates.size(); ++c)
      nodes[i].push_back({std::move(candidates[c]), probs[c]});
  }
  return Pbn(n, std::move(nodes));
}

Pbn random_pbn(const GenConfig& cfg) {
  if (cfg.constituents == 0) throw std::invalid_argument("need at least one constituent network");
  StreamRng rng(cfg.seed.value, {stream::kGenerate});
  std::vector<Pbn> bns;
  for (std::size_t c = 0; c < cfg.constituents; ++c) bns.push_back(random_bn(cfg, rng));
  return merge_to_pbn(bns, rng);
}

std::vector<State> random_states(std::size_t n, std::size_t count, std::uint64_t seed,
                                 std::uint64_t tag) {
  StreamRng rng(seed, {tag});
  std::vector<State> out;
  out.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    State s(n);
    for (std::size_t i = 0; i < n; ++i) s.set(i, (rng() >> 63) != 0);
    out.push_back(std::move(s));
  }
  return out;
}

Dataset gen_dataset(const Model& model, std::size_t num_series, std::size_t num_inits,
                    std::size_t steps, std::uint64_t seed, int workers) {
  if (num_inits == 0 || num_series < num_inits)
    throw std::invalid_argument("need num_series >= num_inits >= 1");
  const auto inits = random_states(model_size(model), num_inits, seed);
  Dataset data(num_series);
  parallel_for(num_series, workers, [&](std::size_t t) {
    StreamRng rng(seed, {stream::kTrajectory, static_cast<std::uint64_t>(t)});
    data[t] = trajectory(model, inits[t % num_inits], steps, rng);
  });
  return data;
}

}  // namespace scnf
