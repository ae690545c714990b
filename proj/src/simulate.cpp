#include "scnf/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "scnf/parallel.hpp"

namespace scnf {

std::size_t model_size(const Model& model) {
  return std::visit([](const auto& m) { return m.size(); }, model);
}

void step_into(const ScnfNetwork& net, const State& s, State& next, StreamRng& rng) {
  if (s.size() != net.size()) throw std::invalid_argument("state width does not match the network");
  if (next.size() != net.size()) next = State(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    const auto& rule = net.rule(i);
    bool value = eval_cnf(rule.deterministic(), s);
    if (value) {
      for (const auto& sc : rule.stochastic()) {
        if (eval_clause(sc.clause, s)) continue;
        if (rng.bernoulli(sc.p)) {
          value = false;
          break;
        }
      }
    }
    next.set(i, value);
  }
}

void step_into(const Pbn& pbn, const State& s, State& next, StreamRng& rng) {
  if (s.size() != pbn.size()) throw std::invalid_argument("state width does not match the network");
  if (next.size() != pbn.size()) next = State(pbn.size());
  for (std::size_t i = 0; i < pbn.size(); ++i) {
    const auto& fs = pbn.node(i);
    std::size_t pick = 0;
    if (fs.size() > 1) {
      const double u = rng.uniform();
      double acc = 0.0;
      pick = fs.size() - 1;
      for (std::size_t j = 0; j < fs.size(); ++j) {
        acc += fs[j].p;
        if (u < acc) {
          pick = j;
          break;
        }
      }
    }
    next.set(i, eval_boolean_function(fs[pick].function, s));
  }
}

State step(const ScnfNetwork& net, const State& s, StreamRng& rng) {
  State next(net.size());
  step_into(net, s, next, rng);
  return next;
}

State step(const Pbn& pbn, const State& s, StreamRng& rng) {
  State next(pbn.size());
  step_into(pbn, s, next, rng);
  return next;
}

State step(const Model& model, const State& s, StreamRng& rng) {
  return std::visit([&](const auto& m) { return step(m, s, rng); }, model);
}

std::vector<State> trajectory(const Model& model, const State& s0, std::size_t steps,
                              StreamRng& rng) {
  std::vector<State> out;
  out.reserve(steps + 1);
  out.push_back(s0);
  for (std::size_t t = 0; t < steps; ++t) out.push_back(step(model, out.back(), rng));
  return out;
}

namespace {

// Calls visit(j, k, state) for every trajectory j and step k = 1..max_step.
template <class Net, class Visit>
void run_trajectories(const Net& net, const State& from, unsigned max_step, std::size_t begin,
                      std::size_t end, const SampleKey& key, Visit&& visit) {
  State cur(net.size()), next(net.size());
  for (std::size_t j = begin; j < end; ++j) {
    StreamRng rng(key.seed, {key.tag, key.init, static_cast<std::uint64_t>(j)});
    cur = from;
    for (unsigned k = 1; k <= max_step; ++k) {
      step_into(net, cur, next, rng);
      std::swap(cur, next);
      visit(j, k, cur);
    }
  }
}

std::size_t chunk_count(std::size_t samples, int workers) {
  return std::max<std::size_t>(1, std::min<std::size_t>(samples, static_cast<std::size_t>(std::max(workers, 1))));
}

}  // namespace

std::vector<std::vector<std::uint32_t>> true_counts(const Model& model, const State& from,
                                                    unsigned max_step, std::size_t samples,
                                                    const SampleKey& key, int workers) {
  const std::size_t n = model_size(model);
  if (from.size() != n) throw std::invalid_argument("state width does not match the network");
  if (max_step == 0 || samples == 0) throw std::invalid_argument("need k >= 1 and M >= 1");
  const std::size_t chunks = chunk_count(samples, workers);
  std::vector<std::vector<std::vector<std::uint32_t>>> partial(
      chunks, std::vector<std::vector<std::uint32_t>>(max_step, std::vector<std::uint32_t>(n, 0)));
  parallel_for(chunks, workers, [&](std::size_t c) {
    auto& counts = partial[c];
    std::visit(
        [&](const auto& net) {
          run_trajectories(net, from, max_step, samples * c / chunks, samples * (c + 1) / chunks, key,
                           [&](std::size_t, unsigned k, const State& s) {
                             auto& row = counts[k - 1];
                             for (std::size_t i = 0; i < n; ++i) row[i] += s[i];
                           });
        },
        model);
  });
  auto total = std::move(partial[0]);
  for (std::size_t c = 1; c < chunks; ++c)
    for (unsigned k = 0; k < max_step; ++k)
      for (std::size_t i = 0; i < n; ++i) total[k][i] += partial[c][k][i];
  return total;
}

NodeProbEstimate estimate_node_probs(const Model& model, const State& from, unsigned k,
                                     std::size_t samples, const SampleKey& key, int workers) {
  const auto counts = true_counts(model, from, k, samples, key, workers);
  NodeProbEstimate e;
  e.samples = samples;
  for (auto c : counts.back()) e.per_node.push_back(static_cast<double>(c) / static_cast<double>(samples));
  return e;
}

double estimate_state_prob(const NodeProbEstimate& e, const State& mu) {
  if (mu.size() != e.per_node.size()) throw std::invalid_argument("state width does not match the estimate");
  double p = 1.0;
  for (std::size_t i = 0; i < mu.size(); ++i) p *= mu[i] ? e.per_node[i] : 1.0 - e.per_node[i];
  return p;
}

double series_autocorrelation(std::span<const double> x, std::size_t lag) {
  const std::size_t m = x.size();
  if (lag >= m) throw std::invalid_argument("lag must be smaller than the series length");
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(m);
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t + lag < m; ++t) {
    num += (x[t] - mean) * (x[t + lag] - mean);
    den += (x[t] - mean) * (x[t] - mean);
  }
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return num / den;
}

AcfReport acf_diagnostic(const Model& model, const std::vector<State>& inits, unsigned k,
                         std::size_t samples, const std::vector<std::size_t>& lags,
                         std::uint64_t seed, int workers) {
  const std::size_t n = model_size(model);
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  std::size_t max_lag = 0;
  for (auto l : lags) max_lag = std::max(max_lag, l);
  if (samples < max_lag + 2) throw std::invalid_argument("need M >= max lag + 2");

  AcfReport report;
  report.lags = lags;
  std::vector<double> rho_sum(lags.size(), 0.0);
  std::vector<std::size_t> rho_count(lags.size(), 0);

  for (std::size_t r = 0; r < inits.size(); ++r) {
    if (inits[r].size() != n) throw std::invalid_argument("state width does not match the network");
    // outcomes[j * n + i]: node i True at step k in trajectory j
    std::vector<std::uint8_t> outcomes(samples * n, 0);
    const SampleKey key{seed, stream::kTrajectory, r};
    const std::size_t chunks = chunk_count(samples, workers);
    parallel_for(chunks, workers, [&](std::size_t c) {
      std::visit(
          [&](const auto& net) {
            run_trajectories(net, inits[r], k, samples * c / chunks, samples * (c + 1) / chunks, key,
                             [&](std::size_t j, unsigned step, const State& s) {
                               if (step != k) return;
                               for (std::size_t i = 0; i < n; ++i) outcomes[j * n + i] = s[i];
                             });
          },
          model);
    });

    std::vector<double> node_rho_sum(lags.size(), 0.0);
    std::vector<std::size_t> node_rho_count(lags.size(), 0);
    std::vector<double> running(samples);
    bool any_node = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t hits = 0;
      for (std::size_t j = 0; j < samples; ++j) {
        hits += outcomes[j * n + i];
        running[j] = static_cast<double>(hits) / static_cast<double>(j + 1);
      }
      const bool constant = std::all_of(running.begin(), running.end(),
                                        [&](double v) { return v == running.front(); });
      if (constant) continue;
      any_node = true;
      for (std::size_t l = 0; l < lags.size(); ++l) {
        const double rho = lags[l] == 0 ? 1.0 : series_autocorrelation(running, lags[l]);
        if (std::isnan(rho)) continue;
        node_rho_sum[l] += rho;
        ++node_rho_count[l];
      }
    }
    if (!any_node) {
      report.excluded_inits.push_back(r);
      report.warnings.push_back("initial state " + inits[r].to_string() +
                                ": every node has a constant running estimate; excluded");
      continue;
    }
    for (std::size_t l = 0; l < lags.size(); ++l) {
      if (!node_rho_count[l]) continue;
      rho_sum[l] += node_rho_sum[l] / static_cast<double>(node_rho_count[l]);
      ++rho_count[l];
    }
  }
  for (std::size_t l = 0; l < lags.size(); ++l)
    report.rho.push_back(rho_count[l] ? rho_sum[l] / static_cast<double>(rho_count[l])
                                      : std::numeric_limits<double>::quiet_NaN());
  return report;
}

}  // namespace scnf
