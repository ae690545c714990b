#include "scnf/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "scnf/datagen.hpp"
#include "scnf/parallel.hpp"

namespace scnf {

FidelityReport summarize_errors(const std::vector<std::vector<std::vector<double>>>& delta) {
  FidelityReport rep;
  rep.inits = delta.size();
  if (delta.empty()) return rep;
  const std::size_t steps = delta.front().size();
  rep.max_step = static_cast<unsigned>(steps);
  const double R = static_cast<double>(delta.size());
  for (std::size_t k = 0; k < steps; ++k) {
    std::vector<double> node_mean(delta.size());
    double sigma_bar = 0.0;
    for (std::size_t r = 0; r < delta.size(); ++r) {
      const auto& d = delta[r][k];
      const double N = static_cast<double>(d.size());
      double mean = 0.0;
      for (double v : d) mean += v;
      mean /= N;
      double var = 0.0;
      for (double v : d) var += (v - mean) * (v - mean);
      node_mean[r] = mean;
      sigma_bar += std::sqrt(var / N);
    }
    double delta_bar = 0.0;
    for (double v : node_mean) delta_bar += v;
    delta_bar /= R;
    double var = 0.0;
    for (double v : node_mean) var += (v - delta_bar) * (v - delta_bar);
    rep.points.push_back({static_cast<unsigned>(k + 1), delta_bar, std::sqrt(var / R), sigma_bar / R});
  }
  return rep;
}

FidelityReport fidelity(const Model& reference, const Model& learned, std::size_t inits,
                        std::size_t runs, unsigned max_step, std::uint64_t seed, int workers) {
  const std::size_t n = model_size(reference);
  if (model_size(learned) != n) throw std::invalid_argument("models differ in node count");
  if (inits == 0 || runs == 0 || max_step == 0) throw std::invalid_argument("need R, M, K >= 1");
  const auto starts = random_states(n, inits, seed, stream::kFidelityInits);
  const double M = static_cast<double>(runs);

  std::vector<std::vector<std::vector<double>>> delta(inits);
  parallel_for(inits, workers, [&](std::size_t r) {
    const auto ref = true_counts(reference, starts[r], max_step, runs,
                                 {seed, stream::kFidelityReference, r});
    const auto hat = true_counts(learned, starts[r], max_step, runs,
                                 {seed, stream::kFidelityLearned, r});
    auto& d = delta[r];
    d.assign(max_step, std::vector<double>(n));
    for (unsigned k = 0; k < max_step; ++k)
      for (std::size_t i = 0; i < n; ++i)
        d[k][i] = std::abs(static_cast<double>(ref[k][i]) / M - static_cast<double>(hat[k][i]) / M);
  });
  auto rep = summarize_errors(delta);
  rep.runs = runs;
  return rep;
}

double heldout_nll(const ScnfNetwork& net, const TransitionList& list) {
  double nll = 0.0;
  for (std::size_t i = 0; i < net.size(); ++i)
    nll -= node_log_likelihood(net.rule(i), node_transitions(list, static_cast<NodeId>(i)));
  return nll;
}

CrossValidation cross_validate(const Dataset& series, std::size_t folds,
                               const LiteralFilter& filter, const LearnOptions& options,
                               int workers) {
  if (folds < 2) throw std::invalid_argument("cross-validation needs at least 2 folds");
  if (series.size() < folds) throw std::invalid_argument("fewer time series than folds");
  const std::size_t n = series.front().front().size();

  CrossValidation cv;
  for (std::size_t f = 0; f < folds; ++f) {
    const std::size_t begin = series.size() * f / folds;
    const std::size_t end = series.size() * (f + 1) / folds;
    Dataset train, held;
    for (std::size_t t = 0; t < series.size(); ++t)
      (t >= begin && t < end ? held : train).push_back(series[t]);
    const auto model = scnfn_learn(build_transition_list(train), n, filter, options, workers);
    cv.fold_nll.push_back(heldout_nll(model.network, build_transition_list(held)));
  }
  cv.final_model = scnfn_learn(build_transition_list(series), n, filter, options, workers);
  return cv;
}

}  // namespace scnf
