#include "scnf/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "scnf/rng.hpp"

namespace scnf {

namespace {

double clamp_prob(double x) { return std::clamp(x, kLogClamp, 1.0 - kLogClamp); }

double binomial_nll(double pf, long n_false, long n_true) {
  const double c = clamp_prob(pf);
  double v = 0.0;
  if (n_false) v -= static_cast<double>(n_false) * std::log(c);
  if (n_true) v -= static_cast<double>(n_true) * std::log(1.0 - c);
  return v;
}

double binomial_nll_derivative(double pf, long n_false, long n_true) {
  const double c = clamp_prob(pf);
  return -static_cast<double>(n_false) / c + static_cast<double>(n_true) / (1.0 - c);
}

// d/dp_j (1 - prod(1 - p_k)) = prod_{k != j} (1 - p_k)
double union_partial(std::span<const double> p, std::span<const std::size_t> idx, std::size_t j) {
  double prod = 1.0;
  for (auto k : idx)
    if (k != j) prod *= 1.0 - p[k];
  return prod;
}

struct DescentResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
};

// Projected gradient with Armijo backtracking on a box.
DescentResult projected_descent(const std::function<double(std::span<const double>)>& f,
                                const std::function<std::vector<double>(std::span<const double>)>& grad,
                                std::vector<double> x, std::span<const double> lo,
                                std::span<const double> hi, double tolerance, int max_iterations) {
  const std::size_t d = x.size();
  auto project = [&](std::vector<double>& v) {
    for (std::size_t k = 0; k < d; ++k) v[k] = std::clamp(v[k], lo[k], hi[k]);
  };
  project(x);
  double fx = f(x);
  double step = 1.0;
  std::vector<double> trial(d);
  int it = 0;
  for (; it < max_iterations; ++it) {
    const auto g = grad(x);
    double pg = 0.0;
    for (std::size_t k = 0; k < d; ++k)
      pg = std::max(pg, std::abs(std::clamp(x[k] - g[k], lo[k], hi[k]) - x[k]));
    if (pg < tolerance) break;

    step = std::min(step * 2.0, 1e8);
    bool accepted = false;
    while (step > 1e-20) {
      double decrease = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        trial[k] = std::clamp(x[k] - step * g[k], lo[k], hi[k]);
        decrease += g[k] * (trial[k] - x[k]);
      }
      const double ft = f(trial);
      if (std::isfinite(ft) && ft <= fx + 1e-4 * decrease) {
        if (ft > fx) throw std::logic_error("line search accepted an increasing step");
        x.swap(trial);
        fx = ft;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return {std::move(x), fx, it};
}

}  // namespace

void FitProblem::validate() const {
  for (const auto& t : terms) {
    if (t.clauses.empty())
      throw std::invalid_argument("conflict state with no falsifiable stochastic clause");
    for (auto j : t.clauses)
      if (j >= clause_count) throw std::invalid_argument("clause index out of range");
    if (t.n_false < 0 || t.n_true < 0) throw std::invalid_argument("negative outcome count");
  }
}

double union_probability(std::span<const double> p, std::span<const std::size_t> idx) {
  double keep = 1.0;
  for (auto j : idx) keep *= 1.0 - p[j];
  return 1.0 - keep;
}

double objective(std::span<const double> p, std::span<const double> pf, const FitProblem& prob,
                 double lambda) {
  double v = 0.0;
  for (std::size_t l = 0; l < prob.terms.size(); ++l) {
    const auto& t = prob.terms[l];
    const double eps = pf[l] - union_probability(p, t.clauses);
    v += binomial_nll(pf[l], t.n_false, t.n_true) + lambda * eps * eps;
  }
  return v;
}

ObjectiveGradient gradient(std::span<const double> p, std::span<const double> pf,
                           const FitProblem& prob, double lambda) {
  ObjectiveGradient g{std::vector<double>(p.size(), 0.0), std::vector<double>(pf.size(), 0.0)};
  for (std::size_t l = 0; l < prob.terms.size(); ++l) {
    const auto& t = prob.terms[l];
    const double eps = pf[l] - union_probability(p, t.clauses);
    g.dpf[l] = binomial_nll_derivative(pf[l], t.n_false, t.n_true) + 2.0 * lambda * eps;
    for (auto j : t.clauses) g.dp[j] -= 2.0 * lambda * eps * union_partial(p, t.clauses, j);
  }
  return g;
}

double unrelaxed_nll(std::span<const double> p, const FitProblem& prob) {
  double v = 0.0;
  for (const auto& t : prob.terms)
    v += binomial_nll(union_probability(p, t.clauses), t.n_false, t.n_true);
  return v;
}

std::vector<double> unrelaxed_gradient(std::span<const double> p, const FitProblem& prob) {
  std::vector<double> g(p.size(), 0.0);
  for (const auto& t : prob.terms) {
    const double outer = binomial_nll_derivative(union_probability(p, t.clauses), t.n_false, t.n_true);
    for (auto j : t.clauses) g[j] += outer * union_partial(p, t.clauses, j);
  }
  return g;
}

FitResult fit_parameters(const FitProblem& prob, const FitOptions& options) {
  prob.validate();
  if (options.sweep.empty()) throw std::invalid_argument("empty regularization sweep");
  const std::size_t d = prob.clause_count;
  const std::size_t m = prob.terms.size();
  if (d == 0) return {};

  std::vector<double> empirical(m);
  for (std::size_t l = 0; l < m; ++l) {
    const auto& t = prob.terms[l];
    const long total = t.n_false + t.n_true;
    empirical[l] = total ? static_cast<double>(t.n_false) / static_cast<double>(total) : 0.5;
  }

  // Starting points shared by every lambda: 0.5, empirical frequencies,
  // then seeded uniform draws.
  std::vector<std::vector<double>> starts;
  for (int s = 0; s < std::max(options.seed_points, 1); ++s) {
    std::vector<double> p0(d, 0.5);
    if (s == 1) {
      std::vector<double> sum(d, 0.0), cnt(d, 0.0);
      for (std::size_t l = 0; l < m; ++l)
        for (auto j : prob.terms[l].clauses) {
          sum[j] += empirical[l];
          cnt[j] += 1.0;
        }
      for (std::size_t j = 0; j < d; ++j) p0[j] = cnt[j] > 0 ? sum[j] / cnt[j] : 0.5;
    } else if (s >= 2) {
      StreamRng rng(options.seed, {stream::kOptimizer, static_cast<std::uint64_t>(s)});
      for (auto& v : p0) v = rng.uniform();
    }
    starts.push_back(std::move(p0));
  }

  std::vector<double> lo(d + m), hi(d + m);
  for (std::size_t k = 0; k < d; ++k) lo[k] = 0.0, hi[k] = 1.0;
  for (std::size_t k = d; k < d + m; ++k) lo[k] = kLogClamp, hi[k] = 1.0 - kLogClamp;
  const std::vector<double> plo(d, 0.0), phi(d, 1.0);

  FitResult best;
  best.neg_log_lik = std::numeric_limits<double>::infinity();
  bool any = false;
  for (double lambda : options.sweep) {
    auto f = [&](std::span<const double> x) {
      return objective(x.first(d), x.subspan(d), prob, lambda);
    };
    auto g = [&](std::span<const double> x) {
      auto gr = gradient(x.first(d), x.subspan(d), prob, lambda);
      gr.dp.insert(gr.dp.end(), gr.dpf.begin(), gr.dpf.end());
      return gr.dp;
    };
    for (const auto& p0 : starts) {
      std::vector<double> x0 = p0;
      for (std::size_t l = 0; l < m; ++l) x0.push_back(std::clamp(empirical[l], kLogClamp, 1.0 - kLogClamp));
      auto run = projected_descent(f, g, x0, lo, hi, options.tolerance, options.max_iterations);
      if (!std::isfinite(run.f)) continue;

      FitResult r;
      r.p.assign(run.x.begin(), run.x.begin() + static_cast<std::ptrdiff_t>(d));
      r.pf.assign(run.x.begin() + static_cast<std::ptrdiff_t>(d), run.x.end());
      r.lambda = lambda;
      for (std::size_t l = 0; l < m; ++l) {
        const double eps = r.pf[l] - union_probability(r.p, prob.terms[l].clauses);
        r.residual_norm += eps * eps;
      }
      if (options.polish) {
        auto polished = projected_descent(
            [&](std::span<const double> p) { return unrelaxed_nll(p, prob); },
            [&](std::span<const double> p) { return unrelaxed_gradient(p, prob); }, r.p, plo, phi,
            options.tolerance, options.max_iterations);
        r.p = std::move(polished.x);
      }
      r.neg_log_lik = unrelaxed_nll(r.p, prob);
      if (!std::isfinite(r.neg_log_lik)) continue;
      any = true;
      if (r.neg_log_lik < best.neg_log_lik ||
          (r.neg_log_lik == best.neg_log_lik && r.p < best.p)) {
        best = std::move(r);
      }
    }
  }
  if (!any) throw std::runtime_error("parameter fit diverged: every run has a non-finite objective");
  return best;
}

}  // namespace scnf
