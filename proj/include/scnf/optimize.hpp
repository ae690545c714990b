#pragma once

/// @file
/// Maximum-likelihood fitting of stochastic-clause activation probabilities.
///
/// For every conflict state the probability that the node turns False is
/// P_F = 1 - prod(1 - p_j) over the stochastic clauses falsifiable there.
/// The solver works on the relaxed problem
///
///   min  -sum_l [nF log pf_l + nT log(1 - pf_l)] + lambda * sum_l eps_l^2,
///   eps_l = pf_l - P_F(l; p),   0 <= p <= 1,
///
/// with projected gradient descent, sweeping lambda and several starting
/// points, and keeps the run whose p gives the smallest unrelaxed negative
/// log-likelihood.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace scnf {

/// Probabilities are clamped to [kLogClamp, 1 - kLogClamp] before logs.
inline constexpr double kLogClamp = 1e-9;

struct ConflictTerm {
  std::vector<std::size_t> clauses;  // stochastic clauses falsified at this state
  long n_false = 0;
  long n_true = 0;
};

struct FitProblem {
  std::size_t clause_count = 0;
  std::vector<ConflictTerm> terms;

  void validate() const;
};

struct FitOptions {
  std::vector<double> sweep{0.1, 1.0, 10.0, 100.0};
  int seed_points = 4;
  double tolerance = 1e-8;
  int max_iterations = 5000;
  std::uint64_t seed = 0;
  /// Descend on the unrelaxed likelihood from each relaxed solution.
  bool polish = true;
};

struct FitResult {
  std::vector<double> p;
  std::vector<double> pf;  // relaxed per-state marginals of the winning run
  double neg_log_lik = 0.0;
  double residual_norm = 0.0;
  double lambda = 0.0;
};

struct ObjectiveGradient {
  std::vector<double> dp;
  std::vector<double> dpf;
};

/// 1 - prod_{j in idx} (1 - p_j).
double union_probability(std::span<const double> p, std::span<const std::size_t> idx);

double objective(std::span<const double> p, std::span<const double> pf, const FitProblem& prob,
                 double lambda);
ObjectiveGradient gradient(std::span<const double> p, std::span<const double> pf,
                           const FitProblem& prob, double lambda);

/// Negative log-likelihood with P_F recomputed exactly from p.
double unrelaxed_nll(std::span<const double> p, const FitProblem& prob);
std::vector<double> unrelaxed_gradient(std::span<const double> p, const FitProblem& prob);

FitResult fit_parameters(const FitProblem& prob, const FitOptions& options = {});

}  // namespace scnf
