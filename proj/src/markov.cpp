#include "scnf/markov.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "scnf/learn.hpp"
#include "scnf/parallel.hpp"

namespace scnf {

namespace {

void check_size(std::size_t n) {
  if (n > kMaxExactNodes)
    throw std::length_error("exact analysis limited to " + std::to_string(kMaxExactNodes) +
                            " nodes, network has " + std::to_string(n));
}

template <class TrueProbs>
TransitionMatrix build_matrix(std::size_t n, int workers, TrueProbs&& true_probs) {
  check_size(n);
  TransitionMatrix tm{n, Eigen::MatrixXd(std::size_t{1} << n, std::size_t{1} << n)};
  const std::size_t rows = tm.states();
  parallel_for(rows, workers, [&](std::size_t mu) {
    const State s = State::from_index(mu, n);
    tm.m.row(static_cast<Eigen::Index>(mu)) = product_distribution(true_probs(s));
  });
  return tm;
}

}  // namespace

void TransitionMatrix::validate(double tolerance) const {
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != states())
    throw std::logic_error("transition matrix has the wrong shape");
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if ((m.row(r).array() < -tolerance).any() || (m.row(r).array() > 1.0 + tolerance).any())
      throw std::logic_error("transition probability outside [0, 1]");
    if (std::abs(m.row(r).sum() - 1.0) > tolerance)
      throw std::logic_error("transition matrix row " + std::to_string(r) + " does not sum to 1");
  }
}

Eigen::RowVectorXd product_distribution(const std::vector<double>& true_probs) {
  Eigen::RowVectorXd row(std::size_t{1} << true_probs.size());
  row(0) = 1.0;
  std::size_t len = 1;
  // Node 0 ends up as the most significant bit.
  for (double q : true_probs) {
    for (std::size_t k = len; k-- > 0;) {
      const double v = row(static_cast<Eigen::Index>(k));
      row(static_cast<Eigen::Index>(2 * k)) = v * (1.0 - q);
      row(static_cast<Eigen::Index>(2 * k + 1)) = v * q;
    }
    len *= 2;
  }
  return row;
}

TransitionMatrix pbn_transition_matrix(const Pbn& pbn, int workers) {
  return build_matrix(pbn.size(), workers, [&](const State& s) {
    std::vector<double> q(pbn.size());
    for (std::size_t i = 0; i < pbn.size(); ++i) q[i] = pbn_true_probability(pbn, i, s);
    return q;
  });
}

TransitionMatrix scnf_transition_matrix(const ScnfNetwork& net, int workers) {
  return build_matrix(net.size(), workers, [&](const State& s) {
    std::vector<double> q(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) q[i] = 1.0 - prob_false(net.rule(i), s);
    return q;
  });
}

TransitionMatrix k_step(const TransitionMatrix& tm, unsigned k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  Eigen::MatrixXd result;
  Eigen::MatrixXd base = tm.m;
  bool have = false;
  while (k) {
    if (k & 1u) {
      result = have ? Eigen::MatrixXd(result * base) : base;
      have = true;
    }
    k >>= 1;
    if (k) base = base * base;
  }
  TransitionMatrix out{tm.n, std::move(result)};
  out.validate(1e-8);
  return out;
}

Eigen::RowVectorXd k_step_row(const TransitionMatrix& tm, const State& from, unsigned k) {
  if (from.size() != tm.n) throw std::invalid_argument("state width does not match the chain");
  Eigen::RowVectorXd row = tm.m.row(static_cast<Eigen::Index>(from.index()));
  for (unsigned step = 1; step < k; ++step) row = row * tm.m;
  return row;
}

std::vector<double> node_true_marginals(const TransitionMatrix& tm, const State& from, unsigned k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  const Eigen::RowVectorXd row = k_step_row(tm, from, k);
  std::vector<double> out(tm.n, 0.0);
  for (std::size_t mu = 0; mu < tm.states(); ++mu) {
    const double w = row(static_cast<Eigen::Index>(mu));
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < tm.n; ++i)
      if ((mu >> (tm.n - 1 - i)) & 1u) out[i] += w;
  }
  return out;
}

double node_true_marginal(const TransitionMatrix& tm, const State& from, unsigned k, NodeId node) {
  if (node >= tm.n) throw std::out_of_range("node index out of range");
  return node_true_marginals(tm, from, k)[node];
}

TransitionDiagram transition_diagram(const TransitionMatrix& tm, double threshold) {
  TransitionDiagram d{tm.n, {}};
  for (Eigen::Index r = 0; r < tm.m.rows(); ++r)
    for (Eigen::Index c = 0; c < tm.m.cols(); ++c)
      if (tm.m(r, c) > threshold)
        d.edges.push_back({static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c), tm.m(r, c)});
  return d;
}

std::string to_dot(const TransitionDiagram& diagram) {
  std::ostringstream out;
  out << "digraph transitions {\n";
  const std::size_t states = std::size_t{1} << diagram.n;
  for (std::size_t s = 0; s < states; ++s) {
    const auto label = State::from_index(s, diagram.n).to_string();
    out << "  s" << s << " [label=\"" << label << "\"];\n";
  }
  char buf[32];
  for (const auto& e : diagram.edges) {
    std::snprintf(buf, sizeof buf, "%.4f", e.weight);
    out << "  s" << e.from << " -> s" << e.to << " [label=\"" << buf << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_csv(const TransitionMatrix& tm) {
  std::ostringstream out;
  out << "from";
  for (std::size_t s = 0; s < tm.states(); ++s) out << ',' << State::from_index(s, tm.n).to_string();
  out << '\n';
  char buf[40];
  for (std::size_t r = 0; r < tm.states(); ++r) {
    out << State::from_index(r, tm.n).to_string();
    for (std::size_t c = 0; c < tm.states(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", tm.m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
      out << ',' << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace scnf
