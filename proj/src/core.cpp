#include "scnf/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace scnf {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

std::string node_name(NodeId node, const std::vector<std::string>& names) {
  if (node < names.size()) return names[node];
  return "x" + std::to_string(node + 1);
}

}  // namespace

// ---------------------------------------------------------------- State

State::State(std::size_t n) : n_(n), words_(word_count(n), 0) {}

State State::from_index(std::uint64_t index, std::size_t n) {
  if (n > 64) throw std::invalid_argument("state index encoding requires n <= 64");
  if (n < 64 && (index >> n) != 0) throw std::out_of_range("state index exceeds 2^n");
  State s(n);
  for (std::size_t i = 0; i < n; ++i) s.set(i, (index >> (n - 1 - i)) & 1u);
  return s;
}

State State::from_string(std::string_view bits) {
  State s(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    switch (bits[i]) {
      case '1': case 'T': case 't': s.set(i, true); break;
      case '0': case 'F': case 'f': break;
      default: throw std::invalid_argument("invalid state character '" + std::string(1, bits[i]) + "'");
    }
  }
  return s;
}

bool State::at(std::size_t i) const {
  if (i >= n_) throw std::out_of_range("node index " + std::to_string(i) + " out of range");
  return (*this)[i];
}

void State::set(std::size_t i, bool value) {
  if (i >= n_) throw std::out_of_range("node index " + std::to_string(i) + " out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) words_[i >> 6] |= mask;
  else words_[i >> 6] &= ~mask;
}

std::uint64_t State::index() const {
  if (n_ > 64) throw std::invalid_argument("state index encoding requires n <= 64");
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < n_; ++i) idx = (idx << 1) | ((*this)[i] ? 1u : 0u);
  return idx;
}

std::string State::to_string() const {
  std::string out(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if ((*this)[i]) out[i] = '1';
  return out;
}

std::size_t State::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

std::size_t State::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ n_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const State& a, const State& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  return a.words_ <=> b.words_;
}

// ---------------------------------------------------------------- Clause

Clause::Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
  std::sort(literals_.begin(), literals_.end());
  literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
  for (std::size_t k = 1; k < literals_.size(); ++k) {
    if (literals_[k].node == literals_[k - 1].node)
      throw std::invalid_argument("tautological clause: contains x" +
                                  std::to_string(literals_[k].node + 1) + " and its negation");
  }
}

bool Clause::contains(Literal l) const {
  return std::binary_search(literals_.begin(), literals_.end(), l);
}

std::size_t Clause::width() const {
  return literals_.empty() ? 0 : std::size_t{literals_.back().node} + 1;
}

Clause Clause::with(Literal l) const {
  auto lits = literals_;
  lits.push_back(l);
  return Clause(std::move(lits));
}

std::strong_ordering operator<=>(const Clause& a, const Clause& b) {
  return std::lexicographical_compare_three_way(a.literals_.begin(), a.literals_.end(),
                                                b.literals_.begin(), b.literals_.end());
}

// ---------------------------------------------------------------- ScnfRule

ScnfRule::ScnfRule(std::vector<Clause> deterministic, std::vector<StochasticClause> stochastic)
    : deterministic_(std::move(deterministic)) {
  for (auto& sc : stochastic) {
    if (!(sc.p >= 0.0 && sc.p <= 1.0))
      throw std::invalid_argument("clause activation probability outside [0, 1]");
    if (sc.p == 1.0) deterministic_.push_back(std::move(sc.clause));
    else stochastic_.push_back(std::move(sc));
  }
  std::sort(deterministic_.begin(), deterministic_.end());
  deterministic_.erase(std::unique(deterministic_.begin(), deterministic_.end()),
                       deterministic_.end());
  std::stable_sort(stochastic_.begin(), stochastic_.end(),
                   [](const auto& a, const auto& b) { return a.clause < b.clause; });
  for (std::size_t k = 1; k < stochastic_.size(); ++k) {
    if (stochastic_[k].clause == stochastic_[k - 1].clause)
      throw std::invalid_argument("duplicate stochastic clause " + to_string(stochastic_[k].clause));
  }
}

std::size_t ScnfRule::width() const {
  std::size_t w = 0;
  for (const auto& c : deterministic_) w = std::max(w, c.width());
  for (const auto& sc : stochastic_) w = std::max(w, sc.clause.width());
  return w;
}

// ---------------------------------------------------------------- ScnfNetwork

ScnfNetwork::ScnfNetwork(std::size_t n, std::vector<ScnfRule> rules)
    : n_(n), rules_(std::move(rules)) {
  if (rules_.size() != n_)
    throw std::invalid_argument("network has " + std::to_string(n_) + " nodes but " +
                                std::to_string(rules_.size()) + " rules");
  for (std::size_t i = 0; i < n_; ++i) {
    if (rules_[i].width() > n_)
      throw std::invalid_argument("rule of x" + std::to_string(i + 1) +
                                  " references a node outside the network");
  }
}

// ---------------------------------------------------------------- BooleanFunction

BooleanFunction::BooleanFunction(std::vector<NodeId> parents, std::vector<bool> table,
                                 std::size_t max_parents)
    : parents_(std::move(parents)), table_(std::move(table)) {
  if (parents_.size() > max_parents)
    throw std::invalid_argument("function has " + std::to_string(parents_.size()) +
                                " parents, cap is " + std::to_string(max_parents));
  if (table_.size() != (std::size_t{1} << parents_.size()))
    throw std::invalid_argument("truth table length must be 2^|parents|");
  auto sorted = parents_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate parent in Boolean function");
}

BooleanFunction BooleanFunction::constant(bool value) { return BooleanFunction({}, {value}); }

std::size_t BooleanFunction::width() const {
  std::size_t w = 0;
  for (auto p : parents_) w = std::max(w, std::size_t{p} + 1);
  return w;
}

std::size_t BooleanFunction::table_index(const State& s) const {
  std::size_t idx = 0;
  for (auto p : parents_) idx = (idx << 1) | (s.at(p) ? 1u : 0u);
  return idx;
}

// ---------------------------------------------------------------- Pbn

Pbn::Pbn(std::size_t n, std::vector<std::vector<WeightedFunction>> nodes)
    : n_(n), nodes_(std::move(nodes)) {
  if (nodes_.size() != n_)
    throw std::invalid_argument("PBN has " + std::to_string(n_) + " nodes but " +
                                std::to_string(nodes_.size()) + " function lists");
  for (std::size_t i = 0; i < n_; ++i) {
    const auto& fs = nodes_[i];
    if (fs.empty())
      throw std::invalid_argument("node x" + std::to_string(i + 1) + " has no functions");
    double total = 0.0;
    for (const auto& wf : fs) {
      if (!(wf.p >= 0.0)) throw std::invalid_argument("negative selection probability");
      if (wf.function.width() > n_)
        throw std::invalid_argument("function of x" + std::to_string(i + 1) +
                                    " references a node outside the network");
      total += wf.p;
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw std::invalid_argument("selection probabilities of x" + std::to_string(i + 1) +
                                  " sum to " + std::to_string(total));
  }
}

bool Pbn::deterministic() const {
  for (const auto& fs : nodes_) {
    std::size_t live = 0;
    for (const auto& wf : fs) live += wf.p > 0.0;
    if (live > 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------- evaluation

bool eval_literal(Literal l, const State& s) { return s.at(l.node) != l.negated; }

bool eval_clause(const Clause& c, const State& s) {
  for (auto l : c.literals())
    if (eval_literal(l, s)) return true;
  return false;
}

bool eval_cnf(const std::vector<Clause>& clauses, const State& s) {
  for (const auto& c : clauses)
    if (!eval_clause(c, s)) return false;
  return true;
}

bool eval_boolean_function(const BooleanFunction& f, const State& s) {
  return f.table()[f.table_index(s)];
}

double pbn_true_probability(const Pbn& pbn, std::size_t node, const State& s) {
  // Neumaier summation: converted networks carry up to 2^20 small weights.
  double sum = 0.0, comp = 0.0;
  for (const auto& wf : pbn.node(node)) {
    if (!eval_boolean_function(wf.function, s)) continue;
    const double t = sum + wf.p;
    comp += std::abs(sum) >= std::abs(wf.p) ? (sum - t) + wf.p : (wf.p - t) + sum;
    sum = t;
  }
  return std::min(sum + comp, 1.0);
}

// ---------------------------------------------------------------- printing

std::string to_string(Literal l, const std::vector<std::string>& names) {
  return (l.negated ? "!" : "") + node_name(l.node, names);
}

std::string to_string(const Clause& c, const std::vector<std::string>& names) {
  std::string out = "(";
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k) out += " | ";
    out += to_string(c.literals()[k], names);
  }
  return out + ")";
}

std::string to_string(const ScnfRule& r, const std::vector<std::string>& names) {
  std::string out;
  auto join = [&](const std::string& s) {
    if (!out.empty()) out += " & ";
    out += s;
  };
  for (const auto& c : r.deterministic()) join(to_string(c, names));
  for (const auto& sc : r.stochastic()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "; p=%.4g)", sc.p);
    auto s = to_string(sc.clause, names);
    s.pop_back();
    join(s + buf);
  }
  return out.empty() ? "True" : out;
}

}  // namespace scnf
