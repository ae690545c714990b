#pragma once

/// @file
/// Domain types shared by every module: network states, literals, clauses,
/// stochastic CNF rules and networks, truth-table Boolean functions and
/// probabilistic Boolean networks, plus their deterministic evaluation.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace scnf {

/// Largest network for which dense 2^n x 2^n matrices are built.
inline constexpr std::size_t kMaxExactNodes = 16;
/// Default cap on the number of parents of a truth-table function.
inline constexpr std::size_t kMaxParents = 16;

using NodeId = std::uint32_t;

/// Fixed-width bit vector over the nodes of a network.
///
/// Integer encoding: node 0 (x1) is the most significant bit, so for n = 3
/// the state (T, F, F) has index 4.
class State {
 public:
  State() = default;
  explicit State(std::size_t n);

  static State from_index(std::uint64_t index, std::size_t n);
  /// Parses "0110" / "FTTF" (first character is x1).
  static State from_string(std::string_view bits);

  std::size_t size() const { return n_; }
  bool operator[](std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  bool at(std::size_t i) const;
  void set(std::size_t i, bool value);

  /// Only valid for n <= 64.
  std::uint64_t index() const;
  std::string to_string() const;
  std::size_t count() const;
  std::size_t hash() const;

  friend bool operator==(const State&, const State&) = default;
  friend std::strong_ordering operator<=>(const State& a, const State& b);

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct StateHash {
  std::size_t operator()(const State& s) const { return s.hash(); }
};

struct Literal {
  NodeId node = 0;
  bool negated = false;

  Literal negation() const { return {node, !negated}; }
  /// Position in the total order  !x1 < x1 < !x2 < x2 < ...
  std::uint64_t rank() const { return 2 * std::uint64_t{node} + (negated ? 0 : 1); }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
    return a.rank() <=> b.rank();
  }
};

/// A disjunction of literals kept sorted and free of duplicates. A clause
/// holding both x and !x is rejected at construction.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals);

  const std::vector<Literal>& literals() const { return literals_; }
  std::size_t size() const { return literals_.size(); }
  bool empty() const { return literals_.empty(); }
  bool contains(Literal l) const;
  /// Largest node index referenced plus one (0 for the empty clause).
  std::size_t width() const;

  /// New clause with `l` added; throws if that would form a tautology.
  Clause with(Literal l) const;

  friend bool operator==(const Clause&, const Clause&) = default;
  friend std::strong_ordering operator<=>(const Clause& a, const Clause& b);

 private:
  std::vector<Literal> literals_;
};

struct StochasticClause {
  Clause clause;
  double p = 1.0;  // activation probability

  friend bool operator==(const StochasticClause&, const StochasticClause&) = default;
};

/// Per-node rule: deterministic clauses (always evaluated) conjoined with
/// stochastic clauses evaluated with probability p and True otherwise.
///
/// The constructor sorts both parts, moves clauses with p == 1 into the
/// deterministic part and drops duplicate deterministic clauses. Duplicate
/// stochastic clauses and probabilities outside [0, 1] are errors.
class ScnfRule {
 public:
  ScnfRule() = default;
  ScnfRule(std::vector<Clause> deterministic, std::vector<StochasticClause> stochastic);

  const std::vector<Clause>& deterministic() const { return deterministic_; }
  const std::vector<StochasticClause>& stochastic() const { return stochastic_; }
  std::size_t width() const;
  std::size_t clause_count() const { return deterministic_.size() + stochastic_.size(); }

  friend bool operator==(const ScnfRule&, const ScnfRule&) = default;

 private:
  std::vector<Clause> deterministic_;
  std::vector<StochasticClause> stochastic_;
};

class ScnfNetwork {
 public:
  ScnfNetwork() = default;
  ScnfNetwork(std::size_t n, std::vector<ScnfRule> rules);

  std::size_t size() const { return n_; }
  const std::vector<ScnfRule>& rules() const { return rules_; }
  const ScnfRule& rule(std::size_t i) const { return rules_.at(i); }

  friend bool operator==(const ScnfNetwork&, const ScnfNetwork&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<ScnfRule> rules_;
};

/// Truth table over an explicit, duplicate-free parent list. Entry k of the
/// table is the output when the parents' bits, first parent most
/// significant, spell k.
class BooleanFunction {
 public:
  BooleanFunction() = default;
  BooleanFunction(std::vector<NodeId> parents, std::vector<bool> table,
                  std::size_t max_parents = kMaxParents);

  static BooleanFunction constant(bool value);

  const std::vector<NodeId>& parents() const { return parents_; }
  const std::vector<bool>& table() const { return table_; }
  std::size_t width() const;
  std::size_t table_index(const State& s) const;

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  std::vector<NodeId> parents_;
  std::vector<bool> table_;
};

struct WeightedFunction {
  BooleanFunction function;
  double p = 1.0;  // selection probability

  friend bool operator==(const WeightedFunction&, const WeightedFunction&) = default;
};

/// Probabilistic Boolean network: per node, a categorical choice among
/// Boolean functions, made independently per node and per step.
class Pbn {
 public:
  Pbn() = default;
  Pbn(std::size_t n, std::vector<std::vector<WeightedFunction>> nodes);

  std::size_t size() const { return n_; }
  const std::vector<std::vector<WeightedFunction>>& nodes() const { return nodes_; }
  const std::vector<WeightedFunction>& node(std::size_t i) const { return nodes_.at(i); }
  bool deterministic() const;

  friend bool operator==(const Pbn&, const Pbn&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<WeightedFunction>> nodes_;
};

bool eval_literal(Literal l, const State& s);
bool eval_clause(const Clause& c, const State& s);
bool eval_cnf(const std::vector<Clause>& clauses, const State& s);
bool eval_boolean_function(const BooleanFunction& f, const State& s);

/// Probability that node i's function outputs True at `s`.
double pbn_true_probability(const Pbn& pbn, std::size_t node, const State& s);

/// Human-readable forms, e.g. "(!x2 | !x1) & (x5 | !x2) & (!x1 | !x5; p=0.667)".
/// `names`, when non-empty, replaces the default x1..xN labels.
std::string to_string(Literal l, const std::vector<std::string>& names = {});
std::string to_string(const Clause& c, const std::vector<std::string>& names = {});
std::string to_string(const ScnfRule& r, const std::vector<std::string>& names = {});

}  // namespace scnf
