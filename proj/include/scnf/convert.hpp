#pragma once

#include "scnf/core.hpp"

namespace scnf {

inline constexpr std::size_t kMaxStochasticForPbn = 20;

/// One function per subset of each node's stochastic clauses (subsets by
/// size, then lexicographically): the deterministic part conjoined with the
/// subset, selected with probability prod p (in) * prod (1 - p) (out).
/// Truth tables range over the nodes the function actually reads.
Pbn scnfn_to_pbn(const ScnfNetwork& net, std::size_t max_stochastic = kMaxStochasticForPbn);

/// For each node and each state, the full clause falsified only by that
/// state, activated with q = 1 - P(node True | state). Clauses with q = 1
/// become deterministic; clauses with q = 0 are omitted.
ScnfNetwork pbn_to_scnfn(const Pbn& pbn);

}  // namespace scnf
