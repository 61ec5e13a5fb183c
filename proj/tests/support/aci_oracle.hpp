#pragma once

#include <vector>

#include "termweave/signature.hpp"
#include "termweave/term.hpp"

namespace twtest {

// Every term reachable from t by single ACI steps (regroup/flatten under
// associative heads, permute commutative args, wrap in or unwrap from a
// one-identity head), breadth-first, bounded by node count and set size.
std::vector<termweave::Term> aci_closure(const termweave::Term &t, const termweave::SignatureTable &sig,
                                         std::size_t max_nodes, std::size_t max_terms);

} // namespace twtest
