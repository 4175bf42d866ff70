// Scheme execution: compile an instance into a Plan, draw randomness, and
// evaluate every symbol.  The run_* entry points mirror the scheme families;
// run_partial_keycast and run_unstructured_keycast route to the plain full
// scheme when the network has no partially-connected nodes.
#pragma once

#include <cstdint>
#include <vector>

#include "keycast/plan.hpp"
#include "keycast/rational.hpp"
#include "keycast/rng.hpp"

namespace keycast {

struct SchemeResult {
  Plan plan;
  std::vector<std::vector<std::uint32_t>> transcript;  // values per edge slot
  std::vector<std::vector<std::uint32_t>> keys;        // values per terminal set
  Rational achieved{0, 1};
};

// Draws one sub-stream of randomness per source and evaluates the plan.
SchemeResult execute_plan(const Plan& plan, Rng& rng);

SchemeResult run_full_keycast(const NetworkInstance& inst, int d, Rng& rng);
SchemeResult run_multisource_keycast(const NetworkInstance& inst, int d, Rng& rng);
SchemeResult run_partial_keycast(const NetworkInstance& inst, int d, Rng& rng);
SchemeResult run_partial_multisource(const NetworkInstance& inst, int d, Rng& rng);
SchemeResult run_unstructured_keycast(const NetworkInstance& inst, int d, Rng& rng);

// Delivers payload x from s to v; reconstruction happens at v, and any ell
// observed shares are uniform and payload-independent.
SchemeResult shamir_unicast(const NetworkInstance& inst, int s, int v,
                            const std::vector<std::uint32_t>& x, Rng& rng);

// Worst terminal set's key symbols per blocklength symbol.
Rational achieved_rate(const SchemeResult& res);

}  // namespace keycast
