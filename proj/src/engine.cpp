#include "keycast/engine.hpp"

#include <algorithm>

#include "keycast/errors.hpp"
#include "plan_internal.hpp"

namespace keycast {

SchemeResult execute_plan(const Plan& plan, Rng& rng) {
  const std::uint64_t master = rng.next_u64();
  std::vector<std::uint32_t> state(plan.rand_dim, 0);
  for (std::size_t j = 0; j < plan.source_blocks.size(); ++j) {
    Rng sub = Rng(master).split(j);
    for (int i = plan.source_blocks[j].first; i < plan.source_blocks[j].second; ++i)
      state[i] = sub.uniform(plan.F.q);
  }

  detail::RowOps ops{plan.F, plan.rand_dim};
  SchemeResult res{plan, {}, {}, Rational{0, 1}};
  res.transcript.reserve(plan.transcript.size());
  for (const auto& slot : plan.transcript) {
    std::vector<std::uint32_t> vals;
    vals.reserve(slot.size());
    for (const Row& r : slot) vals.push_back(ops.eval(r, state));
    res.transcript.push_back(std::move(vals));
  }
  for (const auto& rows : plan.keys) {
    std::vector<std::uint32_t> vals;
    vals.reserve(rows.size());
    for (const Row& r : rows) vals.push_back(ops.eval(r, state));
    res.keys.push_back(std::move(vals));
  }
  res.achieved = achieved_rate(res);
  return res;
}

Rational achieved_rate(const SchemeResult& res) {
  if (res.keys.empty()) return Rational{0, 1};
  std::size_t shortest = res.keys.front().size();
  for (const auto& k : res.keys) shortest = std::min(shortest, k.size());
  return Rational::make(static_cast<std::int64_t>(shortest), res.plan.n);
}

SchemeResult run_full_keycast(const NetworkInstance& inst, int d, Rng& rng) {
  Plan plan = compile_plan(inst, "full", d);
  return execute_plan(plan, rng);
}

SchemeResult run_multisource_keycast(const NetworkInstance& inst, int d, Rng& rng) {
  Plan plan = compile_plan(inst, "multisource", d);
  return execute_plan(plan, rng);
}

SchemeResult run_partial_keycast(const NetworkInstance& inst, int d, Rng& rng) {
  Plan plan = compile_plan(inst, "partial", d);
  return execute_plan(plan, rng);
}

SchemeResult run_partial_multisource(const NetworkInstance& inst, int d, Rng& rng) {
  Plan plan = compile_plan(inst, "partial-multisource", d);
  return execute_plan(plan, rng);
}

SchemeResult run_unstructured_keycast(const NetworkInstance& inst, int d, Rng& rng) {
  Plan plan = compile_plan(inst, "unstructured", d);
  return execute_plan(plan, rng);
}

SchemeResult shamir_unicast(const NetworkInstance& inst, int s, int v,
                            const std::vector<std::uint32_t>& x, Rng& rng) {
  Plan plan = compile_shamir_unicast(inst, s, v, x);
  return execute_plan(plan, rng);
}

}  // namespace keycast
