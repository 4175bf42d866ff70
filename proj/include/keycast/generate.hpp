// Built-in instance families used by tests, benchmarks, and the CLI:
//
//   fig1          -- two sources feeding two terminals through relays a and b;
//                    a sum key defeats any single non-terminal observer.
//   fig2          -- one source, d-1 relay nodes each d-connected, one terminal.
//   fig2_multi    -- fig2's relay core shared by several sources.
//   type_b_chain  -- a relay chain that only forwards shares owned upstream.
//   partial_mix   -- fully- and partially-connected relays mixed, with an
//                    `extra` knob that pushes one node past the masking bound.
//   random        -- seeded layered DAG with a tunable partial fraction.
#pragma once

#include <cstdint>
#include <string>

#include "keycast/instance.hpp"

namespace keycast {

struct GenParams {
  std::uint32_t q = 5;
  int d = 3;        // connectivity parameter (fig2, type_b_chain, partial_mix)
  int ell = 1;
  int x = 0;        // eavesdropped-source bound (fig2_multi)
  int sources = 2;  // source count (fig2_multi)
  int len = 2;      // chain length (type_b_chain)
  int extra = 0;    // extra partial parents of node j (partial_mix)
};

NetworkInstance generate_canonical(const std::string& kind, const GenParams& p = {});

NetworkInstance generate_random(std::uint64_t seed, int node_count, int d_target,
                                double partial_fraction, std::uint32_t q, int ell);

}  // namespace keycast
