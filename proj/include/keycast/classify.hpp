// Connectivity-based node classification used by the protocol planners.
//
// Relative to a dimension d and (optionally) a fixed source, every non-source
// node is either fully connected (connectivity >= d) or partially connected.
// Partial nodes split further:
//   type A  -- direct source neighbors, or nodes whose reachable share set
//              D(j) already spans d distinct owners;
//   type B  -- the rest; they only relay shares owned by others.
// D(j) collects, in node declaration order, the fully/type-A in-neighbors of
// j plus everything relayed by its type-B in-neighbors.
#pragma once

#include <vector>

#include "keycast/instance.hpp"

namespace keycast {

enum class NodeClass { Source, Fully, TypeA, TypeB, Excluded };

struct ConnectivityProfile {
  int d = 0;
  int ell = -1;        // -1 when classification is adversary-independent
  int source = -1;     // fixed source, or -1 for min over all sources
  std::vector<int> conn;        // per node: s->v connectivity (sources/excluded: -1)
  std::vector<NodeClass> cls;   // per node
  std::vector<std::vector<int>> D;  // per node: owner list (partial nodes)
  std::vector<int> partial_in;  // per node: # distinct partial in-neighbors
  int dhat = 0;                 // min connectivity over classified nodes
  int z_obs = 0;                // max partial_in over fully nodes
  int z = 0;                    // min(z_obs, d - ell) when ell >= 0, else z_obs
  std::vector<int> J;           // fully nodes with partial_in > z (ell >= 0 only)
  std::vector<int> p;           // excess partial_in - z, aligned with J

  bool is_fully(int v) const { return cls[v] == NodeClass::Fully; }
  bool is_partial(int v) const {
    return cls[v] == NodeClass::TypeA || cls[v] == NodeClass::TypeB;
  }
};

// Classifies every node reachable in the (optionally source-restricted)
// instance.  When `source` >= 0, all other sources and their edges are
// ignored.  Throws TerminalUnderConnected if some terminal-set member has
// connectivity < d from a relevant source.
ConnectivityProfile classify_nodes(const NetworkInstance& inst, int d, int ell = -1,
                                   int source = -1);

// Largest d every terminal member supports: the minimum, over sources s and
// terminal members t, of the s->t vertex connectivity (other sources excluded
// while measuring from s).
int default_dimension(const NetworkInstance& inst);

}  // namespace keycast
