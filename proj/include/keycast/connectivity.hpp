// Vertex connectivity and vertex-disjoint path packings on acyclic
// multigraphs.  Connectivity between s and v is the maximum number of
// directed s->v paths that share no intermediate node (parallel edges count
// separately; endpoints are never capacity-limited).  Computed by max-flow on
// the standard node-split graph; a brute-force packing search is provided as
// an independent cross-check for small instances.
#pragma once

#include <vector>

#include "keycast/instance.hpp"

namespace keycast {

struct FlowOpts {
  // Per-edge enable mask (size = inst.edges.size()); null means all enabled.
  const std::vector<char>* edge_enabled = nullptr;
  // Per-node enable mask; disabled nodes contribute no arcs at all.
  const std::vector<char>* node_enabled = nullptr;
};

struct PathSet {
  int count = 0;
  // Each path is a list of edge indices from s to v, vertex-disjoint except
  // at the endpoints.  Deterministic: lowest-numbered edges are preferred.
  std::vector<std::vector<int>> paths;
};

// Maximum packing of internally vertex-disjoint s->v paths.
// Throws UnknownNode for out-of-range ids and BadParams when s == v.
PathSet disjoint_paths(const NetworkInstance& inst, int s, int v, const FlowOpts& opts = {});

int vertex_connectivity(const NetworkInstance& inst, int s, int v, const FlowOpts& opts = {});

// Exhaustive packing search; exponential, for cross-checks on small graphs.
int vertex_connectivity_bruteforce(const NetworkInstance& inst, int s, int v,
                                   const FlowOpts& opts = {});

}  // namespace keycast
