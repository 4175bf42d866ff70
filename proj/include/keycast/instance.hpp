// Directed-acyclic multigraph instances: named nodes in declaration order,
// expanded parallel edges, a source set, disjoint terminal sets, and the
// adversary parameters (ell = max non-source nodes observed, x = max sources
// observed).  Instances are immutable value types once built; every analysis
// is a pure function over them.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace keycast {

struct NetworkInstance {
  std::string name;                       // report identifier (path or generator tag)
  std::uint32_t q = 0;                    // field modulus
  std::vector<std::string> node_names;    // declaration order
  std::vector<bool> source;               // per node
  struct Edge {
    int tail = -1, head = -1;
  };
  std::vector<Edge> edges;                // parallel edges expanded, declaration order
  std::vector<std::vector<int>> tsets;    // terminal sets (0-based), node indices
  int ell = 0;
  int x = 0;
  std::vector<std::vector<int>> eaves;    // optional explicit eavesdropper sets

  int size() const { return static_cast<int>(node_names.size()); }
  int find_node(const std::string& name) const;
  std::vector<int> sources() const;

  // Terminal set index for a node (0-based), or -1.  Assumes disjoint sets
  // (validated); if a node appears in several sets the first wins.
  int terminal_of(int v) const;

  // Edge indices grouped by endpoint, in declaration order.
  std::vector<std::vector<int>> out_slots() const;
  std::vector<std::vector<int>> in_slots() const;

  // Distinct in/out neighbor node lists in declaration order of the node ids.
  std::vector<std::vector<int>> in_neighbors() const;
  std::vector<std::vector<int>> out_neighbors() const;
};

// Returns every violated structural invariant (empty means valid).
// Violations are data, not exceptions.
std::vector<std::string> validate_instance(const NetworkInstance& inst);

// Deterministic topological order (Kahn; ties broken by declaration order).
// Throws Error("CycleDetected") carrying a witness cycle in the message.
std::vector<int> topological_order(const NetworkInstance& inst);

}  // namespace keycast
