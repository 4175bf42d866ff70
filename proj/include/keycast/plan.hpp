// Compiled key-cast schemes.
//
// A Plan is the exact algebraic object a scheme run produces: every symbol a
// node ever sends, and every key symbol a terminal outputs, is an affine
// functional of the scheme's randomness state (matrix entries, masking
// symbols).  Compiling once and treating symbols as rows gives three things
// for free: executing with a seed is evaluation, replay is byte-identical,
// and secrecy auditing is exact enumeration of the state space.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "keycast/classify.hpp"
#include "keycast/field.hpp"
#include "keycast/instance.hpp"
#include "keycast/rational.hpp"

namespace keycast {

// Affine functional: one coefficient per state variable, constant term last.
using Row = std::vector<std::uint32_t>;

struct Plan {
  NetworkInstance inst;
  Field F;
  std::string scheme;  // full | multisource | partial | partial-multisource |
                       // unstructured | fig1 | shamir
  int d = 0, ell = 0, x = 0;
  int z = 0;           // masking depth of the short matrix (partial schemes)
  int dhat = 0;        // minimum node connectivity
  int kappa = 0;       // key symbols per terminal set per source
  int n = 1;           // symbols on the busiest edge (blocklength)
  Rational formula{0, 1};  // guaranteed rate for this scheme family

  int rand_dim = 0;
  std::vector<std::pair<int, int>> source_blocks;  // per source: [begin,end) vars
  std::vector<std::vector<Row>> transcript;        // per edge slot, send order
  std::vector<std::vector<Row>> keys;              // per terminal set

  bool identity_collisions = false;  // evaluation indices wrapped modulo q
  std::vector<std::string> notes;
  std::vector<int> alpha_node;  // evaluation index per node (-1 for sources)
  std::vector<int> alpha_set;   // evaluation index per terminal set

  // Partial-scheme artifacts kept for reporting and white-box tests.
  std::vector<NodeClass> node_class;
  std::vector<std::vector<int>> jhat;   // per node: retained type-B parents
  std::vector<std::map<int, int>> eta;  // per node: type-B parent -> share owner

  explicit Plan(NetworkInstance i) : inst(std::move(i)), F(inst.q) {}

  std::uint64_t state_count() const;  // q^rand_dim, saturating at UINT64_MAX
};

// Compiles `scheme` (one of the ids above except fig1/shamir use their own
// entry points) against the instance.  Routing notes land in plan.notes.
Plan compile_plan(const NetworkInstance& inst, const std::string& scheme, int d);

// Masked point-to-point delivery of a fixed payload from s to v: payload
// symbols ride polynomial shares over vertex-disjoint paths; any ell shares
// stay independent of the payload.  The payload enters the rows as constants;
// the masks are the only state variables.
Plan compile_shamir_unicast(const NetworkInstance& inst, int s, int v,
                            const std::vector<std::uint32_t>& payload);

}  // namespace keycast
