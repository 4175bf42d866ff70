// Exact secrecy audits.
//
// For every admissible eavesdropper set beta (at most `ell` non-source nodes
// and at most `x` sources, disjoint from the audited terminal set, the empty
// set included, plus any explicit `eaves` declarations), the auditor
// enumerates the full randomness state space, tallies exact integer joint
// counts of (key, observation), and declares independence only when
// count(k,o) * total == count(k) * count(o) holds for every cell.  The
// mutual-information figure is a floating-point diagnostic; verdicts never
// depend on it.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "keycast/plan.hpp"

namespace keycast {

struct MiResult {
  bool is_zero = true;
  double bits = 0.0;
};

// Exact independence test over integer joint counts, keys = (key, observation).
MiResult exact_mutual_information(
    const std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t>& joint);

struct BetaReport {
  int tset = 0;                // audited terminal set (0-based)
  std::vector<int> beta;       // observed nodes, ascending
  std::uint64_t states = 0;    // states enumerated (or samples drawn)
  bool is_zero = false;
  double mi_bits = 0.0;
  bool sampled = false;        // advisory Monte-Carlo row, not a proof
};

struct AuditOptions {
  std::uint64_t budget = 100000000;  // max total enumerated states
  int threads = 0;                   // 0 = hardware concurrency
  std::uint64_t samples = 0;         // > 0: sampled advisory audit instead
  std::uint64_t sample_seed = 1;
};

struct AuditReport {
  std::string scheme;
  std::vector<BetaReport> rows;
  bool all_zero = true;
  bool exact = true;  // false when sampling was used
};

// Every admissible eavesdropper node set for the given terminal set,
// deterministically ordered (by size, then lexicographically).
std::vector<std::vector<int>> admissible_betas(const NetworkInstance& inst, int tset);

// Observation rows of an eavesdropper: all symbols on edges incident to beta
// plus the full randomness block of every eavesdropped source.
std::vector<Row> observation_rows(const Plan& plan, const std::vector<int>& beta);

AuditReport audit_scheme(const Plan& plan, const AuditOptions& opts = {});

}  // namespace keycast
