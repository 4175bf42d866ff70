// Brute-force validators for the algebraic facts the schemes rest on, checked
// by exhaustive enumeration at small sizes.
#pragma once

#include <cstdint>
#include <string>

#include "keycast/instance.hpp"
#include "keycast/rational.hpp"

namespace keycast {

struct LemmaReport {
  bool pass = false;
  std::uint64_t cases = 0;   // enumerated objects (matrices, systems, ...)
  std::string detail;        // human-readable summary of what was counted
};

// which = 1: conditioned symmetric matrices biject onto the smaller symmetric
//            space under every invertible change of basis (key uniformity).
// which = 2: for each pair of distinct evaluation indices, enumerated
//            independence of a key symbol from ell observed symbols matches
//            the algebraic surjectivity criterion, and at least one pair is
//            independent.
// which = 4: a uniform rectangular matrix times a fixed full-rank Vandermonde
//            covers its range evenly (multisource key combining).
// Parameters n, m only matter for which = 4; negative values scan a default
// small grid.
LemmaReport verify_matrix_lemma(int which, int d, int ell, std::uint32_t q, int n = -1,
                                int m = -1);

struct ConverseReport {
  double key_entropy_bits = 0.0;
  double bound_bits = 0.0;   // (d - ell) * log2(q)
  bool uniform = false;      // key marginal exactly uniform
  bool tight = false;        // entropy meets the bound at blocklength 1
  std::uint64_t states = 0;
};

// Runs the full scheme on the instance and compares exact key entropy to the
// single-use upper bound (d - ell) * log2 q.
ConverseReport converse_check(const NetworkInstance& inst, int d,
                              std::uint64_t budget = 100000000);

}  // namespace keycast
