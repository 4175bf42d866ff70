// Shared machinery for the scheme planners: affine-row algebra over the
// randomness state, symmetric-matrix variable blocks, decode-system solving,
// and the evaluation-index / column allocation policies.  Internal to src/.
#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "keycast/errors.hpp"
#include "keycast/matrix.hpp"
#include "keycast/plan.hpp"

namespace keycast {
namespace detail {

using Col = std::vector<std::uint32_t>;

// Row algebra in a fixed ambient dimension (rand_dim + 1 slots, constant last).
struct RowOps {
  const Field& F;
  int dim;

  Row zero() const { return Row(dim + 1, 0); }

  Row unit(int var) const {
    Row r = zero();
    r[var] = 1;
    return r;
  }

  Row constant(std::uint32_t c) const {
    Row r = zero();
    r[dim] = c;
    return r;
  }

  void axpy(Row& acc, std::uint32_t c, const Row& r) const {
    if (c == 0) return;
    for (int i = 0; i <= dim; ++i) acc[i] = F.add(acc[i], F.mul(c, r[i]));
  }

  std::uint32_t eval(const Row& r, const std::vector<std::uint32_t>& state) const {
    std::uint64_t acc = r[dim];
    for (int i = 0; i < dim; ++i)
      if (r[i]) acc += static_cast<std::uint64_t>(r[i]) * state[i];
    return F.reduce(acc);
  }
};

// A symmetric dim x dim matrix whose upper-triangle entries are consecutive
// state variables starting at `base` (row-major upper order).
struct SymBlock {
  int base = 0;
  int dim = 0;

  int vars() const { return sym_upper_count(dim); }

  int var(int i, int j) const {
    if (i > j) std::swap(i, j);
    return base + i * dim - i * (i - 1) / 2 + (j - i);
  }

  // Row of v^T M u as a functional of the matrix entries.
  Row bilinear(const RowOps& ops, const Col& v, const Col& u) const {
    const Field& F = ops.F;
    Row r = ops.zero();
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        std::uint32_t c = (i == j) ? F.mul(v[i], u[i])
                                   : F.add(F.mul(v[i], u[j]), F.mul(v[j], u[i]));
        if (c) r[var(i, j)] = F.add(r[var(i, j)], c);
      }
    return r;
  }

  // Rows of M v (the share a node with column v reconstructs).
  std::vector<Row> matvec(const RowOps& ops, const Col& v) const {
    const Field& F = ops.F;
    std::vector<Row> rows(dim, ops.zero());
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        if (v[j] == 0) continue;
        int k = var(i, j);
        rows[i][k] = F.add(rows[i][k], v[j]);
      }
    return rows;
  }
};

// dot(v, share): the symbol a node with share rows `share` sends toward a
// recipient whose column is v.
inline Row project(const RowOps& ops, const Col& v, const std::vector<Row>& share) {
  Row r = ops.zero();
  for (std::size_t i = 0; i < v.size(); ++i) ops.axpy(r, v[i], share[i]);
  return r;
}

inline bool rows_equal(const std::vector<Row>& a, const std::vector<Row>& b) {
  return a == b;
}

// Incremental rank tracking over F_q column vectors (row-reduced basis).
struct RankTracker {
  const Field& F;
  explicit RankTracker(const Field& f) : F(f) {}
  std::vector<Col> basis;

  // Returns true (and absorbs c) iff c is independent of the basis so far.
  bool add(Col c) {
    for (const Col& b : basis) {
      // eliminate using b's pivot
      std::size_t p = 0;
      while (p < b.size() && b[p] == 0) ++p;
      if (p < c.size() && c[p]) {
        std::uint32_t f = c[p];  // b[p] == 1 after normalization
        for (std::size_t i = p; i < c.size(); ++i) c[i] = F.sub(c[i], F.mul(f, b[i]));
      }
    }
    std::size_t p = 0;
    while (p < c.size() && c[p] == 0) ++p;
    if (p == c.size()) return false;
    std::uint32_t inv = F.inv(c[p]);
    for (std::size_t i = p; i < c.size(); ++i) c[i] = F.mul(c[i], inv);
    basis.push_back(std::move(c));
    std::sort(basis.begin(), basis.end(), [](const Col& x, const Col& y) {
      return std::find_if(x.begin(), x.end(), [](std::uint32_t v) { return v != 0; }) -
                 x.begin() <
             std::find_if(y.begin(), y.end(), [](std::uint32_t v) { return v != 0; }) -
                 y.begin();
    });
    return true;
  }

  int rank() const { return static_cast<int>(basis.size()); }
};

// One received symbol: the decode-system column it sits under and its row.
struct Received {
  Col col;
  Row row;
};

// Greedy decode: scan received symbols in order, keep the first `need`
// whose columns are independent, solve the square system for the share rows.
// Throws Error(kind, code) naming `site` when fewer than `need` independent
// columns arrive.
std::vector<Row> decode_share(const RowOps& ops, const Field& F, int need,
                              const std::vector<Received>& recv, const std::string& site,
                              ErrorKind kind = ErrorKind::Feasibility,
                              const char* code = "FieldTooSmall");

// Terminal-sets-first evaluation-index assignment.
struct IdentityMap {
  std::vector<int> node_alpha;  // per node; -1 for sources
  std::vector<int> set_alpha;   // per terminal set
  bool collisions = false;
  IdentityMap(const Field& F, const NetworkInstance& inst);
};

// Fresh-then-wrap auxiliary evaluation indices (one per source-edge column).
// Fresh values skip identities; after exhaustion the allocator prefers
// non-identity values outside `avoid`, then identity values outside `avoid`.
struct AuxAllocator {
  const Field& F;
  std::set<std::uint32_t> identity_values;
  std::uint32_t fresh = 0;

  AuxAllocator(const Field& f, const IdentityMap& ids);
  std::uint32_t take(const std::set<std::uint32_t>& avoid, const std::string& site);
};

// value -> column by little-endian base-q digits (the lex order of F_q^d).
Col lex_col(const Field& F, std::uint64_t value, int height);

// Scheme planners (one translation unit each).
Plan compile_full(const NetworkInstance& inst, int d);
Plan compile_multisource(const NetworkInstance& inst, int d);
Plan compile_partial_family(const NetworkInstance& inst, int d, bool allow_overflow,
                            bool multisource);
Plan compile_fig1(const NetworkInstance& inst, bool multicast_control);

// Identity columns for both allocation modes.  Vandermonde mode when d <= q;
// otherwise the lex-ordered general-column schedule (terminal sets first,
// node columns forced off the key projection span).
struct ColumnScheme {
  bool fallback = false;
  IdentityMap ids;
  std::vector<Col> node_cols;  // empty entries for sources
  std::vector<Col> set_cols;
  ColumnScheme(const Field& F, const NetworkInstance& inst, int d, int ell);
};

// One full-connectivity distribution pass: source `s` spreads the symmetric
// block M, every enabled non-source node decodes its share M u_v, and each
// terminal set banks the first d - ell rows.  Appends one symbol per enabled
// edge slot to plan.transcript and returns the per-terminal-set key rows.
std::vector<std::vector<Row>> full_pass(Plan& plan, const RowOps& ops,
                                        const ColumnScheme& cols, const SymBlock& M, int s,
                                        const std::vector<char>& enabled);

}  // namespace detail
}  // namespace keycast
