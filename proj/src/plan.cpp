#include "keycast/plan.hpp"

#include <algorithm>

#include "keycast/errors.hpp"
#include "plan_internal.hpp"

namespace keycast {

namespace detail {

std::vector<Row> decode_share(const RowOps& ops, const Field& F, int need,
                              const std::vector<Received>& recv, const std::string& site,
                              ErrorKind kind, const char* code) {
  RankTracker tracker(F);
  std::vector<const Received*> picked;
  for (const auto& r : recv) {
    if (tracker.add(r.col)) {
      picked.push_back(&r);
      if (static_cast<int>(picked.size()) == need) break;
    }
  }
  if (static_cast<int>(picked.size()) < need)
    throw Error(kind, code,
                "decode system at " + site + " has only " + std::to_string(picked.size()) +
                    " independent columns of " + std::to_string(need) + " needed");

  Mat A(need, need);
  for (int i = 0; i < need; ++i)
    for (int j = 0; j < need; ++j) A.at(i, j) = picked[i]->col[j];
  Mat inv = mat_inverse(F, A, site);

  std::vector<Row> share(need, ops.zero());
  for (int i = 0; i < need; ++i)
    for (int k = 0; k < need; ++k) ops.axpy(share[i], inv.at(i, k), picked[k]->row);
  return share;
}

IdentityMap::IdentityMap(const Field& F, const NetworkInstance& inst) {
  const int n = inst.size();
  node_alpha.assign(n, -1);
  set_alpha.assign(inst.tsets.size(), -1);

  // Which nodes share a child (their columns meet in that child's system).
  auto share_child = [&](int a, int b) {
    for (const auto& e1 : inst.edges)
      if (e1.tail == a)
        for (const auto& e2 : inst.edges)
          if (e2.tail == b && e2.head == e1.head) return true;
    return false;
  };

  std::uint32_t next = 0;
  for (std::size_t t = 0; t < inst.tsets.size(); ++t) {
    if (next < F.q) {
      set_alpha[t] = static_cast<int>(next++);
    } else {
      collisions = true;
      set_alpha[t] = static_cast<int>(next++ % F.q);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (inst.source[v] || inst.terminal_of(v) >= 0) continue;
    if (next < F.q) {
      node_alpha[v] = static_cast<int>(next++);
      continue;
    }
    collisions = true;
    // Wrap: smallest value not already used by a co-parent of v.
    std::set<std::uint32_t> avoid;
    for (int u = 0; u < n; ++u)
      if (u != v && node_alpha[u] >= 0 && share_child(u, v))
        avoid.insert(static_cast<std::uint32_t>(node_alpha[u]));
    std::uint32_t pick = 0;
    while (pick < F.q && avoid.count(pick)) ++pick;
    node_alpha[v] = static_cast<int>(pick < F.q ? pick : 0);
  }

  for (int v = 0; v < n; ++v) {
    int t = inst.terminal_of(v);
    if (t >= 0) node_alpha[v] = set_alpha[t];
  }
}

AuxAllocator::AuxAllocator(const Field& f, const IdentityMap& ids) : F(f) {
  for (int a : ids.node_alpha)
    if (a >= 0) identity_values.insert(static_cast<std::uint32_t>(a));
  for (int a : ids.set_alpha)
    if (a >= 0) identity_values.insert(static_cast<std::uint32_t>(a));
}

std::uint32_t AuxAllocator::take(const std::set<std::uint32_t>& avoid,
                                 const std::string& site) {
  while (fresh < F.q && identity_values.count(fresh)) ++fresh;
  if (fresh < F.q) return fresh++;
  // Wrapped: prefer non-identity values, then identity values, skipping avoid.
  for (std::uint32_t v = 0; v < F.q; ++v)
    if (!identity_values.count(v) && !avoid.count(v)) return v;
  for (std::uint32_t v = 0; v < F.q; ++v)
    if (!avoid.count(v)) return v;
  throw_error(ErrorKind::Feasibility, "FieldTooSmall",
              "decode system at " + site + " needs more than q = " + std::to_string(F.q) +
                  " distinct evaluation indices");
}

Col lex_col(const Field& F, std::uint64_t value, int height) {
  Col c(height);
  for (int i = 0; i < height; ++i) {
    c[i] = static_cast<std::uint32_t>(value % F.q);
    value /= F.q;
  }
  return c;
}

ColumnScheme::ColumnScheme(const Field& F, const NetworkInstance& inst, int d, int ell)
    : ids(F, inst) {
  const int n = inst.size();
  node_cols.assign(n, {});
  set_cols.assign(inst.tsets.size(), {});

  // Vandermonde columns need d <= q (decoding inverts d x d index minors) and
  // one distinct evaluation index per terminal set and relay; wrapping indices
  // instead would hand some relay a terminal's column, i.e. its share would BE
  // the key column.  When the index space is too small, switch to the general
  // schedule.
  int identity_demand = static_cast<int>(inst.tsets.size());
  for (int v = 0; v < n; ++v)
    if (!inst.source[v] && inst.terminal_of(v) < 0) ++identity_demand;
  fallback = d > static_cast<int>(F.q) || identity_demand > static_cast<int>(F.q);

  if (!fallback) {
    for (std::size_t t = 0; t < inst.tsets.size(); ++t)
      set_cols[t] = vandermonde_column(F, static_cast<std::uint32_t>(ids.set_alpha[t]), d);
    for (int v = 0; v < n; ++v)
      if (ids.node_alpha[v] >= 0)
        node_cols[v] = vandermonde_column(F, static_cast<std::uint32_t>(ids.node_alpha[v]), d);
    return;
  }

  // General-column schedule: lex order over F_q^d \ {0}.  Terminal sets take
  // the first vectors; each relay then takes the first unused vector that
  // (a) has support outside the key projection span (coordinates
  //     0..d-ell-1), so no relay's column can reproduce a key functional, and
  // (b) keeps every child's decode system solvable: a node inverts the
  //     columns of its non-source parents, topped up by adaptively chosen
  //     source-edge columns, so the assigned parent columns of each child
  //     must stay jointly independent until their rank covers d minus the
  //     child's guaranteed direct source in-degree.
  std::uint64_t pool = 1;
  for (int i = 0; i < d; ++i) pool *= F.q;  // d, q tiny here by construction
  std::set<std::uint64_t> used;
  auto next_value = [&]() -> std::uint64_t {
    for (std::uint64_t v = 1; v < pool; ++v)
      if (!used.count(v)) return v;
    throw_error(ErrorKind::Feasibility, "FieldTooSmall",
                "general column schedule exhausted: q^d = " + std::to_string(pool) +
                    " columns cannot cover the network");
  };
  for (std::size_t t = 0; t < inst.tsets.size(); ++t) {
    std::uint64_t v = next_value();
    used.insert(v);
    set_cols[t] = lex_col(F, v, d);
  }
  for (int v = 0; v < n; ++v) {
    int t = inst.terminal_of(v);
    if (t >= 0) node_cols[v] = set_cols[t];
  }

  // Worst-case direct source support per node: every scheme pass enables one
  // source at a time, so only the thinnest source connection is guaranteed.
  const auto srcs = inst.sources();
  std::vector<int> src_support(n, 0);
  if (!srcs.empty()) {
    std::vector<std::vector<int>> per_src(srcs.size(), std::vector<int>(n, 0));
    for (const auto& e : inst.edges)
      for (std::size_t j = 0; j < srcs.size(); ++j)
        if (e.tail == srcs[j]) ++per_src[j][e.head];
    for (int w = 0; w < n; ++w) {
      src_support[w] = per_src[0][w];
      for (std::size_t j = 1; j < srcs.size(); ++j)
        src_support[w] = std::min(src_support[w], per_src[j][w]);
    }
  }

  const auto in_nb = inst.in_neighbors();
  const auto out_nb = inst.out_neighbors();
  for (int v = 0; v < n; ++v) {
    if (inst.source[v] || inst.terminal_of(v) >= 0) continue;
    std::uint64_t pick = 0;
    for (std::uint64_t val = 1; val < pool && pick == 0; ++val) {
      if (used.count(val)) continue;
      Col c = lex_col(F, val, d);
      if (ell > 0) {
        // At ell = 0 no relay is ever observed, so the off-span restriction
        // (which would exclude every vector) is unnecessary.
        bool outside = false;
        for (int i = d - ell; i < d; ++i) outside = outside || (c[i] != 0);
        if (!outside) continue;
      }
      bool ok = true;
      for (int w : out_nb[v]) {
        const int need = std::max(0, d - std::min(src_support[w], d));
        RankTracker parents(F);
        for (int u : in_nb[w])
          if (!inst.source[u] && u != v && !node_cols[u].empty())
            parents.add(node_cols[u]);
        if (parents.rank() >= need) continue;
        if (!parents.add(c)) {
          ok = false;
          break;
        }
      }
      if (ok) pick = val;
    }
    if (pick == 0)
      throw_error(ErrorKind::Feasibility, "FieldTooSmall",
                  "no admissible general column for node '" + inst.node_names[v] +
                      "' in F_q^d with q = " + std::to_string(F.q) +
                      ", d = " + std::to_string(d));
    used.insert(pick);
    node_cols[v] = lex_col(F, pick, d);
  }
}

}  // namespace detail

std::uint64_t Plan::state_count() const {
  std::uint64_t total = 1;
  for (int i = 0; i < rand_dim; ++i) {
    if (total > UINT64_MAX / F.q) return UINT64_MAX;
    total *= F.q;
  }
  return total;
}

Plan compile_plan(const NetworkInstance& inst, const std::string& scheme, int d) {
  auto bad = validate_instance(inst);
  if (!bad.empty())
    throw_error(ErrorKind::Validation, "BadParams", "invalid instance: " + bad.front());
  if (d < 1) throw_error(ErrorKind::Validation, "BadParams", "dimension d must be >= 1");
  if (scheme != "fig1" && scheme != "fig1_multicast" && inst.ell >= d)
    throw_error(ErrorKind::Validation, "BadParams",
                "adversary bound ell = " + std::to_string(inst.ell) +
                    " must be below d = " + std::to_string(d));

  if (scheme == "full") return detail::compile_full(inst, d);
  if (scheme == "multisource") return detail::compile_multisource(inst, d);
  if (scheme == "partial") return detail::compile_partial_family(inst, d, false, false);
  if (scheme == "partial-multisource")
    return detail::compile_partial_family(inst, d, false, true);
  if (scheme == "unstructured") return detail::compile_partial_family(inst, d, true, false);
  if (scheme == "fig1") return detail::compile_fig1(inst, false);
  if (scheme == "fig1_multicast") return detail::compile_fig1(inst, true);
  throw_error(ErrorKind::Validation, "BadParams", "unknown scheme '" + scheme + "'");
}

}  // namespace keycast
