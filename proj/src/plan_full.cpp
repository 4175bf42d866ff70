#include <algorithm>
#include <string>
#include <vector>

#include "keycast/classify.hpp"
#include "keycast/errors.hpp"
#include "keycast/plan.hpp"
#include "plan_internal.hpp"

namespace keycast {
namespace detail {

std::vector<std::vector<Row>> full_pass(Plan& plan, const RowOps& ops,
                                        const ColumnScheme& cols, const SymBlock& M, int s,
                                        const std::vector<char>& enabled) {
  const NetworkInstance& inst = plan.inst;
  const Field& F = plan.F;
  const int n = inst.size();
  const int d = plan.d;

  AuxAllocator aux(F, cols.ids);
  std::vector<std::vector<Row>> share(n);
  const auto in_nb = inst.in_neighbors();

  for (int v : topological_order(inst)) {
    if (!enabled[v] || inst.source[v]) continue;
    const Col& uv = cols.node_cols[v];

    std::vector<Received> recv;
    std::set<std::uint32_t> chosen_alpha;
    RankTracker chosen_cols(F);
    if (cols.fallback)
      for (int u : in_nb[v])
        if (enabled[u] && !inst.source[u]) chosen_cols.add(cols.node_cols[u]);

    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
      if (inst.edges[e].head != v || !enabled[inst.edges[e].tail]) continue;
      const int p = inst.edges[e].tail;
      Row sym;
      Col col;
      if (p == s) {
        const std::string site =
            "slot " + inst.node_names[p] + "->" + inst.node_names[v] + "#" +
            std::to_string(recv.size());
        if (!cols.fallback) {
          std::set<std::uint32_t> avoid = chosen_alpha;
          for (int u : in_nb[v])
            if (enabled[u] && !inst.source[u] && cols.ids.node_alpha[u] >= 0)
              avoid.insert(static_cast<std::uint32_t>(cols.ids.node_alpha[u]));
          std::uint32_t a = aux.take(avoid, site);
          chosen_alpha.insert(a);
          col = vandermonde_column(F, a, d);
        } else {
          std::uint64_t pool = 1;
          for (int i = 0; i < d; ++i) pool *= F.q;
          std::uint64_t pick = 0;
          for (std::uint64_t val = 1; val < pool; ++val) {
            RankTracker probe = chosen_cols;
            if (probe.add(lex_col(F, val, d))) {
              pick = val;
              break;
            }
          }
          if (pick == 0)
            throw_error(ErrorKind::Feasibility, "FieldTooSmall",
                        "no independent source column left at " + site);
          col = lex_col(F, pick, d);
          chosen_cols.add(col);
        }
        sym = M.bilinear(ops, col, uv);
      } else {
        if (inst.source[p])
          throw_error(ErrorKind::Internal, "Internal",
                      "unexpected extra source feeding '" + inst.node_names[v] + "'");
        col = cols.node_cols[p];
        sym = project(ops, uv, share[p]);
      }
      plan.transcript[e].push_back(sym);
      recv.push_back(Received{std::move(col), std::move(sym)});
    }

    share[v] = decode_share(ops, F, d, recv, "node '" + inst.node_names[v] + "'");
    if (!rows_equal(share[v], M.matvec(ops, uv)))
      throw_error(ErrorKind::Internal, "Internal",
                  "decoded share disagrees with ground truth at node '" +
                      inst.node_names[v] + "'");
  }

  std::vector<std::vector<Row>> keys(inst.tsets.size());
  const int keep = d - plan.ell;
  for (std::size_t ti = 0; ti < inst.tsets.size(); ++ti) {
    const auto& ts = inst.tsets[ti];
    std::vector<Row> rows(share[ts.front()].begin(), share[ts.front()].begin() + keep);
    for (int t : ts) {
      std::vector<Row> mine(share[t].begin(), share[t].begin() + keep);
      if (!rows_equal(mine, rows))
        throw_error(ErrorKind::Internal, "Internal",
                    "terminal set members disagree on the key at '" + inst.node_names[t] +
                        "'");
    }
    keys[ti] = std::move(rows);
  }
  return keys;
}

Plan compile_full(const NetworkInstance& inst, int d) {
  Plan plan(inst);
  const auto srcs = plan.inst.sources();
  if (srcs.size() != 1)
    throw_error(ErrorKind::Validation, "BadParams",
                "full scheme expects exactly one source, found " +
                    std::to_string(srcs.size()) + " (use the multisource scheme)");

  auto pr = classify_nodes(plan.inst, d);
  for (int v = 0; v < plan.inst.size(); ++v)
    if (!plan.inst.source[v] && pr.cls[v] != NodeClass::Fully)
      throw_error(ErrorKind::Feasibility, "ConnectivityViolation",
                  "node '" + plan.inst.node_names[v] + "' has connectivity " +
                      std::to_string(pr.conn[v]) + " < d = " + std::to_string(d) +
                      "; the full scheme needs every node fully connected");

  plan.scheme = "full";
  plan.d = d;
  plan.ell = plan.inst.ell;
  plan.x = plan.inst.x;
  plan.z = 0;
  plan.dhat = pr.dhat;
  plan.kappa = d - plan.ell;
  plan.formula = Rational::make(d - plan.ell, 1);
  plan.node_class = pr.cls;

  SymBlock M{0, d};
  plan.rand_dim = M.vars();
  plan.source_blocks = {{0, plan.rand_dim}};
  plan.transcript.assign(plan.inst.edges.size(), {});

  ColumnScheme cols(plan.F, plan.inst, d, plan.ell);
  RowOps ops{plan.F, plan.rand_dim};
  std::vector<char> enabled(plan.inst.size(), 1);
  plan.keys = full_pass(plan, ops, cols, M, srcs[0], enabled);

  plan.n = 1;
  for (const auto& slot : plan.transcript)
    plan.n = std::max(plan.n, static_cast<int>(slot.size()));
  plan.identity_collisions = cols.ids.collisions;
  plan.alpha_node = cols.ids.node_alpha;
  plan.alpha_set = cols.ids.set_alpha;
  if (cols.fallback)
    plan.notes.push_back("general column schedule engaged (too few field elements for distinct identities)");
  return plan;
}

Plan compile_multisource(const NetworkInstance& inst, int d) {
  Plan plan(inst);
  const auto srcs = plan.inst.sources();
  const int k = static_cast<int>(srcs.size());
  if (plan.inst.x >= k)
    throw_error(ErrorKind::Validation, "TooManySourcesEavesdropped",
                "x = " + std::to_string(plan.inst.x) + " of " + std::to_string(k) +
                    " sources eavesdropped; at least one source must stay hidden");
  if (static_cast<std::uint32_t>(k) > plan.F.q)
    throw_error(ErrorKind::Feasibility, "FieldTooSmall",
                "combining matrix needs q >= the number of sources (" +
                    std::to_string(k) + "), q = " + std::to_string(plan.F.q));

  plan.scheme = "multisource";
  plan.d = d;
  plan.ell = plan.inst.ell;
  plan.x = plan.inst.x;
  plan.z = 0;
  plan.kappa = d - plan.ell;
  plan.formula = Rational::make(static_cast<long long>(d - plan.ell) * (k - plan.inst.x),
                                k);

  SymBlock probe{0, d};
  plan.rand_dim = k * probe.vars();
  for (int j = 0; j < k; ++j)
    plan.source_blocks.push_back({j * probe.vars(), (j + 1) * probe.vars()});
  plan.transcript.assign(plan.inst.edges.size(), {});

  ColumnScheme cols(plan.F, plan.inst, d, plan.ell);
  RowOps ops{plan.F, plan.rand_dim};
  plan.dhat = d;

  std::vector<std::vector<std::vector<Row>>> per_pass;  // [pass][tset][row]
  for (int j = 0; j < k; ++j) {
    auto pr = classify_nodes(plan.inst, d, -1, srcs[j]);
    for (int v = 0; v < plan.inst.size(); ++v)
      if (!plan.inst.source[v] && pr.cls[v] != NodeClass::Fully)
        throw_error(ErrorKind::Feasibility, "ConnectivityViolation",
                    "node '" + plan.inst.node_names[v] + "' has connectivity " +
                        std::to_string(pr.conn[v]) + " < d = " + std::to_string(d) +
                        " from source '" + plan.inst.node_names[srcs[j]] + "'");
    plan.dhat = std::min(plan.dhat, pr.dhat);
    if (j == 0) plan.node_class = pr.cls;

    std::vector<char> enabled(plan.inst.size(), 1);
    for (int other : srcs)
      if (other != srcs[j]) enabled[other] = 0;
    SymBlock M{j * probe.vars(), d};
    per_pass.push_back(full_pass(plan, ops, cols, M, srcs[j], enabled));
  }

  // Combine the per-source keys with a k x (k-x) Vandermonde matrix; any
  // k-x of its rows stay invertible, so the x exposed source blocks reveal
  // nothing about the combined key.
  const int keep = k - plan.inst.x;
  plan.keys.assign(plan.inst.tsets.size(), {});
  for (std::size_t ts = 0; ts < plan.inst.tsets.size(); ++ts) {
    for (int r = 0; r < plan.kappa; ++r)
      for (int c = 0; c < keep; ++c) {
        Row row = ops.zero();
        for (int j = 0; j < k; ++j)
          ops.axpy(row, plan.F.pow(static_cast<std::uint32_t>(j), c), per_pass[j][ts][r]);
        plan.keys[ts].push_back(std::move(row));
      }
  }

  plan.n = 1;
  for (const auto& slot : plan.transcript)
    plan.n = std::max(plan.n, static_cast<int>(slot.size()));
  plan.identity_collisions = cols.ids.collisions;
  plan.alpha_node = cols.ids.node_alpha;
  plan.alpha_set = cols.ids.set_alpha;
  if (cols.fallback)
    plan.notes.push_back("general column schedule engaged (too few field elements for distinct identities)");
  return plan;
}

}  // namespace detail
}  // namespace keycast
