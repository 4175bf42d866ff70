// Planner for the partially-connected scheme family.
//
// Two symmetric blocks travel per source: a short one (M, dimension d - z)
// whose reach is limited to fully connected nodes, and a tall one (R,
// dimension d) that every node helps relay.  Partially connected nodes carry
// or reconstruct R-shares only; the key is the sum of the first
// d - ell - z + 1 rows of both terminal shares, so the z R-rows an
// eavesdropper can pin down through a fully node's partial parents are burned
// while the M block stays out of partially connected custody entirely.
// Fully nodes with more than z partial parents (set J) receive the short-block
// deficit through masked polynomial deliveries instead ("unstructured" mode).
#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "keycast/classify.hpp"
#include "keycast/connectivity.hpp"
#include "keycast/errors.hpp"
#include "keycast/plan.hpp"
#include "plan_internal.hpp"

namespace keycast {
namespace detail {
namespace {

struct PassState {
  int s = -1;
  std::vector<char> enabled;
  ConnectivityProfile pr;
  std::vector<char> src_neighbor;
  std::vector<std::vector<int>> jhat;   // fully node -> retained type-B parents
  std::vector<std::map<int, int>> eta;  // fully node -> (type-B parent -> owner)
  std::vector<std::set<int>> need;      // type-B node -> owner shares to carry
  std::vector<std::vector<int>> dhat_set;  // indirect type-A node -> first d owners
  std::vector<std::map<int, int>> sender;  // node -> (owner -> type-B parent)
};

struct PartialPlanner {
  Plan& plan;
  const NetworkInstance& inst;
  const Field& F;
  const RowOps& ops;
  const ColumnScheme& cols;
  int d, ell, z, m_dim, kappa;
  bool allow_overflow;
  int& mask_cursor;

  const std::vector<std::vector<int>>& in_nb;
  const std::vector<int>& topo;

  // --- phase A: retained type-B parents and their share owners -------------

  int flow_dropping(const PassState& ps, int v, const std::set<int>& dropped) const {
    std::vector<char> edge_ok(inst.edges.size(), 1);
    for (std::size_t e = 0; e < inst.edges.size(); ++e)
      if (inst.edges[e].head == v && dropped.count(inst.edges[e].tail)) edge_ok[e] = 0;
    FlowOpts o;
    o.edge_enabled = &edge_ok;
    o.node_enabled = &ps.enabled;
    return vertex_connectivity(inst, ps.s, v, o);
  }

  void select_couriers(PassState& ps, int v) {
    std::vector<int> tb;
    for (int u : in_nb[v])
      if (ps.enabled[u] && ps.pr.cls[u] == NodeClass::TypeB) tb.push_back(u);
    if (tb.empty()) return;

    std::set<int> dropped;
    for (int b : tb) {
      std::set<int> trial = dropped;
      trial.insert(b);
      if (flow_dropping(ps, v, trial) >= d) dropped = std::move(trial);
    }
    for (int b : tb)
      if (!dropped.count(b)) ps.jhat[v].push_back(b);
    if (ps.jhat[v].empty()) return;
    if (flow_dropping(ps, v, dropped) < d)
      throw_error(ErrorKind::Internal, "Internal",
                  "courier pruning under-shot the connectivity target at '" +
                      inst.node_names[v] + "'");

    std::vector<char> edge_ok(inst.edges.size(), 1);
    for (std::size_t e = 0; e < inst.edges.size(); ++e)
      if (inst.edges[e].head == v && dropped.count(inst.edges[e].tail)) edge_ok[e] = 0;
    FlowOpts o;
    o.edge_enabled = &edge_ok;
    o.node_enabled = &ps.enabled;
    PathSet paths = disjoint_paths(inst, ps.s, v, o);
    if (paths.count < d)
      throw_error(ErrorKind::Internal, "Internal",
                  "path packing lost capacity at '" + inst.node_names[v] + "'");

    for (int b : ps.jhat[v]) {
      const std::vector<int>* via = nullptr;
      for (const auto& path : paths.paths)
        if (inst.edges[path.back()].tail == b) {
          via = &path;
          break;
        }
      if (!via)
        throw_error(ErrorKind::Internal, "Internal",
                    "no retained path enters '" + inst.node_names[v] + "' through '" +
                        inst.node_names[b] + "'");
      int owner = -1;
      for (int i = static_cast<int>(via->size()) - 2; i >= 0; --i) {
        int u = inst.edges[(*via)[i]].head;  // nodes strictly between s and v
        if (ps.pr.cls[u] == NodeClass::Fully || ps.pr.cls[u] == NodeClass::TypeA) {
          owner = u;
          break;
        }
      }
      if (owner < 0)
        throw_error(ErrorKind::Internal, "Internal",
                    "no share owner precedes courier '" + inst.node_names[b] + "'");
      ps.eta[v][b] = owner;
      const auto& Db = ps.pr.D[b];
      if (!std::binary_search(Db.begin(), Db.end(), owner))
        throw_error(ErrorKind::Internal, "Internal",
                    "owner '" + inst.node_names[owner] + "' does not reach courier '" +
                        inst.node_names[b] + "'");
    }
  }

  // --- phase B: demand-driven forwarding ------------------------------------

  bool direct_parent(const PassState& ps, int v, int w) const {
    for (int u : in_nb[v])
      if (u == w && ps.enabled[u]) return true;
    return false;
  }

  int pick_sender(const PassState& ps, int v, int w) const {
    for (int u : in_nb[v]) {
      if (!ps.enabled[u] || ps.pr.cls[u] != NodeClass::TypeB) continue;
      const auto& Du = ps.pr.D[u];
      if (std::binary_search(Du.begin(), Du.end(), w)) return u;
    }
    throw_error(ErrorKind::Internal, "Internal",
                "no inbound courier carries the share of '" + inst.node_names[w] +
                    "' toward '" + inst.node_names[v] + "'");
  }

  void route_demand(PassState& ps) {
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      const int v = *it;
      if (!ps.enabled[v] || inst.source[v]) continue;
      switch (ps.pr.cls[v]) {
        case NodeClass::Fully:
          for (int b : ps.jhat[v]) ps.need[b].insert(ps.eta[v].at(b));
          break;
        case NodeClass::TypeA: {
          if (ps.src_neighbor[v]) break;
          const auto& D = ps.pr.D[v];
          ps.dhat_set[v].assign(D.begin(), D.begin() + d);
          for (int w : ps.dhat_set[v])
            if (!direct_parent(ps, v, w)) {
              int b = pick_sender(ps, v, w);
              ps.sender[v][w] = b;
              ps.need[b].insert(w);
            }
          break;
        }
        case NodeClass::TypeB:
          for (int w : ps.need[v])
            if (!direct_parent(ps, v, w)) {
              int b = pick_sender(ps, v, w);
              ps.sender[v][w] = b;
              ps.need[b].insert(w);
            }
          break;
        default:
          break;
      }
    }
  }

  // --- phase C: emission -----------------------------------------------------

  std::vector<int> slots_from(const PassState& ps, int p, int v) const {
    std::vector<int> es;
    for (std::size_t e = 0; e < inst.edges.size(); ++e)
      if (inst.edges[e].tail == p && inst.edges[e].head == v && ps.enabled[p])
        es.push_back(static_cast<int>(e));
    return es;
  }

  std::set<std::uint32_t> parent_identity_set(const PassState& ps, int v) const {
    std::set<std::uint32_t> ids;
    for (int u : in_nb[v])
      if (ps.enabled[u] && !inst.source[u] && cols.ids.node_alpha[u] >= 0)
        ids.insert(static_cast<std::uint32_t>(cols.ids.node_alpha[u]));
    return ids;
  }

  void emit_fully(PassState& ps, int v, const SymBlock& M, const SymBlock& R,
                  AuxAllocator& aux, std::vector<std::vector<Row>>& share_m,
                  std::vector<std::vector<Row>>& share_r,
                  const std::vector<std::map<int, std::vector<Row>>>& svec) {
    const std::string name = inst.node_names[v];
    const Col vm = vandermonde_column(F, static_cast<std::uint32_t>(cols.ids.node_alpha[v]),
                                      m_dim);
    const Col vr = cols.node_cols[v];

    std::set<std::uint32_t> eta_ids;
    for (const auto& [b, owner] : ps.eta[v])
      eta_ids.insert(static_cast<std::uint32_t>(cols.ids.node_alpha[owner]));
    const std::set<std::uint32_t> parent_ids = parent_identity_set(ps, v);

    std::vector<Received> recv_m_src, recv_m_vhat, recv_m_fully;
    std::vector<Received> recv_r_src, recv_r_par, recv_r_eta;
    std::set<std::uint32_t> chosen;

    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
      if (inst.edges[e].head != v || !ps.enabled[inst.edges[e].tail]) continue;
      const int p = inst.edges[e].tail;
      if (p == ps.s) {
        std::set<std::uint32_t> avoid = chosen;
        avoid.insert(parent_ids.begin(), parent_ids.end());
        avoid.insert(eta_ids.begin(), eta_ids.end());
        const std::uint32_t a =
            aux.take(avoid, "slot " + inst.node_names[p] + "->" + name);
        chosen.insert(a);
        Col cm = vandermonde_column(F, a, m_dim);
        Col cr = vandermonde_column(F, a, d);
        Row sm = M.bilinear(ops, cm, vm);
        Row sr = R.bilinear(ops, cr, vr);
        plan.transcript[e].push_back(sm);
        plan.transcript[e].push_back(sr);
        recv_m_src.push_back(Received{std::move(cm), std::move(sm)});
        recv_r_src.push_back(Received{std::move(cr), std::move(sr)});
      } else if (inst.source[p]) {
        throw_error(ErrorKind::Internal, "Internal",
                    "unexpected extra source feeding '" + name + "'");
      } else if (ps.pr.cls[p] == NodeClass::Fully) {
        const Col pm = vandermonde_column(
            F, static_cast<std::uint32_t>(cols.ids.node_alpha[p]), m_dim);
        Row sm = project(ops, vm, share_m[p]);
        Row sr = project(ops, vr, share_r[p]);
        plan.transcript[e].push_back(sm);
        plan.transcript[e].push_back(sr);
        recv_m_fully.push_back(Received{pm, std::move(sm)});
        recv_r_par.push_back(Received{cols.node_cols[p], std::move(sr)});
      } else if (ps.pr.cls[p] == NodeClass::TypeA) {
        Row sr = project(ops, vr, share_r[p]);
        plan.transcript[e].push_back(sr);
        recv_r_par.push_back(Received{cols.node_cols[p], std::move(sr)});
      } else if (std::find(ps.jhat[v].begin(), ps.jhat[v].end(), p) != ps.jhat[v].end()) {
        const int owner = ps.eta[v].at(p);
        Row sr = project(ops, vr, svec[p].at(owner));
        plan.transcript[e].push_back(sr);
        recv_r_eta.push_back(Received{cols.node_cols[owner], std::move(sr)});
      }
      // non-retained type-B parents stay silent toward v
    }

    // Short-block deficit: masked delivery of p(v) extra functionals.
    const int pv = ps.pr.partial_in[v] - z;
    if (pv > 0) {
      if (F.q <= static_cast<std::uint32_t>(d))
        throw_error(ErrorKind::Feasibility, "FieldTooSmall",
                    "masked delivery to '" + name + "' evaluates polynomials at " +
                        std::to_string(d) + " nonzero points and needs q > d");
      std::vector<Row> payload_rows;
      std::set<std::uint32_t> vhat_avoid = chosen;
      vhat_avoid.insert(parent_ids.begin(), parent_ids.end());
      vhat_avoid.insert(eta_ids.begin(), eta_ids.end());
      for (int w = 0; w < pv; ++w) {
        const std::uint32_t a = aux.take(vhat_avoid, "masked delivery to '" + name + "'");
        vhat_avoid.insert(a);
        Col cm = vandermonde_column(F, a, m_dim);
        Row y = M.bilinear(ops, cm, vm);
        recv_m_vhat.push_back(Received{std::move(cm), y});
        payload_rows.push_back(std::move(y));
      }

      FlowOpts o;
      o.node_enabled = &ps.enabled;
      PathSet paths = disjoint_paths(inst, ps.s, v, o);
      if (paths.count < d)
        throw_error(ErrorKind::Internal, "Internal",
                    "masked delivery found fewer than d paths to '" + name + "'");

      const int width = d - ell;
      const int batches = (pv + width - 1) / width;
      for (int b = 0; b < batches; ++b) {
        std::vector<Row> coeff(static_cast<std::size_t>(d), ops.zero());
        for (int m = 0; m < width; ++m) {
          const int idx = b * width + m;
          if (idx < pv) coeff[m] = payload_rows[idx];
        }
        for (int k = 0; k < ell; ++k) coeff[width + k] = ops.unit(mask_cursor++);

        std::vector<Row> shares;
        for (int i = 1; i <= d; ++i) {
          Row f = ops.zero();
          std::uint32_t point = 1;
          for (int c = 0; c < d; ++c) {
            ops.axpy(f, point, coeff[c]);
            point = F.mul(point, static_cast<std::uint32_t>(i));
          }
          shares.push_back(std::move(f));
        }
        for (int i = 0; i < d; ++i)
          for (int e : paths.paths[i]) plan.transcript[e].push_back(shares[i]);

        // Reconstruction at v: invert the evaluation system and compare the
        // payload coefficients against what the source encoded.
        Mat V(d, d);
        for (int i = 0; i < d; ++i) {
          std::uint32_t point = 1;
          for (int c = 0; c < d; ++c) {
            V.at(i, c) = point;
            point = F.mul(point, static_cast<std::uint32_t>(i + 1));
          }
        }
        Mat Vi = mat_inverse(F, V, "masked delivery to '" + name + "'");
        for (int m = 0; m < width; ++m) {
          Row rec = ops.zero();
          for (int i = 0; i < d; ++i) ops.axpy(rec, Vi.at(m, i), shares[i]);
          if (rec != coeff[m])
            throw_error(ErrorKind::Internal, "Internal",
                        "masked delivery reconstruction mismatch at '" + name + "'");
        }
      }
    }

    std::vector<Received> recv_m = recv_m_src;
    recv_m.insert(recv_m.end(), recv_m_vhat.begin(), recv_m_vhat.end());
    recv_m.insert(recv_m.end(), recv_m_fully.begin(), recv_m_fully.end());
    share_m[v] = decode_share(ops, F, m_dim, recv_m, "short block at node '" + name + "'");
    if (!rows_equal(share_m[v], M.matvec(ops, vm)))
      throw_error(ErrorKind::Internal, "Internal",
                  "short-block share mismatch at node '" + name + "'");

    std::vector<Received> recv_r = recv_r_src;
    recv_r.insert(recv_r.end(), recv_r_par.begin(), recv_r_par.end());
    recv_r.insert(recv_r.end(), recv_r_eta.begin(), recv_r_eta.end());
    try {
      share_r[v] = decode_share(ops, F, d, recv_r, "tall block at node '" + name + "'");
    } catch (const Error& err) {
      bool eta_is_parent = false;
      for (const auto& [b, owner] : ps.eta[v])
        if (direct_parent(ps, v, owner)) eta_is_parent = true;
      if (err.code() == std::string("FieldTooSmall") && eta_is_parent)
        throw_error(ErrorKind::Feasibility, "EtaSelectionFailed",
                    "courier share owners collide with direct parents of '" + name +
                        "' and the decode system lost rank");
      throw;
    }
    if (!rows_equal(share_r[v], R.matvec(ops, vr)))
      throw_error(ErrorKind::Internal, "Internal",
                  "tall-block share mismatch at node '" + name + "'");
  }

  void emit_type_a_direct(PassState& ps, int v, const SymBlock& R,
                          std::vector<std::vector<Row>>& share_r) {
    const Col vr = cols.node_cols[v];
    share_r[v] = R.matvec(ops, vr);
    const auto slots = slots_from(ps, ps.s, v);
    if (slots.empty())
      throw_error(ErrorKind::Internal, "Internal",
                  "type-A node '" + inst.node_names[v] + "' lost its source slots");
    for (std::size_t r = 0; r < share_r[v].size(); ++r)
      plan.transcript[slots[r % slots.size()]].push_back(share_r[v][r]);
  }

  void emit_type_a_indirect(PassState& ps, int v, const SymBlock& R,
                            std::vector<std::vector<Row>>& share_r,
                            const std::vector<std::map<int, std::vector<Row>>>& svec) {
    const std::string name = inst.node_names[v];
    const Col vr = cols.node_cols[v];

    // One projection of R vr_v per owner in the d-subset, grouped by the
    // parent that physically sends it.
    std::vector<Received> recv;
    std::map<int, std::vector<Row>> per_sender;  // parent -> symbols in owner order
    for (int w : ps.dhat_set[v]) {
      Row sym;
      int from;
      if (direct_parent(ps, v, w)) {
        sym = project(ops, vr, share_r[w]);
        from = w;
      } else {
        from = ps.sender[v].at(w);
        sym = project(ops, vr, svec[from].at(w));
      }
      recv.push_back(Received{cols.node_cols[w], sym});
      per_sender[from].push_back(std::move(sym));
    }
    for (int u : in_nb[v]) {
      auto it = per_sender.find(u);
      if (it == per_sender.end()) continue;
      const auto slots = slots_from(ps, u, v);
      for (std::size_t r = 0; r < it->second.size(); ++r)
        plan.transcript[slots[r % slots.size()]].push_back(it->second[r]);
      per_sender.erase(it);
    }
    if (!per_sender.empty())
      throw_error(ErrorKind::Internal, "Internal",
                  "a share sender toward '" + name + "' is not a parent");

    share_r[v] = decode_share(ops, F, d, recv, "owner projections at node '" + name + "'");
    if (!rows_equal(share_r[v], R.matvec(ops, vr)))
      throw_error(ErrorKind::Internal, "Internal",
                  "projected share mismatch at node '" + name + "'");
  }

  void emit_type_b(PassState& ps, int v, const SymBlock& R,
                   const std::vector<std::vector<Row>>& share_r,
                   std::vector<std::map<int, std::vector<Row>>>& svec) {
    for (int u : in_nb[v]) {
      if (!ps.enabled[u] || inst.source[u]) continue;
      // Owner shares this parent forwards to v, in ascending owner order.
      std::vector<Row> symbols;
      for (int w : ps.need[v]) {
        const bool direct = (u == w);
        const bool routed = !direct && ps.sender[v].count(w) && ps.sender[v].at(w) == u;
        if (!direct && !routed) continue;
        const std::vector<Row>& rows = direct ? share_r[w] : svec[u].at(w);
        if (static_cast<int>(rows.size()) != d)
          throw_error(ErrorKind::Internal, "Internal",
                      "carried share of '" + inst.node_names[w] + "' has the wrong height");
        symbols.insert(symbols.end(), rows.begin(), rows.end());
        svec[v][w] = rows;
      }
      if (symbols.empty()) continue;
      const auto slots = slots_from(ps, u, v);
      for (std::size_t r = 0; r < symbols.size(); ++r)
        plan.transcript[slots[r % slots.size()]].push_back(symbols[r]);
    }
    for (int w : ps.need[v]) {
      if (!svec[v].count(w))
        throw_error(ErrorKind::Internal, "Internal",
                    "demanded share of '" + inst.node_names[w] + "' never reached '" +
                        inst.node_names[v] + "'");
      if (!rows_equal(svec[v][w], R.matvec(ops, cols.node_cols[w])))
        throw_error(ErrorKind::Internal, "Internal",
                    "carried share of '" + inst.node_names[w] + "' corrupted at '" +
                        inst.node_names[v] + "'");
    }
  }

  // --- whole pass ------------------------------------------------------------

  std::vector<std::vector<Row>> run_pass(PassState& ps, const SymBlock& M,
                                         const SymBlock& R) {
    for (int v : topo)
      if (ps.enabled[v] && !inst.source[v] && ps.pr.cls[v] == NodeClass::Fully)
        select_couriers(ps, v);
    route_demand(ps);

    AuxAllocator aux(F, cols.ids);
    const int n = inst.size();
    std::vector<std::vector<Row>> share_m(n), share_r(n);
    std::vector<std::map<int, std::vector<Row>>> svec(n);

    for (int v : topo) {
      if (!ps.enabled[v] || inst.source[v]) continue;
      switch (ps.pr.cls[v]) {
        case NodeClass::Fully:
          emit_fully(ps, v, M, R, aux, share_m, share_r, svec);
          break;
        case NodeClass::TypeA:
          if (ps.src_neighbor[v])
            emit_type_a_direct(ps, v, R, share_r);
          else
            emit_type_a_indirect(ps, v, R, share_r, svec);
          break;
        case NodeClass::TypeB:
          emit_type_b(ps, v, R, share_r, svec);
          break;
        default:
          break;
      }
    }

    std::vector<std::vector<Row>> keys(inst.tsets.size());
    for (std::size_t ti = 0; ti < inst.tsets.size(); ++ti) {
      const auto& ts = inst.tsets[ti];
      std::vector<Row> rows;
      for (int r = 0; r < kappa; ++r) {
        Row kr = ops.zero();
        ops.axpy(kr, 1, share_m[ts.front()][r]);
        ops.axpy(kr, 1, share_r[ts.front()][r]);
        rows.push_back(std::move(kr));
      }
      for (int t : ts)
        for (int r = 0; r < kappa; ++r) {
          Row kr = ops.zero();
          ops.axpy(kr, 1, share_m[t][r]);
          ops.axpy(kr, 1, share_r[t][r]);
          if (kr != rows[r])
            throw_error(ErrorKind::Internal, "Internal",
                        "terminal set members disagree on the key at '" +
                            inst.node_names[t] + "'");
        }
      keys[ti] = std::move(rows);
    }
    return keys;
  }
};

}  // namespace

Plan compile_partial_family(const NetworkInstance& inst, int d, bool allow_overflow,
                            bool multisource) {
  Plan plan(inst);
  const auto srcs = plan.inst.sources();
  const int k = static_cast<int>(srcs.size());
  const int ell = plan.inst.ell;

  if (!multisource && k != 1)
    throw_error(ErrorKind::Validation, "BadParams",
                "this scheme expects exactly one source, found " + std::to_string(k) +
                    " (use partial-multisource)");
  if (multisource && plan.inst.x >= k)
    throw_error(ErrorKind::Validation, "TooManySourcesEavesdropped",
                "x = " + std::to_string(plan.inst.x) + " of " + std::to_string(k) +
                    " sources eavesdropped; at least one source must stay hidden");
  if (multisource && static_cast<std::uint32_t>(k) > plan.F.q)
    throw_error(ErrorKind::Feasibility, "FieldTooSmall",
                "combining matrix needs q >= the number of sources (" +
                    std::to_string(k) + "), q = " + std::to_string(plan.F.q));

  std::vector<ConnectivityProfile> prs;
  int z_obs = 0, dhat = d;
  for (int j = 0; j < k; ++j) {
    prs.push_back(classify_nodes(plan.inst, d, ell, srcs[j]));
    z_obs = std::max(z_obs, prs.back().z_obs);
    dhat = std::min(dhat, prs.back().dhat);
  }

  if (z_obs == 0) {
    Plan routed = multisource ? compile_multisource(inst, d) : compile_full(inst, d);
    routed.notes.push_back("no partially connected nodes; routed to the full scheme");
    return routed;
  }
  if (ell == 0)
    throw_error(ErrorKind::Validation, "BadParams",
                "partially connected nodes demand ell >= 1: the key keeps "
                "d - ell - z + 1 rows, which exceeds the short block at ell = 0");
  if (z_obs > d - ell && !allow_overflow)
    throw_error(ErrorKind::Feasibility, "StructuralConditionViolated",
                multisource
                    ? "masking depth z = " + std::to_string(z_obs) + " exceeds d - ell = " +
                          std::to_string(d - ell) +
                          "; no multisource variant covers that regime"
                    : "masking depth z = " + std::to_string(z_obs) + " exceeds d - ell = " +
                          std::to_string(d - ell) + "; run the unstructured scheme");
  {
    // Partial schemes reuse each node identity at two block heights, so the
    // general-column fallback is unavailable: every terminal set and relay
    // needs a genuine evaluation index, and decoding needs q >= d.
    int identity_demand = static_cast<int>(plan.inst.tsets.size());
    for (int v = 0; v < plan.inst.size(); ++v)
      if (!plan.inst.source[v] && plan.inst.terminal_of(v) < 0) ++identity_demand;
    const int need = std::max(d, identity_demand);
    if (static_cast<std::uint32_t>(need) > plan.F.q)
      throw_error(ErrorKind::Feasibility, "FieldTooSmall",
                  "partial schemes reuse each node identity at two block heights and "
                  "need q >= max(d, terminal sets + relays) = " + std::to_string(need) +
                      "; q = " + std::to_string(plan.F.q));
  }

  const int z = std::min(z_obs, d - ell);
  const int m_dim = d - z;
  const int kappa = d - ell - z + 1;

  plan.scheme = multisource ? "partial-multisource" : (allow_overflow ? "unstructured" : "partial");
  plan.d = d;
  plan.ell = ell;
  plan.x = plan.inst.x;
  plan.z = z;
  plan.dhat = dhat;
  plan.kappa = kappa;

  SymBlock probe_m{0, m_dim}, probe_r{0, d};
  const int Tm = probe_m.vars(), Td = probe_r.vars();

  // Masked-delivery bookkeeping (single source only; the multisource guard
  // above keeps every pass deficit-free).
  int mask_total = 0, total_batches = 0;
  for (int j = 0; j < k; ++j)
    for (int v : topological_order(plan.inst))
      if (!plan.inst.source[v] && prs[j].cls[v] == NodeClass::Fully &&
          prs[j].partial_in[v] > z) {
        const int batches = (prs[j].partial_in[v] - z + (d - ell) - 1) / (d - ell);
        total_batches += batches;
        mask_total += batches * ell;
      }
  if (mask_total > 0 && multisource)
    throw_error(ErrorKind::Internal, "Internal",
                "a multisource pass kept a short-block deficit despite the masking guard");

  plan.rand_dim = k * (Tm + Td) + mask_total;
  if (k == 1)
    plan.source_blocks = {{0, plan.rand_dim}};
  else
    for (int j = 0; j < k; ++j) plan.source_blocks.push_back({j * (Tm + Td), (j + 1) * (Tm + Td)});
  plan.transcript.assign(plan.inst.edges.size(), {});

  ColumnScheme cols(plan.F, plan.inst, d, ell);
  RowOps ops{plan.F, plan.rand_dim};
  const auto in_nb = plan.inst.in_neighbors();
  const auto topo = topological_order(plan.inst);
  int mask_cursor = k * (Tm + Td);

  PartialPlanner planner{plan,  plan.inst, plan.F, ops, cols, d, ell, z, m_dim,
                         kappa, allow_overflow, mask_cursor, in_nb, topo};

  std::vector<std::vector<std::vector<Row>>> per_pass;
  for (int j = 0; j < k; ++j) {
    PassState ps;
    ps.s = srcs[j];
    ps.enabled.assign(plan.inst.size(), 1);
    for (int other : srcs)
      if (other != srcs[j]) ps.enabled[other] = 0;
    ps.pr = prs[j];
    ps.src_neighbor.assign(plan.inst.size(), 0);
    for (const auto& e : plan.inst.edges)
      if (e.tail == srcs[j]) ps.src_neighbor[e.head] = 1;
    ps.jhat.assign(plan.inst.size(), {});
    ps.eta.assign(plan.inst.size(), {});
    ps.need.assign(plan.inst.size(), {});
    ps.dhat_set.assign(plan.inst.size(), {});
    ps.sender.assign(plan.inst.size(), {});

    SymBlock M{j * (Tm + Td), m_dim}, R{j * (Tm + Td) + Tm, d};
    per_pass.push_back(planner.run_pass(ps, M, R));

    if (j == 0) {
      plan.node_class = ps.pr.cls;
      plan.jhat = ps.jhat;
      plan.eta = ps.eta;
    }
  }
  if (mask_cursor != plan.rand_dim)
    throw_error(ErrorKind::Internal, "Internal",
                "masked-delivery randomness layout drifted during emission");

  if (k == 1) {
    plan.keys = per_pass[0];
  } else {
    const int keep = k - plan.inst.x;
    plan.keys.assign(plan.inst.tsets.size(), {});
    for (std::size_t ts = 0; ts < plan.inst.tsets.size(); ++ts)
      for (int r = 0; r < kappa; ++r)
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

  const long long den_core = static_cast<long long>(d) * (d - dhat);
  if (plan.scheme == "partial")
    plan.formula = Rational::make(kappa, den_core + 1);
  else if (plan.scheme == "unstructured")
    plan.formula = Rational::make(kappa, den_core + total_batches + 1);
  else
    plan.formula = Rational::make(static_cast<long long>(kappa) * (k - plan.inst.x),
                                  (den_core + 1) * k);

  plan.identity_collisions = cols.ids.collisions;
  plan.alpha_node = cols.ids.node_alpha;
  plan.alpha_set = cols.ids.set_alpha;
  return plan;
}

}  // namespace detail
}  // namespace keycast
