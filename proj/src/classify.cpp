#include "keycast/classify.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "keycast/connectivity.hpp"
#include "keycast/errors.hpp"

namespace keycast {

ConnectivityProfile classify_nodes(const NetworkInstance& inst, int d, int ell, int source) {
  const int n = inst.size();
  ConnectivityProfile pr;
  pr.d = d;
  pr.ell = ell;
  pr.source = source;
  pr.conn.assign(n, -1);
  pr.cls.assign(n, NodeClass::Excluded);
  pr.D.assign(n, {});
  pr.partial_in.assign(n, 0);

  const auto all_sources = inst.sources();
  std::vector<int> rel_sources;
  std::vector<char> enabled(n, 1);
  for (int s : all_sources) {
    if (source >= 0 && s != source)
      enabled[s] = 0;
    else
      rel_sources.push_back(s);
  }
  if (rel_sources.empty())
    throw_error(ErrorKind::Validation, "UnknownNode", "classification source is not a source node");

  FlowOpts opts;
  opts.node_enabled = &enabled;

  for (int v = 0; v < n; ++v) {
    if (!enabled[v]) continue;
    if (inst.source[v]) {
      pr.cls[v] = NodeClass::Source;
      continue;
    }
    int c = -1;
    for (int s : rel_sources) {
      int cv = vertex_connectivity(inst, s, v, opts);
      c = (c < 0) ? cv : std::min(c, cv);
    }
    pr.conn[v] = c;
  }

  // Terminal members must support dimension d from every relevant source.
  for (const auto& ts : inst.tsets)
    for (int t : ts)
      if (enabled[t] && pr.conn[t] >= 0 && pr.conn[t] < d)
        throw_error(ErrorKind::Feasibility, "TerminalUnderConnected",
                    "terminal node '" + inst.node_names[t] + "' has connectivity " +
                        std::to_string(pr.conn[t]) + " < d = " + std::to_string(d));

  // Direct neighbors of a relevant source.
  std::vector<char> src_neighbor(n, 0);
  for (const auto& e : inst.edges)
    if (enabled[e.tail] && enabled[e.head] && inst.source[e.tail] &&
        (source < 0 || e.tail == source))
      src_neighbor[e.head] = 1;

  const auto in_nb = inst.in_neighbors();
  pr.dhat = d;
  for (int v : topological_order(inst)) {
    if (!enabled[v] || inst.source[v]) continue;
    pr.dhat = std::min(pr.dhat, pr.conn[v]);
    if (pr.conn[v] >= d) {
      pr.cls[v] = NodeClass::Fully;
      continue;
    }
    std::set<int> owners;
    for (int u : in_nb[v]) {
      if (!enabled[u] || inst.source[u]) continue;
      if (pr.cls[u] == NodeClass::Fully || pr.cls[u] == NodeClass::TypeA)
        owners.insert(u);
      else if (pr.cls[u] == NodeClass::TypeB)
        owners.insert(pr.D[u].begin(), pr.D[u].end());
    }
    pr.D[v].assign(owners.begin(), owners.end());
    pr.cls[v] = (src_neighbor[v] || static_cast<int>(pr.D[v].size()) >= d) ? NodeClass::TypeA
                                                                           : NodeClass::TypeB;
  }

  for (int v = 0; v < n; ++v) {
    if (!enabled[v] || inst.source[v]) continue;
    int c = 0;
    for (int u : in_nb[v])
      if (enabled[u] && !inst.source[u] &&
          (pr.cls[u] == NodeClass::TypeA || pr.cls[u] == NodeClass::TypeB))
        ++c;
    pr.partial_in[v] = c;
    if (pr.cls[v] == NodeClass::Fully) pr.z_obs = std::max(pr.z_obs, c);
  }

  pr.z = (ell >= 0) ? std::min(pr.z_obs, d - ell) : pr.z_obs;
  if (ell >= 0) {
    for (int v = 0; v < n; ++v)
      if (pr.cls[v] == NodeClass::Fully && pr.partial_in[v] > pr.z) {
        pr.J.push_back(v);
        pr.p.push_back(pr.partial_in[v] - pr.z);
      }
  }
  return pr;
}

int default_dimension(const NetworkInstance& inst) {
  int best = -1;
  for (int s : inst.sources())
    for (const auto& ts : inst.tsets)
      for (int t : ts) {
        int c = vertex_connectivity(inst, s, t);
        best = (best < 0) ? c : std::min(best, c);
      }
  return best < 0 ? 0 : best;
}

}  // namespace keycast
