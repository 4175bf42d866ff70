#include "keycast/connectivity.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "keycast/errors.hpp"

namespace keycast {

namespace {

constexpr int kInf = 1 << 28;

// Unit-capacity Dinic.  Arc insertion order fixes the path decomposition:
// split arcs are added per node in index order, then graph arcs in edge
// declaration order, so augmentation and extraction prefer low edge ids.
struct Dinic {
  struct Arc {
    int to, cap, flow = 0;
    int edge_id;  // original edge index, or -1 for split arcs
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> adj;
  std::vector<int> level, it;

  explicit Dinic(int n) : adj(n), level(n), it(n) {}

  void add(int a, int b, int cap, int edge_id) {
    adj[a].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({b, cap, 0, edge_id});
    adj[b].push_back(static_cast<int>(arcs.size()));
    arcs.push_back({a, 0, 0, edge_id});
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int id : adj[u]) {
        const Arc& a = arcs[id];
        if (level[a.to] < 0 && a.flow < a.cap) {
          level[a.to] = level[u] + 1;
          q.push(a.to);
        }
      }
    }
    return level[t] >= 0;
  }

  int dfs(int u, int t, int pushed) {
    if (u == t) return pushed;
    for (int& i = it[u]; i < static_cast<int>(adj[u].size()); ++i) {
      int id = adj[u][i];
      Arc& a = arcs[id];
      if (level[a.to] != level[u] + 1 || a.flow >= a.cap) continue;
      int got = dfs(a.to, t, std::min(pushed, a.cap - a.flow));
      if (got > 0) {
        a.flow += got;
        arcs[id ^ 1].flow -= got;
        return got;
      }
    }
    return 0;
  }

  int max_flow(int s, int t) {
    int total = 0;
    while (bfs(s, t)) {
      std::fill(it.begin(), it.end(), 0);
      while (int got = dfs(s, t, kInf)) total += got;
    }
    return total;
  }
};

bool edge_on(const FlowOpts& o, int e) { return !o.edge_enabled || (*o.edge_enabled)[e]; }
bool node_on(const FlowOpts& o, int v) { return !o.node_enabled || (*o.node_enabled)[v]; }

}  // namespace

PathSet disjoint_paths(const NetworkInstance& inst, int s, int v, const FlowOpts& opts) {
  const int n = inst.size();
  if (s < 0 || s >= n || v < 0 || v >= n)
    throw_error(ErrorKind::Validation, "UnknownNode", "node index out of range");
  if (s == v) throw_error(ErrorKind::Validation, "BadParams", "path endpoints coincide");

  // Node u splits into 2u (in) and 2u+1 (out); intermediates get capacity 1,
  // the endpoints are uncapacitated.
  Dinic din(2 * n);
  for (int u = 0; u < n; ++u) {
    if (!node_on(opts, u)) continue;
    din.add(2 * u, 2 * u + 1, (u == s || u == v) ? kInf : 1, -1);
  }
  for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e) {
    const auto& ed = inst.edges[e];
    if (!edge_on(opts, e) || !node_on(opts, ed.tail) || !node_on(opts, ed.head)) continue;
    din.add(2 * ed.tail + 1, 2 * ed.head, 1, e);
  }

  PathSet out;
  out.count = din.max_flow(2 * s + 1, 2 * v);

  // Extract a path per flow unit: from s_out repeatedly follow the first
  // flow-carrying arc (insertion order), peeling flow as we go.
  for (int k = 0; k < out.count; ++k) {
    std::vector<int> path;
    int u = 2 * s + 1;
    while (u != 2 * v) {
      int chosen = -1;
      for (int id : din.adj[u]) {
        Dinic::Arc& a = din.arcs[id];
        if ((id & 1) == 0 && a.flow > 0) {
          chosen = id;
          break;
        }
      }
      if (chosen < 0)
        throw_error(ErrorKind::Internal, "Internal", "flow decomposition lost a path");
      Dinic::Arc& a = din.arcs[chosen];
      a.flow -= 1;
      if (a.edge_id >= 0) path.push_back(a.edge_id);
      u = a.to;
    }
    out.paths.push_back(std::move(path));
  }
  return out;
}

int vertex_connectivity(const NetworkInstance& inst, int s, int v, const FlowOpts& opts) {
  return disjoint_paths(inst, s, v, opts).count;
}

int vertex_connectivity_bruteforce(const NetworkInstance& inst, int s, int v,
                                   const FlowOpts& opts) {
  const int n = inst.size();
  if (s < 0 || s >= n || v < 0 || v >= n)
    throw_error(ErrorKind::Validation, "UnknownNode", "node index out of range");
  if (s == v) throw_error(ErrorKind::Validation, "BadParams", "path endpoints coincide");

  std::vector<char> edge_used(inst.edges.size(), 0);
  std::vector<char> node_used(n, 0);

  // Enumerate all s->v paths honoring current exclusions, then recurse.
  std::function<int()> best = [&]() -> int {
    std::vector<std::vector<int>> found;
    std::vector<int> cur;
    std::function<void(int)> walk = [&](int u) {
      if (u == v) {
        found.push_back(cur);
        return;
      }
      for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e) {
        const auto& ed = inst.edges[e];
        if (ed.tail != u || edge_used[e] || !edge_on(opts, e)) continue;
        if (!node_on(opts, ed.head) || (ed.head != v && node_used[ed.head])) continue;
        cur.push_back(e);
        if (ed.head != v) node_used[ed.head] = 1;
        walk(ed.head);
        if (ed.head != v) node_used[ed.head] = 0;
        cur.pop_back();
      }
    };
    if (node_on(opts, s) && node_on(opts, v)) walk(s);
    int bestv = 0;
    for (const auto& p : found) {
      for (int e : p) {
        edge_used[e] = 1;
        int h = inst.edges[e].head;
        if (h != v) node_used[h] = 1;
      }
      bestv = std::max(bestv, 1 + best());
      for (int e : p) {
        edge_used[e] = 0;
        int h = inst.edges[e].head;
        if (h != v) node_used[h] = 0;
      }
    }
    return bestv;
  };
  return best();
}

}  // namespace keycast
