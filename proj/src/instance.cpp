#include "keycast/instance.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

#include "keycast/errors.hpp"
#include "keycast/field.hpp"

namespace keycast {

int NetworkInstance::find_node(const std::string& nm) const {
  for (int i = 0; i < size(); ++i)
    if (node_names[i] == nm) return i;
  return -1;
}

std::vector<int> NetworkInstance::sources() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (source[i]) out.push_back(i);
  return out;
}

int NetworkInstance::terminal_of(int v) const {
  for (int t = 0; t < static_cast<int>(tsets.size()); ++t)
    for (int m : tsets[t])
      if (m == v) return t;
  return -1;
}

std::vector<std::vector<int>> NetworkInstance::out_slots() const {
  std::vector<std::vector<int>> s(size());
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) s[edges[e].tail].push_back(e);
  return s;
}

std::vector<std::vector<int>> NetworkInstance::in_slots() const {
  std::vector<std::vector<int>> s(size());
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) s[edges[e].head].push_back(e);
  return s;
}

std::vector<std::vector<int>> NetworkInstance::in_neighbors() const {
  std::vector<std::vector<int>> nb(size());
  for (const auto& e : edges) {
    auto& v = nb[e.head];
    if (std::find(v.begin(), v.end(), e.tail) == v.end()) v.push_back(e.tail);
  }
  for (auto& v : nb) std::sort(v.begin(), v.end());
  return nb;
}

std::vector<std::vector<int>> NetworkInstance::out_neighbors() const {
  std::vector<std::vector<int>> nb(size());
  for (const auto& e : edges) {
    auto& v = nb[e.tail];
    if (std::find(v.begin(), v.end(), e.head) == v.end()) v.push_back(e.head);
  }
  for (auto& v : nb) std::sort(v.begin(), v.end());
  return nb;
}

namespace {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

}  // namespace

std::vector<std::string> validate_instance(const NetworkInstance& inst) {
  std::vector<std::string> bad;
  const int n = inst.size();

  if (!is_prime_u32(inst.q)) bad.push_back("field modulus " + std::to_string(inst.q) + " is not prime");

  {
    std::set<std::string> seen;
    for (const auto& nm : inst.node_names)
      if (!seen.insert(nm).second) bad.push_back("duplicate node name '" + nm + "'");
  }

  auto sources = inst.sources();
  if (sources.empty()) bad.push_back("no source node declared");

  for (const auto& e : inst.edges) {
    if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n) {
      bad.push_back("edge references unknown node");
      continue;
    }
    if (e.tail == e.head) bad.push_back("self-loop at node '" + inst.node_names[e.tail] + "'");
    if (inst.source[e.head])
      bad.push_back("edge into source node '" + inst.node_names[e.head] + "'");
  }

  // Terminal sets: nonempty, known members, pairwise disjoint, sinks only.
  std::vector<int> owner(n, -1);
  for (int t = 0; t < static_cast<int>(inst.tsets.size()); ++t) {
    if (inst.tsets[t].empty()) bad.push_back("terminal set " + std::to_string(t + 1) + " is empty");
    for (int m : inst.tsets[t]) {
      if (m < 0 || m >= n) {
        bad.push_back("terminal set " + std::to_string(t + 1) + " references unknown node");
        continue;
      }
      if (owner[m] >= 0 && owner[m] != t)
        bad.push_back("terminal sets " + std::to_string(owner[m] + 1) + " and " + std::to_string(t + 1) +
                      " are not disjoint (share '" + inst.node_names[m] + "')");
      owner[m] = t;
      if (inst.source[m])
        bad.push_back("node '" + inst.node_names[m] + "' is both source and terminal");
    }
  }
  if (inst.tsets.empty()) bad.push_back("no terminal set declared");
  for (const auto& e : inst.edges) {
    if (e.tail >= 0 && e.tail < n && owner[e.tail] >= 0)
      bad.push_back("terminal node '" + inst.node_names[e.tail] + "' has an outgoing edge");
  }

  if (inst.ell < 0) bad.push_back("adversary ell must be non-negative");
  if (inst.x < 0) bad.push_back("adversary sources bound must be non-negative");
  if (!sources.empty() && inst.x >= static_cast<int>(sources.size()))
    bad.push_back("adversary may observe " + std::to_string(inst.x) + " of " +
                  std::to_string(sources.size()) + " sources; at least one source must stay hidden");

  for (const auto& es : inst.eaves)
    for (int v : es)
      if (v < 0 || v >= n) bad.push_back("eavesdropper set references unknown node");

  // Acyclicity: run Kahn directly so validation never throws.
  {
    std::vector<int> indeg(n, 0);
    for (const auto& e : inst.edges)
      if (e.head >= 0 && e.head < n && e.tail >= 0 && e.tail < n && e.tail != e.head) indeg[e.head]++;
    std::vector<char> done(n, 0);
    int emitted = 0;
    bool progress = true;
    while (progress) {
      progress = false;
      for (int v = 0; v < n; ++v) {
        if (!done[v] && indeg[v] == 0) {
          done[v] = 1;
          ++emitted;
          progress = true;
          for (const auto& e : inst.edges)
            if (e.tail == v && e.head != v && e.head >= 0 && e.head < n) indeg[e.head]--;
        }
      }
    }
    if (emitted != n) bad.push_back("graph contains a directed cycle");
  }

  return bad;
}

std::vector<int> topological_order(const NetworkInstance& inst) {
  const int n = inst.size();
  std::vector<int> indeg(n, 0);
  for (const auto& e : inst.edges) indeg[e.head]++;
  std::vector<int> order;
  order.reserve(n);
  std::vector<char> done(n, 0);
  for (;;) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (!done[v] && indeg[v] == 0) {
        pick = v;
        break;
      }
    if (pick < 0) break;
    done[pick] = 1;
    order.push_back(pick);
    for (const auto& e : inst.edges)
      if (e.tail == pick) indeg[e.head]--;
  }
  if (static_cast<int>(order.size()) != n) {
    // Recover a witness cycle: walk predecessors among unfinished nodes.
    std::vector<int> stack;
    int v = 0;
    while (done[v]) ++v;
    std::vector<int> mark(n, -1);
    for (;;) {
      mark[v] = static_cast<int>(stack.size());
      stack.push_back(v);
      int next = -1;
      for (const auto& e : inst.edges)
        if (e.head == v && !done[e.tail]) {
          next = e.tail;
          break;
        }
      v = next;
      if (mark[v] >= 0) {
        std::ostringstream os;
        os << "directed cycle:";
        for (int i = mark[v]; i < static_cast<int>(stack.size()); ++i)
          os << ' ' << inst.node_names[stack[i]];
        os << ' ' << inst.node_names[v];
        throw_error(ErrorKind::Validation, "CycleDetected", os.str());
      }
    }
  }
  return order;
}

}  // namespace keycast
