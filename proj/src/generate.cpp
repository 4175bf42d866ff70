#include "keycast/generate.hpp"

#include <algorithm>
#include <set>

#include "keycast/errors.hpp"
#include "keycast/rng.hpp"

namespace keycast {

namespace {

struct Builder {
  NetworkInstance inst;

  int node(const std::string& name, bool source = false, int tset = -1) {
    inst.node_names.push_back(name);
    inst.source.push_back(source);
    int id = inst.size() - 1;
    if (tset >= 0) {
      if (static_cast<int>(inst.tsets.size()) <= tset) inst.tsets.resize(tset + 1);
      inst.tsets[tset].push_back(id);
    }
    return id;
  }

  void edge(int tail, int head, int mult = 1) {
    for (int k = 0; k < mult; ++k) inst.edges.push_back({tail, head});
  }
};

NetworkInstance gen_fig1(const GenParams& p) {
  Builder b;
  b.inst.name = "fig1";
  b.inst.q = p.q;
  int s1 = b.node("s1", true), s2 = b.node("s2", true);
  int a = b.node("a"), bb = b.node("b");
  int t1 = b.node("t1", false, 0), t2 = b.node("t2", false, 0);
  b.edge(s1, a);
  b.edge(s2, bb);
  b.edge(a, t1);
  b.edge(a, t2);
  b.edge(bb, t1);
  b.edge(bb, t2);
  // One relay OR one source may be observed, but not a relay and a source
  // together: a source plus the opposite relay pins the sum key down.
  b.inst.ell = 1;
  b.inst.x = 0;
  b.inst.eaves.push_back({s1});
  b.inst.eaves.push_back({s2});
  return b.inst;
}

NetworkInstance gen_fig2(const GenParams& p) {
  if (p.d < 2) throw_error(ErrorKind::Validation, "BadParams", "fig2 needs d >= 2");
  Builder b;
  b.inst.name = "fig2(d=" + std::to_string(p.d) + ")";
  b.inst.q = p.q;
  int s = b.node("s", true);
  std::vector<int> mid;
  for (int i = 1; i <= p.d; ++i) mid.push_back(b.node("v" + std::to_string(i)));
  int t = b.node("t", false, 0);
  for (int v : mid) b.edge(s, v, p.d);
  for (int v : mid) b.edge(v, t);
  b.inst.ell = p.ell;
  b.inst.x = 0;
  return b.inst;
}

NetworkInstance gen_fig2_multi(const GenParams& p) {
  if (p.d < 2 || p.sources < 1)
    throw_error(ErrorKind::Validation, "BadParams", "fig2_multi needs d >= 2 and sources >= 1");
  Builder b;
  b.inst.name = "fig2_multi(d=" + std::to_string(p.d) + ",s=" + std::to_string(p.sources) + ")";
  b.inst.q = p.q;
  std::vector<int> srcs;
  for (int j = 1; j <= p.sources; ++j) srcs.push_back(b.node("s" + std::to_string(j), true));
  std::vector<int> mid;
  for (int i = 1; i <= p.d; ++i) mid.push_back(b.node("v" + std::to_string(i)));
  int t = b.node("t", false, 0);
  for (int s : srcs)
    for (int v : mid) b.edge(s, v, p.d);
  for (int v : mid) b.edge(v, t);
  b.inst.ell = p.ell;
  b.inst.x = p.x;
  return b.inst;
}

NetworkInstance gen_type_b_chain(const GenParams& p) {
  if (p.d < 2 || p.len < 1)
    throw_error(ErrorKind::Validation, "BadParams", "type_b_chain needs d >= 2 and len >= 1");
  Builder b;
  b.inst.name = "type_b_chain(len=" + std::to_string(p.len) + ",d=" + std::to_string(p.d) + ")";
  b.inst.q = p.q;
  int s = b.node("s", true);
  std::vector<int> chain;
  for (int i = 1; i <= p.len; ++i) chain.push_back(b.node("a" + std::to_string(i)));
  int t = b.node("t", false, 0);
  b.edge(s, chain[0], p.d);
  for (int i = 1; i < p.len; ++i) b.edge(chain[i - 1], chain[i]);
  b.edge(chain.back(), t);
  b.edge(s, t, p.d - 1);
  b.inst.ell = p.ell;
  b.inst.x = 0;
  return b.inst;
}

NetworkInstance gen_partial_mix(const GenParams& p) {
  if (p.d < 2) throw_error(ErrorKind::Validation, "BadParams", "partial_mix needs d >= 2");
  Builder b;
  b.inst.name = "partial_mix(d=" + std::to_string(p.d) + ",extra=" + std::to_string(p.extra) + ")";
  b.inst.q = p.q;
  int s = b.node("s", true);
  int f1 = b.node("f1");
  int a = b.node("a");
  int bb = b.node("b");
  int j = b.node("j");
  std::vector<int> extras;
  for (int k = 1; k <= p.extra; ++k) extras.push_back(b.node("e" + std::to_string(k)));
  int t = b.node("t", false, 0);
  b.edge(s, f1, p.d);
  b.edge(s, a);
  b.edge(a, bb);
  b.edge(s, j);
  b.edge(f1, j);
  b.edge(bb, j);
  for (int e : extras) {
    b.edge(s, e);
    b.edge(e, j);
  }
  b.edge(s, t);
  b.edge(f1, t);
  b.edge(j, t);
  b.inst.ell = p.ell;
  b.inst.x = 0;
  return b.inst;
}

}  // namespace

NetworkInstance generate_canonical(const std::string& kind, const GenParams& p) {
  NetworkInstance inst;
  if (kind == "fig1")
    inst = gen_fig1(p);
  else if (kind == "fig2")
    inst = gen_fig2(p);
  else if (kind == "fig2_multi")
    inst = gen_fig2_multi(p);
  else if (kind == "type_b_chain")
    inst = gen_type_b_chain(p);
  else if (kind == "partial_mix")
    inst = gen_partial_mix(p);
  else
    throw_error(ErrorKind::Validation, "BadParams", "unknown canonical kind '" + kind + "'");
  auto bad = validate_instance(inst);
  if (!bad.empty())
    throw_error(ErrorKind::Internal, "GenerationFailed", "canonical instance invalid: " + bad[0]);
  return inst;
}

NetworkInstance generate_random(std::uint64_t seed, int node_count, int d_target,
                                double partial_fraction, std::uint32_t q, int ell) {
  if (node_count < 3 || d_target < 1)
    throw_error(ErrorKind::Validation, "BadParams",
                "random generation needs node_count >= 3 and d_target >= 1");
  Rng rng(seed);
  Builder b;
  b.inst.name = "random(seed=" + std::to_string(seed) + ")";
  b.inst.q = q;
  int s = b.node("s", true);
  const int mids = node_count - 2;
  std::vector<int> mid, fully;
  for (int i = 1; i <= mids; ++i) mid.push_back(b.node("v" + std::to_string(i)));
  int t = b.node("t", false, 0);

  // Fully nodes keep at least one direct source edge plus edges from distinct
  // earlier fully nodes; since each of those also touches the source directly,
  // the resulting paths are internally disjoint and connectivity is exact.
  const std::uint32_t cutoff = static_cast<std::uint32_t>(partial_fraction * 1000.0);
  for (int v : mid) {
    bool partial = d_target > 1 && rng.uniform(1000) < cutoff;
    if (partial) {
      int want = 1 + static_cast<int>(rng.uniform(static_cast<std::uint32_t>(d_target - 1)));
      std::set<int> picked;
      for (int k = 0; k < want; ++k) {
        std::uint32_t r = rng.uniform(static_cast<std::uint32_t>(v));  // any earlier node
        picked.insert(static_cast<int>(r));
      }
      for (int u : picked) b.edge(u, v);
    } else {
      int via = fully.empty()
                    ? 0
                    : static_cast<int>(rng.uniform(static_cast<std::uint32_t>(
                          std::min<int>(static_cast<int>(fully.size()), d_target - 1) + 1)));
      std::set<int> picked;
      while (static_cast<int>(picked.size()) < via)
        picked.insert(fully[rng.uniform(static_cast<std::uint32_t>(fully.size()))]);
      b.edge(s, v, d_target - via);
      for (int u : picked) b.edge(u, v);
      fully.push_back(v);
    }
  }
  {
    int via = fully.empty()
                  ? 0
                  : std::min<int>(static_cast<int>(fully.size()), d_target - 1);
    b.edge(s, t, d_target - via);
    for (int k = 0; k < via; ++k) b.edge(fully[fully.size() - 1 - k], t);
  }
  b.inst.ell = ell;
  b.inst.x = 0;
  auto bad = validate_instance(b.inst);
  if (!bad.empty())
    throw_error(ErrorKind::Internal, "GenerationFailed", "random instance invalid: " + bad[0]);
  return b.inst;
}

}  // namespace keycast
