// The two standalone schemes: the two-message demonstration network (both
// terminals output the sum of two independently sourced messages) and masked
// point-to-point payload delivery over vertex-disjoint paths.
#include <algorithm>
#include <string>
#include <vector>

#include "keycast/connectivity.hpp"
#include "keycast/errors.hpp"
#include "keycast/plan.hpp"
#include "plan_internal.hpp"

namespace keycast {
namespace detail {

// Expects: two sources feeding one relay each, both relays feeding every
// member of a single terminal set, and nothing else.  Each source draws one
// message; relays forward it; terminals output the sum (or, in the multicast
// control variant, the first message alone -- that variant exists to show the
// audit catching a relay that holds the whole key).
Plan compile_fig1(const NetworkInstance& inst, bool multicast_control) {
  Plan plan(inst);
  const auto srcs = plan.inst.sources();
  const auto out_nb = plan.inst.out_neighbors();
  const auto bad = [&](const std::string& why) {
    throw_error(ErrorKind::Validation, "BadParams",
                "fig1 scheme expects the two-relay demonstration topology: " + why);
  };
  if (srcs.size() != 2) bad("exactly two sources required");
  if (plan.inst.tsets.size() != 1) bad("exactly one terminal set required");

  std::vector<int> relay;
  for (int s : srcs) {
    if (out_nb[s].size() != 1) bad("each source must feed exactly one relay");
    relay.push_back(out_nb[s][0]);
  }
  if (relay[0] == relay[1]) bad("the sources must feed distinct relays");
  const auto& ts = plan.inst.tsets[0];
  for (int r : relay) {
    if (plan.inst.terminal_of(r) >= 0) bad("relays must not be terminals");
    std::vector<int> outs = out_nb[r];
    std::vector<int> want = ts;
    std::sort(want.begin(), want.end());
    if (outs != want) bad("each relay must feed every terminal exactly once");
  }

  plan.scheme = multicast_control ? "fig1_multicast" : "fig1";
  plan.d = 1;
  plan.ell = plan.inst.ell;
  plan.x = plan.inst.x;
  plan.z = 0;
  plan.dhat = 1;
  plan.kappa = 1;
  plan.n = 1;
  plan.formula = Rational::make(1, 1);
  plan.rand_dim = 2;
  plan.source_blocks = {{0, 1}, {1, 2}};
  plan.transcript.assign(plan.inst.edges.size(), {});

  RowOps ops{plan.F, plan.rand_dim};
  for (std::size_t e = 0; e < plan.inst.edges.size(); ++e) {
    const int tail = plan.inst.edges[e].tail;
    int msg = -1;
    for (int j = 0; j < 2; ++j)
      if (tail == srcs[j] || tail == relay[j]) msg = j;
    if (msg < 0)
      throw_error(ErrorKind::Internal, "Internal", "fig1 edge with an unexpected tail");
    plan.transcript[e].push_back(ops.unit(msg));
  }

  Row key = ops.unit(0);
  if (!multicast_control) ops.axpy(key, 1, ops.unit(1));
  plan.keys = {{key}};
  return plan;
}

}  // namespace detail

Plan compile_shamir_unicast(const NetworkInstance& inst, int s, int v,
                            const std::vector<std::uint32_t>& payload) {
  Plan plan(inst);
  const auto bad = validate_instance(plan.inst);
  if (!bad.empty())
    throw_error(ErrorKind::Validation, "BadParams", "invalid instance: " + bad.front());
  if (s < 0 || s >= plan.inst.size() || v < 0 || v >= plan.inst.size())
    throw_error(ErrorKind::Validation, "UnknownNode", "unicast endpoint out of range");
  if (!plan.inst.source[s])
    throw_error(ErrorKind::Validation, "BadParams",
                "unicast sender '" + plan.inst.node_names[s] + "' must be a source");
  if (plan.inst.source[v])
    throw_error(ErrorKind::Validation, "BadParams",
                "unicast receiver '" + plan.inst.node_names[v] + "' must not be a source");
  if (payload.empty())
    throw_error(ErrorKind::Validation, "BadParams", "unicast payload must be nonempty");

  const Field& F = plan.F;
  const int L = static_cast<int>(payload.size());
  const int ell = plan.inst.ell;
  const int d = L + ell;
  if (static_cast<std::uint32_t>(d) >= F.q)
    throw_error(ErrorKind::Feasibility, "FieldTooSmall",
                "shares are evaluated at " + std::to_string(d) +
                    " distinct nonzero points, q = " + std::to_string(F.q));

  PathSet paths = disjoint_paths(plan.inst, s, v);
  if (paths.count < d)
    throw_error(ErrorKind::Feasibility, "InsufficientConnectivity",
                "masked delivery of " + std::to_string(L) + " symbols against ell = " +
                    std::to_string(ell) + " needs " + std::to_string(d) +
                    " vertex-disjoint paths, '" + plan.inst.node_names[v] + "' has " +
                    std::to_string(paths.count));

  plan.scheme = "shamir";
  plan.d = d;
  plan.ell = ell;
  plan.x = plan.inst.x;
  plan.z = 0;
  plan.dhat = d;
  plan.kappa = L;
  plan.n = 1;
  plan.formula = Rational::make(L, 1);
  plan.rand_dim = ell;
  plan.source_blocks = {{0, ell}};
  plan.transcript.assign(plan.inst.edges.size(), {});

  detail::RowOps ops{F, plan.rand_dim};
  std::vector<Row> coeff;
  for (int m = 0; m < L; ++m) coeff.push_back(ops.constant(F.reduce(payload[m])));
  for (int k = 0; k < ell; ++k) coeff.push_back(ops.unit(k));

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

  // Receiver-side reconstruction, checked against the payload constants.
  Mat V(d, d);
  for (int i = 0; i < d; ++i) {
    std::uint32_t point = 1;
    for (int c = 0; c < d; ++c) {
      V.at(i, c) = point;
      point = F.mul(point, static_cast<std::uint32_t>(i + 1));
    }
  }
  Mat Vi = mat_inverse(F, V, "unicast reconstruction");
  std::vector<Row> recovered;
  for (int m = 0; m < L; ++m) {
    Row rec = ops.zero();
    for (int i = 0; i < d; ++i) ops.axpy(rec, Vi.at(m, i), shares[i]);
    if (rec != coeff[m])
      throw_error(ErrorKind::Internal, "Internal",
                  "unicast reconstruction mismatch at '" + plan.inst.node_names[v] + "'");
    recovered.push_back(std::move(rec));
  }
  plan.keys = {recovered};
  return plan;
}

}  // namespace keycast
