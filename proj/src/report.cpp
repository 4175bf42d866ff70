#include "keycast/report.hpp"

#include <cstdio>
#include <string>
#include <vector>

namespace keycast {

namespace {

std::string fixed(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

// "2/1 (2.0000)" -- exact rational first, decimal to 4 places in parentheses.
std::string rate_full(const Rational& r) {
  return r.str() + " (" + fixed(r.value(), 4) + ")";
}

// Compact form used in the final rate line: "2" instead of "2/1".
std::string rate_short(const Rational& r) {
  return r.den == 1 ? std::to_string(r.num) : r.str();
}

const char* class_name(NodeClass c) {
  switch (c) {
    case NodeClass::Source: return "source";
    case NodeClass::Fully: return "fully";
    case NodeClass::TypeA: return "typeA";
    case NodeClass::TypeB: return "typeB";
    case NodeClass::Excluded: return "excluded";
  }
  return "?";
}

std::string join_names(const NetworkInstance& inst, const std::vector<int>& ids,
                       const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += sep;
    out += inst.node_names[ids[i]];
  }
  return out;
}

}  // namespace

std::string format_beta(const NetworkInstance& inst, const std::vector<int>& beta) {
  return "{" + join_names(inst, beta, ";") + "}";
}

std::string render_validate(const NetworkInstance& inst,
                            const std::vector<std::string>& violations) {
  std::string out;
  if (violations.empty()) {
    out += inst.name + ": ok (nodes=" + std::to_string(inst.size()) +
           " edges=" + std::to_string(inst.edges.size()) +
           " sources=" + std::to_string(inst.sources().size()) +
           " tsets=" + std::to_string(inst.tsets.size()) +
           " ell=" + std::to_string(inst.ell) + " x=" + std::to_string(inst.x) +
           " q=" + std::to_string(inst.q) + ")\n";
  } else {
    out += inst.name + ": invalid\n";
    for (const auto& v : violations) out += "  - " + v + "\n";
  }
  return out;
}

std::string render_analyze(const NetworkInstance& inst, const ConnectivityProfile& profile) {
  std::string out = "analyze " + inst.name + ": q=" + std::to_string(inst.q) +
                    " ell=" + std::to_string(inst.ell) + " x=" + std::to_string(inst.x) +
                    "\n";
  out += "d = " + std::to_string(profile.d) + ", dhat = " + std::to_string(profile.dhat) +
         ", z_obs = " + std::to_string(profile.z_obs) + ", z = " + std::to_string(profile.z) +
         "\n";
  for (int v = 0; v < inst.size(); ++v) {
    out += "node " + inst.node_names[v] + ": " + class_name(profile.cls[v]);
    if (profile.cls[v] == NodeClass::Source || profile.cls[v] == NodeClass::Excluded) {
      out += "\n";
      continue;
    }
    out += " conn=" + std::to_string(profile.conn[v]);
    out += " partial_in=" + std::to_string(profile.partial_in[v]);
    if (profile.is_partial(v))
      out += " D={" + join_names(inst, profile.D[v], ";") + "}";
    const int t = inst.terminal_of(v);
    if (t >= 0) out += " terminal=" + std::to_string(t);
    out += "\n";
  }
  out += "J = {" + join_names(inst, profile.J, ";") + "}, p = {";
  for (std::size_t i = 0; i < profile.p.size(); ++i) {
    if (i) out += ";";
    out += std::to_string(profile.p[i]);
  }
  out += "}\n";
  return out;
}

std::string render_run(const SchemeResult& res) {
  const Plan& plan = res.plan;
  const NetworkInstance& inst = plan.inst;
  std::string out = "scheme " + plan.scheme + " on " + inst.name +
                    ": q=" + std::to_string(inst.q) + " d=" + std::to_string(plan.d) +
                    " ell=" + std::to_string(plan.ell) + " x=" + std::to_string(plan.x) +
                    "\n";
  for (const auto& note : plan.notes) out += "note: " + note + "\n";
  if (plan.identity_collisions)
    out += "note: evaluation indices wrapped modulo q (field smaller than the network)\n";
  for (std::size_t i = 0; i < res.keys.size(); ++i) {
    out += "key[" + std::to_string(i) + "] (terminals " +
           join_names(inst, inst.tsets[i], " ") + "):";
    for (auto v : res.keys[i]) out += " " + std::to_string(v);
    out += "\n";
  }
  std::size_t used = 0;
  for (const auto& slots : res.transcript)
    if (!slots.empty()) ++used;
  out += "edges used: " + std::to_string(used) + " of " +
         std::to_string(inst.edges.size()) + ", blocklength n = " + std::to_string(plan.n) +
         "\n";
  out += "rate: " + rate_full(res.achieved) + "\n";
  out += "achieved " + res.achieved.str() + ", formula " + rate_short(plan.formula) + "\n";
  return out;
}

std::string render_audit(const Plan& plan, const AuditReport& report) {
  const NetworkInstance& inst = plan.inst;
  std::string out = "audit " + report.scheme + " on " + inst.name +
                    ": q=" + std::to_string(inst.q) + " d=" + std::to_string(plan.d) +
                    " ell=" + std::to_string(plan.ell) + " x=" + std::to_string(plan.x) +
                    "\n";
  std::size_t leaks = 0;
  for (const auto& row : report.rows) {
    out += "tset " + std::to_string(row.tset) + " beta " + format_beta(inst, row.beta);
    if (row.sampled) {
      out += ": samples " + std::to_string(row.states) + ", MI estimate " +
             fixed(row.mi_bits, 6) + " bits (advisory)";
    } else {
      out += ": states " + std::to_string(row.states) + ", MI " +
             (row.is_zero ? std::string("0") : fixed(row.mi_bits, 6) + " bits");
      if (!row.is_zero) {
        out += " LEAK";
        ++leaks;
      }
    }
    out += "\n";
  }
  const std::string n = std::to_string(report.rows.size());
  if (!report.exact) {
    out += "advisory sampled audit over " + n + " eavesdropper sets: no verdict\n";
  } else if (report.all_zero) {
    out += "all " + n + " eavesdropper sets: MI = 0 (exact)\n";
  } else {
    out += "LEAK: " + std::to_string(leaks) + " of " + n +
           " eavesdropper sets show MI > 0\n";
  }
  return out;
}

std::string audit_csv(const Plan& plan, const AuditReport& report) {
  std::string out = "scheme,terminal_set,beta,states,is_zero,mi_bits\n";
  for (const auto& row : report.rows) {
    // Sampled rows carry an estimate only; the verdict cell stays empty.
    const std::string verdict = row.sampled ? "" : (row.is_zero ? "1" : "0");
    out += report.scheme + "," + std::to_string(row.tset) + "," +
           format_beta(plan.inst, row.beta) + "," + std::to_string(row.states) + "," +
           verdict + "," + fixed(row.mi_bits, 6) + "\n";
  }
  return out;
}

std::string run_csv(const SchemeResult& res) {
  const NetworkInstance& inst = res.plan.inst;
  std::string out = "edge,slot,symbol\n";
  for (std::size_t e = 0; e < res.transcript.size(); ++e) {
    const auto& edge = inst.edges[e];
    const std::string label = inst.node_names[edge.tail] + "->" +
                              inst.node_names[edge.head] + "#" + std::to_string(e);
    for (std::size_t s = 0; s < res.transcript[e].size(); ++s)
      out += label + "," + std::to_string(s) + "," +
             std::to_string(res.transcript[e][s]) + "\n";
  }
  return out;
}

}  // namespace keycast
