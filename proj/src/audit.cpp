#include "keycast/audit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

#include "keycast/errors.hpp"
#include "keycast/rng.hpp"
#include "plan_internal.hpp"

namespace keycast {

namespace {

using U128 = unsigned __int128;

// Affine row reduction over the linear coordinates; constant terms ride along.
// Dependent rows reduce to constants and drop out -- the surviving rows are an
// invertible transform of the original observation tuple, so the induced
// partition of the state space (and therefore any independence verdict) is
// unchanged.
std::vector<Row> reduce_observation(const Field& F, int dim, const std::vector<Row>& rows) {
  std::vector<Row> basis;
  std::vector<int> pivots;
  for (Row r : rows) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const int p = pivots[i];
      if (r[p] == 0) continue;
      const std::uint32_t f = r[p];
      for (int c = p; c <= dim; ++c) r[c] = F.sub(r[c], F.mul(f, basis[i][c]));
    }
    int pivot = -1;
    for (int c = 0; c < dim; ++c)
      if (r[c]) {
        pivot = c;
        break;
      }
    if (pivot < 0) continue;
    const std::uint32_t inv = F.inv(r[pivot]);
    for (int c = pivot; c <= dim; ++c) r[c] = F.mul(r[c], inv);
    std::size_t at = 0;
    while (at < pivots.size() && pivots[at] < pivot) ++at;
    basis.insert(basis.begin() + at, std::move(r));
    pivots.insert(pivots.begin() + at, pivot);
  }
  return basis;
}

std::uint64_t saturating_choose(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  U128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > cap) return cap;
  }
  return static_cast<std::uint64_t>(acc);
}

struct JointCounts {
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> cells;
};

// Exact enumeration of one eavesdropper set over a state sub-range.
void tally_range(const Plan& plan, const std::vector<Row>& key_rows,
                 const std::vector<Row>& obs_rows, std::uint64_t lo, std::uint64_t hi,
                 JointCounts& out) {
  const Field& F = plan.F;
  const int dim = plan.rand_dim;
  detail::RowOps ops{F, dim};

  std::vector<std::uint32_t> state(dim, 0);
  std::uint64_t idx = lo;
  for (int i = 0; i < dim; ++i) {
    state[i] = static_cast<std::uint32_t>(idx % F.q);
    idx /= F.q;
  }
  for (std::uint64_t s = lo; s < hi; ++s) {
    std::uint64_t pk = 0;
    for (const Row& r : key_rows) pk = pk * F.q + ops.eval(r, state);
    std::uint64_t po = 0;
    for (const Row& r : obs_rows) po = po * F.q + ops.eval(r, state);
    ++out.cells[{pk, po}];
    for (int i = 0; i < dim; ++i) {
      if (++state[i] == F.q)
        state[i] = 0;
      else
        break;
    }
  }
}

}  // namespace

MiResult exact_mutual_information(
    const std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t>& joint) {
  std::map<std::uint64_t, std::uint64_t> mk, mo;
  std::uint64_t total = 0;
  for (const auto& [cell, c] : joint) {
    mk[cell.first] += c;
    mo[cell.second] += c;
    total += c;
  }
  MiResult res;
  if (total == 0) return res;
  double bits = 0.0;
  for (const auto& [cell, c] : joint) {
    const std::uint64_t a = mk[cell.first], b = mo[cell.second];
    if (U128(c) * total != U128(a) * b) res.is_zero = false;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    bits += p * std::log2(static_cast<double>(c) * static_cast<double>(total) /
                          (static_cast<double>(a) * static_cast<double>(b)));
  }
  res.bits = res.is_zero ? 0.0 : std::max(bits, 0.0);
  return res;
}

std::vector<std::vector<int>> admissible_betas(const NetworkInstance& inst, int tset) {
  if (tset < 0 || tset >= static_cast<int>(inst.tsets.size()))
    throw_error(ErrorKind::Validation, "BadParams", "terminal set index out of range");
  std::set<int> T(inst.tsets[tset].begin(), inst.tsets[tset].end());

  std::vector<int> ns, ss;
  for (int v = 0; v < inst.size(); ++v) {
    if (T.count(v)) continue;
    (inst.source[v] ? ss : ns).push_back(v);
  }

  // All node subsets with at most ell non-sources and at most x sources.
  auto extend = [](std::vector<std::vector<int>> base, const std::vector<int>& pool,
                   int take_max) {
    std::vector<std::vector<int>> out;
    for (int take = 0; take <= take_max && take <= static_cast<int>(pool.size()); ++take) {
      std::vector<int> c(take);
      for (int i = 0; i < take; ++i) c[i] = i;
      for (;;) {
        for (const auto& b : base) {
          std::vector<int> row = b;
          for (int i = 0; i < take; ++i) row.push_back(pool[c[i]]);
          out.push_back(std::move(row));
        }
        if (take == 0) break;
        int i = take - 1;
        while (i >= 0 && c[i] == static_cast<int>(pool.size()) - take + i) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < take; ++j) c[j] = c[j - 1] + 1;
      }
    }
    return out;
  };
  auto combos = extend(extend({{}}, ns, inst.ell), ss, inst.x);
  for (auto& b : combos) std::sort(b.begin(), b.end());
  std::sort(combos.begin(), combos.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  combos.erase(std::unique(combos.begin(), combos.end()), combos.end());

  for (const auto& extra : inst.eaves) {
    std::vector<int> b = extra;
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    bool hits_terminal = false;
    for (int v : b) hits_terminal = hits_terminal || T.count(v);
    if (hits_terminal) continue;
    if (std::find(combos.begin(), combos.end(), b) == combos.end()) combos.push_back(b);
  }
  return combos;
}

std::vector<Row> observation_rows(const Plan& plan, const std::vector<int>& beta) {
  std::set<int> B(beta.begin(), beta.end());
  std::vector<Row> rows;
  for (std::size_t e = 0; e < plan.inst.edges.size(); ++e)
    if (B.count(plan.inst.edges[e].tail) || B.count(plan.inst.edges[e].head))
      rows.insert(rows.end(), plan.transcript[e].begin(), plan.transcript[e].end());

  const auto srcs = plan.inst.sources();
  for (int v : beta) {
    if (!plan.inst.source[v]) continue;
    auto it = std::find(srcs.begin(), srcs.end(), v);
    if (it == srcs.end() ||
        static_cast<std::size_t>(it - srcs.begin()) >= plan.source_blocks.size())
      throw_error(ErrorKind::Internal, "Internal",
                  "eavesdropped source has no randomness block");
    const auto [lo, hi] = plan.source_blocks[it - srcs.begin()];
    detail::RowOps ops{plan.F, plan.rand_dim};
    for (int i = lo; i < hi; ++i) rows.push_back(ops.unit(i));
  }
  return rows;
}

AuditReport audit_scheme(const Plan& plan, const AuditOptions& opts) {
  if (plan.scheme == "shamir")
    throw_error(ErrorKind::Validation, "BadParams",
                "unicast delivery has no key to audit; use the share-level checks");

  AuditReport report;
  report.scheme = plan.scheme;
  report.exact = (opts.samples == 0);

  const std::uint64_t states = plan.state_count();
  if (report.exact) {
    U128 work = 0;
    for (std::size_t ti = 0; ti < plan.inst.tsets.size(); ++ti) {
      std::set<int> T(plan.inst.tsets[ti].begin(), plan.inst.tsets[ti].end());
      int ns = 0, ss = 0;
      for (int v = 0; v < plan.inst.size(); ++v) {
        if (T.count(v)) continue;
        (plan.inst.source[v] ? ss : ns)++;
      }
      U128 non_source_picks = 0, source_picks = 0;
      for (int a = 0; a <= plan.inst.ell; ++a)
        non_source_picks += saturating_choose(ns, a, opts.budget);
      for (int b = 0; b <= plan.inst.x; ++b)
        source_picks += saturating_choose(ss, b, opts.budget);
      work += (non_source_picks * source_picks + plan.inst.eaves.size()) * states;
    }
    if (work > opts.budget)
      throw BudgetExceeded(work > U128(UINT64_MAX) ? UINT64_MAX
                                                   : static_cast<std::uint64_t>(work),
                           opts.budget);
  }

  int threads = opts.threads > 0 ? opts.threads
                                 : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;

  for (std::size_t ti = 0; ti < plan.inst.tsets.size(); ++ti) {
    for (const auto& beta : admissible_betas(plan.inst, static_cast<int>(ti))) {
      const std::vector<Row> obs =
          reduce_observation(plan.F, plan.rand_dim, observation_rows(plan, beta));
      const std::vector<Row>& key_rows = plan.keys[ti];

      JointCounts joint;
      if (report.exact) {
        const int used = static_cast<int>(
            std::min<std::uint64_t>(states, static_cast<std::uint64_t>(threads)));
        std::vector<JointCounts> parts(used);
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (states + used - 1) / used;
        for (int t = 0; t < used; ++t) {
          const std::uint64_t lo = t * chunk;
          const std::uint64_t hi = std::min(states, lo + chunk);
          if (lo >= hi) continue;
          pool.emplace_back(tally_range, std::cref(plan), std::cref(key_rows),
                            std::cref(obs), lo, hi, std::ref(parts[t]));
        }
        for (auto& th : pool) th.join();
        for (const auto& part : parts)
          for (const auto& [cell, c] : part.cells) joint.cells[cell] += c;
      } else {
        // Advisory Monte-Carlo estimate.  Value tuples get dense labels so the
        // joint table stays exact over the sample regardless of how many
        // reduced rows the observation has (no packing overflow).
        detail::RowOps ops{plan.F, plan.rand_dim};
        Rng rng(opts.sample_seed);
        std::vector<std::uint32_t> state(plan.rand_dim);
        std::map<std::vector<std::uint32_t>, std::uint64_t> kid, oid;
        std::vector<std::uint32_t> kv, ov;
        for (std::uint64_t s = 0; s < opts.samples; ++s) {
          for (int i = 0; i < plan.rand_dim; ++i) state[i] = rng.uniform(plan.F.q);
          kv.clear();
          ov.clear();
          for (const Row& r : key_rows) kv.push_back(ops.eval(r, state));
          for (const Row& r : obs) ov.push_back(ops.eval(r, state));
          const std::uint64_t pk = kid.emplace(kv, kid.size()).first->second;
          const std::uint64_t po = oid.emplace(ov, oid.size()).first->second;
          ++joint.cells[{pk, po}];
        }
      }

      const MiResult mi = exact_mutual_information(joint.cells);
      BetaReport row;
      row.tset = static_cast<int>(ti);
      row.beta = beta;
      row.states = report.exact ? states : opts.samples;
      row.sampled = !report.exact;
      if (report.exact) {
        row.is_zero = mi.is_zero;
        row.mi_bits = mi.bits;
        report.all_zero = report.all_zero && mi.is_zero;
      } else {
        // Sampling never claims a verdict: the estimate is reported, the
        // pass/fail machinery is untouched.
        row.is_zero = true;
        row.mi_bits = mi.bits;
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace keycast
