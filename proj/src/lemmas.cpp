#include "keycast/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "keycast/errors.hpp"
#include "keycast/matrix.hpp"
#include "keycast/plan.hpp"
#include "plan_internal.hpp"

namespace keycast {

namespace {

// Enumerate all invertible d x d matrices over F_q (column-major build with a
// rank tracker would be faster; at the sizes audited here brute force is
// instant).
std::vector<Mat> general_linear_group(const Field& F, int d) {
  std::vector<Mat> out;
  const int cells = d * d;
  std::uint64_t total = 1;
  for (int i = 0; i < cells; ++i) total *= F.q;
  for (std::uint64_t code = 0; code < total; ++code) {
    Mat A(d, d);
    std::uint64_t v = code;
    for (int i = 0; i < cells; ++i) {
      A.a[i] = static_cast<std::uint32_t>(v % F.q);
      v /= F.q;
    }
    if (mat_rank(F, A) == d) out.push_back(std::move(A));
  }
  return out;
}

// All symmetric d x d matrices, as upper-triangle variable assignments.
std::uint64_t symmetric_count(const Field& F, int d) {
  std::uint64_t total = 1;
  for (int i = 0; i < sym_upper_count(d); ++i) total *= F.q;
  return total;
}

Mat symmetric_from_code(const Field& F, int d, std::uint64_t code) {
  std::vector<std::uint32_t> upper(sym_upper_count(d));
  for (auto& u : upper) {
    u = static_cast<std::uint32_t>(code % F.q);
    code /= F.q;
  }
  return sym_from_upper(F, d, upper);
}

LemmaReport key_uniform_under_basis_change(const Field& F, int d, int ell) {
  LemmaReport rep;
  const auto gl = general_linear_group(F, d);
  const std::uint64_t syms = symmetric_count(F, d);
  const int lead = d - ell;

  for (const Mat& A : gl) {
    // Map M to A^T M A.  The map must be a bijection of the symmetric
    // matrices, and conditioned on every transformed entry an observer of the
    // last ell rows and columns can touch, the leading lead x lead block must
    // stay uniform.  The scheme's key lives inside that block.
    std::set<std::vector<std::uint32_t>> images;
    std::map<std::vector<std::uint32_t>, std::map<std::vector<std::uint32_t>, std::uint64_t>>
        table;
    for (std::uint64_t code = 0; code < syms; ++code) {
      const Mat M = symmetric_from_code(F, d, code);
      const Mat T = mat_mul(F, mat_mul(F, mat_transpose(A), M), A);
      images.insert(T.a);
      std::vector<std::uint32_t> hidden, obs;
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
          if (j < lead)
            hidden.push_back(T.at(i, j));
          else
            obs.push_back(T.at(i, j));
        }
      ++table[obs][hidden];
    }
    if (images.size() != syms) {
      rep.pass = false;
      rep.detail = "basis change is not a bijection of the symmetric matrices";
      return rep;
    }
    std::uint64_t expect_hidden = 1;
    for (int i = 0; i < sym_upper_count(lead); ++i) expect_hidden *= F.q;
    for (const auto& [obs, blocks] : table) {
      if (blocks.size() != expect_hidden) {
        rep.pass = false;
        rep.detail = "a conditioning left some hidden-block values unreachable";
        return rep;
      }
      const std::uint64_t want = blocks.begin()->second;
      for (const auto& [k, c] : blocks)
        if (c != want) {
          rep.pass = false;
          rep.detail = "conditional hidden-block counts are not flat";
          return rep;
        }
    }
  }
  rep.pass = true;
  rep.cases = gl.size();
  rep.detail = "basis changes checked: " + std::to_string(gl.size()) +
               ", symmetric matrices per check: " + std::to_string(syms);
  return rep;
}

LemmaReport rank_additivity_matches_enumeration(const Field& F, int d, int ell) {
  LemmaReport rep;
  const std::uint64_t syms = symmetric_count(F, d);
  const int key_rows = d - ell;
  const int vars = sym_upper_count(d);
  detail::RowOps ops{F, vars};
  detail::SymBlock M{0, d};

  int independent_pairs = 0;
  std::uint64_t pairs = 0;
  for (std::uint32_t av = 0; av < F.q; ++av)
    for (std::uint32_t ae = 0; ae < F.q; ++ae) {
      if (av == ae) continue;
      ++pairs;
      const auto cv = vandermonde_column(F, av, d);
      const auto ce = vandermonde_column(F, ae, d);
      std::vector<Row> key_rows_f, obs_rows_f;
      const auto shares_v = M.matvec(ops, cv);
      for (int r = 0; r < key_rows; ++r) key_rows_f.push_back(shares_v[r]);
      const auto shares_e = M.matvec(ops, ce);
      for (int r = 0; r < d; ++r) obs_rows_f.push_back(shares_e[r]);

      // Algebraic prediction: the key functionals stay independent of the
      // observed ones exactly when ranks add.
      auto rank_of = [&](const std::vector<Row>& a, const std::vector<Row>& b) {
        Mat S(static_cast<int>(a.size() + b.size()), vars);
        int r = 0;
        for (const auto& row : a) {
          for (int c = 0; c < vars; ++c) S.at(r, c) = row[c];
          ++r;
        }
        for (const auto& row : b) {
          for (int c = 0; c < vars; ++c) S.at(r, c) = row[c];
          ++r;
        }
        return mat_rank(F, S);
      };
      const bool predicted =
          rank_of(key_rows_f, {}) + rank_of(obs_rows_f, {}) == rank_of(key_rows_f, obs_rows_f);

      // Enumerated truth.
      std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> joint;
      std::vector<std::uint32_t> state(vars);
      for (std::uint64_t code = 0; code < syms; ++code) {
        std::uint64_t c2 = code;
        for (int i = 0; i < vars; ++i) {
          state[i] = static_cast<std::uint32_t>(c2 % F.q);
          c2 /= F.q;
        }
        std::uint64_t pk = 0, po = 0;
        for (const auto& r : key_rows_f) pk = pk * F.q + ops.eval(r, state);
        for (const auto& r : obs_rows_f) po = po * F.q + ops.eval(r, state);
        ++joint[{pk, po}];
      }
      std::map<std::uint64_t, std::uint64_t> mk, mo;
      std::uint64_t total = 0;
      for (const auto& [cell, c] : joint) {
        mk[cell.first] += c;
        mo[cell.second] += c;
        total += c;
      }
      bool enumerated = true;
      for (const auto& [cell, c] : joint)
        if (c * total != mk[cell.first] * mo[cell.second]) enumerated = false;

      if (enumerated != predicted) {
        rep.pass = false;
        rep.detail = "rank prediction disagreed with enumeration at indices (" +
                     std::to_string(av) + ", " + std::to_string(ae) + ")";
        return rep;
      }
      if (enumerated) ++independent_pairs;
    }

  rep.pass = independent_pairs > 0;
  rep.cases = pairs;
  rep.detail = "index pairs checked: " + std::to_string(pairs) +
               ", independent: " + std::to_string(independent_pairs);
  if (!rep.pass) rep.detail += " (no independent pair exists)";
  return rep;
}

bool flat_product_cover(const Field& F, int rows, int inner, int cols, std::uint64_t& cases) {
  // B: inner x cols Vandermonde at points 0..inner-1 (full column rank needs
  // cols <= inner <= q).
  Mat B(inner, cols);
  for (int i = 0; i < inner; ++i) {
    std::uint32_t point = 1;
    for (int c = 0; c < cols; ++c) {
      B.at(i, c) = point;
      point = F.mul(point, static_cast<std::uint32_t>(i));
    }
  }
  std::uint64_t a_total = 1;
  for (int i = 0; i < rows * inner; ++i) a_total *= F.q;

  std::map<std::vector<std::uint32_t>, std::uint64_t> hits;
  for (std::uint64_t code = 0; code < a_total; ++code) {
    Mat A(rows, inner);
    std::uint64_t v = code;
    for (int i = 0; i < rows * inner; ++i) {
      A.a[i] = static_cast<std::uint32_t>(v % F.q);
      v /= F.q;
    }
    const Mat C = mat_mul(F, A, B);
    ++hits[C.a];
  }
  cases += a_total;

  std::uint64_t range = 1;
  for (int i = 0; i < rows * cols; ++i) range *= F.q;
  std::uint64_t expect = 1;
  for (int i = 0; i < rows * (inner - cols); ++i) expect *= F.q;
  if (hits.size() != range) return false;
  for (const auto& [c, n] : hits)
    if (n != expect) return false;
  return true;
}

LemmaReport product_cover_scan(const Field& F, int d, int ell, int n, int m) {
  LemmaReport rep;
  const int rows = d - ell;
  std::vector<std::pair<int, int>> cells;
  if (n > 0 && m > 0) {
    cells.push_back({n, m});
  } else {
    for (int inner = 1; inner <= static_cast<int>(F.q) && inner <= 4; ++inner)
      for (int cols = 1; cols <= inner; ++cols) {
        double states = std::pow(static_cast<double>(F.q), rows * inner);
        if (states <= 1e6) cells.push_back({inner, cols});
      }
  }
  if (cells.empty()) {
    rep.detail = "no grid cell fits the enumeration limit";
    return rep;
  }
  for (const auto& [inner, cols] : cells) {
    if (inner > static_cast<int>(F.q)) {
      rep.detail = "Vandermonde points exhausted: inner dimension exceeds q";
      return rep;
    }
    if (!flat_product_cover(F, rows, inner, cols, rep.cases)) {
      rep.detail = "cover is not flat at inner = " + std::to_string(inner) +
                   ", cols = " + std::to_string(cols);
      return rep;
    }
  }
  rep.pass = true;
  rep.detail = "grid cells checked: " + std::to_string(cells.size()) +
               ", matrices enumerated: " + std::to_string(rep.cases);
  return rep;
}

}  // namespace

LemmaReport verify_matrix_lemma(int which, int d, int ell, std::uint32_t q, int n, int m) {
  if (d < 1 || ell < 0 || ell >= d)
    throw_error(ErrorKind::Validation, "BadParams",
                "matrix lemma checks need d >= 1 and 0 <= ell < d");
  Field F(q);
  switch (which) {
    case 1:
      return key_uniform_under_basis_change(F, d, ell);
    case 2:
      return rank_additivity_matches_enumeration(F, d, ell);
    case 4:
      return product_cover_scan(F, d, ell, n, m);
    default:
      throw_error(ErrorKind::Validation, "BadParams",
                  "unknown matrix lemma id " + std::to_string(which));
  }
}

ConverseReport converse_check(const NetworkInstance& inst, int d, std::uint64_t budget) {
  Plan plan = compile_plan(inst, "full", d);
  ConverseReport rep;
  rep.states = plan.state_count();
  if (rep.states > budget) throw BudgetExceeded(rep.states, budget);

  detail::RowOps ops{plan.F, plan.rand_dim};
  const auto& key_rows = plan.keys.at(0);
  std::map<std::uint64_t, std::uint64_t> counts;
  std::vector<std::uint32_t> state(plan.rand_dim, 0);
  for (std::uint64_t s = 0; s < rep.states; ++s) {
    std::uint64_t pk = 0;
    for (const Row& r : key_rows) pk = pk * plan.F.q + ops.eval(r, state);
    ++counts[pk];
    for (int i = 0; i < plan.rand_dim; ++i) {
      if (++state[i] == plan.F.q)
        state[i] = 0;
      else
        break;
    }
  }

  std::uint64_t range = 1;
  for (std::size_t i = 0; i < key_rows.size(); ++i) range *= plan.F.q;
  rep.uniform = (counts.size() == range);
  const std::uint64_t first = counts.begin()->second;
  for (const auto& [k, c] : counts)
    if (c != first) rep.uniform = false;

  double H = 0.0;
  for (const auto& [k, c] : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(rep.states);
    H -= p * std::log2(p);
  }
  rep.key_entropy_bits = H;
  rep.bound_bits = static_cast<double>(d - plan.ell) * std::log2(static_cast<double>(plan.F.q));
  rep.tight = rep.uniform && plan.n == 1 &&
              static_cast<int>(key_rows.size()) == d - plan.ell;
  return rep;
}

}  // namespace keycast
