// keycast command-line tool.
//
// Exit codes: 0 success; 1 verdict failure (secrecy leak, or achieved rate
// below the scheme formula); 2 usage, parse, or validation error; 3 budget or
// feasibility error; 4 internal invariant failure (always a bug).
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "keycast/audit.hpp"
#include "keycast/classify.hpp"
#include "keycast/engine.hpp"
#include "keycast/errors.hpp"
#include "keycast/generate.hpp"
#include "keycast/io.hpp"
#include "keycast/report.hpp"

namespace {

using namespace keycast;

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::Validation:
      return 2;
    case ErrorKind::Feasibility:
    case ErrorKind::Budget:
      return 3;
    case ErrorKind::Internal:
      return 4;
  }
  return 4;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw_error(ErrorKind::Parse, "IoError", "cannot open " + path + " for writing");
  f << content;
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::pair<int, int> parse_range(const std::string& s) {
  try {
    const auto pos = s.find("..");
    if (pos == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
  } catch (const std::exception&) {
    throw_error(ErrorKind::Parse, "ParseError", "expected a range like 2..4, got '" + s + "'");
  }
}

// Shared by run/audit: resolve the dimension, refusing requests the terminals
// cannot support.
int resolve_dimension(const NetworkInstance& inst, int requested) {
  const int dmax = default_dimension(inst);
  if (requested > 0 && requested > dmax)
    throw_error(ErrorKind::Validation, "BadParams",
                "requested d = " + std::to_string(requested) +
                    " exceeds the minimum terminal connectivity " + std::to_string(dmax));
  return requested > 0 ? requested : dmax;
}

NetworkInstance load_valid(const std::string& path) {
  NetworkInstance inst = load_instance(path);
  const auto violations = validate_instance(inst);
  if (!violations.empty())
    throw_error(ErrorKind::Validation, "InvalidInstance",
                path + ": " + violations.front());
  return inst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact multiple key-cast schemes and secrecy audits over noiseless DAGs"};
  app.require_subcommand(1);

  std::uint64_t budget = 100000000ULL;
  if (const char* env = std::getenv("KEYCAST_BUDGET"))
    budget = std::strtoull(env, nullptr, 10);

  std::string v_file;
  auto* sc_validate =
      app.add_subcommand("validate", "check a keycast v1 file's structural invariants");
  sc_validate->add_option("file", v_file, "instance file")->required();

  std::string a_file;
  int a_d = -1;
  auto* sc_analyze =
      app.add_subcommand("analyze", "connectivity profile and node classification");
  sc_analyze->add_option("file", a_file, "instance file")->required();
  sc_analyze->add_option("--d", a_d, "connectivity dimension (default: max supported)");

  std::string r_file, r_scheme = "full", r_csv;
  std::uint64_t r_seed = 1;
  int r_d = -1;
  auto* sc_run = app.add_subcommand("run", "execute a scheme and report keys and rate");
  sc_run->add_option("file", r_file, "instance file")->required();
  sc_run->add_option("--scheme", r_scheme,
                     "full | multisource | partial | partial-multisource | unstructured "
                     "| fig1 | fig1_multicast");
  sc_run->add_option("--seed", r_seed, "randomness seed");
  sc_run->add_option("--d", r_d, "connectivity dimension (default: max supported)");
  sc_run->add_option("--csv", r_csv, "write the transcript as CSV to this path");

  std::string u_file, u_scheme = "full", u_csv;
  std::uint64_t u_budget = budget, u_samples = 0, u_sample_seed = 1;
  int u_d = -1, u_threads = 0;
  auto* sc_audit =
      app.add_subcommand("audit", "exact secrecy audit over every admissible eavesdropper");
  sc_audit->add_option("file", u_file, "instance file")->required();
  sc_audit->add_option("--scheme", u_scheme,
                       "full | multisource | partial | partial-multisource | unstructured "
                       "| fig1 | fig1_multicast");
  sc_audit->add_option("--d", u_d, "connectivity dimension (default: max supported)");
  sc_audit->add_option("--budget", u_budget,
                       "max enumerated states (KEYCAST_BUDGET overrides the default)");
  sc_audit->add_option("--threads", u_threads, "worker threads (0 = hardware)");
  sc_audit->add_option("--samples", u_samples,
                       "Monte-Carlo samples per set instead of enumeration (advisory only)");
  sc_audit->add_option("--sample-seed", u_sample_seed, "seed for --samples");
  sc_audit->add_option("--csv", u_csv, "write the report as CSV to this path");

  std::string g_kind = "fig2", g_out;
  GenParams gp;
  std::uint64_t g_seed = 1;
  int g_nodes = 8;
  double g_frac = 0.3;
  auto* sc_gen = app.add_subcommand("gen", "emit a built-in instance family as keycast v1");
  sc_gen->add_option("--kind", g_kind,
                     "fig1 | fig2 | fig2_multi | type_b_chain | partial_mix | random");
  sc_gen->add_option("--q", gp.q, "field modulus");
  sc_gen->add_option("--d", gp.d, "connectivity parameter");
  sc_gen->add_option("--ell", gp.ell, "max eavesdropped non-source nodes");
  sc_gen->add_option("--x", gp.x, "max eavesdropped sources");
  sc_gen->add_option("--sources", gp.sources, "source count (fig2_multi)");
  sc_gen->add_option("--len", gp.len, "chain length (type_b_chain)");
  sc_gen->add_option("--extra", gp.extra, "extra partial parents (partial_mix)");
  sc_gen->add_option("--seed", g_seed, "seed (random)");
  sc_gen->add_option("--nodes", g_nodes, "node count (random)");
  sc_gen->add_option("--partial-fraction", g_frac, "partial node fraction (random)");
  sc_gen->add_option("--out", g_out, "output path (default: stdout)");

  std::string b_family = "fig2", b_drange = "2..4", b_ellrange = "1..3";
  std::uint32_t b_q = 13;
  auto* sc_bench = app.add_subcommand("bench", "rate table over a parameter grid (CSV)");
  sc_bench->add_option("--family", b_family, "instance family (fig2)");
  sc_bench->add_option("--d-range", b_drange, "dimension range a..b");
  sc_bench->add_option("--ell-range", b_ellrange, "eavesdropper range a..b");
  sc_bench->add_option("--q", b_q, "field modulus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sc_validate->parsed()) {
      const NetworkInstance inst = load_instance(v_file);
      const auto violations = validate_instance(inst);
      std::cout << render_validate(inst, violations);
      return violations.empty() ? 0 : 2;
    }

    if (sc_analyze->parsed()) {
      const NetworkInstance inst = load_valid(a_file);
      const int d = a_d > 0 ? a_d : default_dimension(inst);
      const ConnectivityProfile profile = classify_nodes(inst, d, inst.ell, -1);
      std::cout << render_analyze(inst, profile);
      return 0;
    }

    if (sc_run->parsed()) {
      const NetworkInstance inst = load_valid(r_file);
      const int d = resolve_dimension(inst, r_d);
      const Plan plan = compile_plan(inst, r_scheme, d);
      Rng rng(r_seed);
      const SchemeResult res = execute_plan(plan, rng);
      std::cout << render_run(res);
      if (!r_csv.empty()) write_file(r_csv, run_csv(res));
      if (!(res.achieved >= plan.formula)) {
        std::cout << "FAIL: achieved rate below the scheme formula\n";
        return 1;
      }
      return 0;
    }

    if (sc_audit->parsed()) {
      const NetworkInstance inst = load_valid(u_file);
      const int d = resolve_dimension(inst, u_d);
      const Plan plan = compile_plan(inst, u_scheme, d);
      AuditOptions opts;
      opts.budget = u_budget;
      opts.threads = u_threads;
      opts.samples = u_samples;
      opts.sample_seed = u_sample_seed;
      const AuditReport report = audit_scheme(plan, opts);
      std::cout << render_audit(plan, report);
      if (!u_csv.empty()) write_file(u_csv, audit_csv(plan, report));
      if (report.exact && !report.all_zero) return 1;
      return 0;
    }

    if (sc_gen->parsed()) {
      const NetworkInstance inst =
          g_kind == "random"
              ? generate_random(g_seed, g_nodes, gp.d, g_frac, gp.q, gp.ell)
              : generate_canonical(g_kind, gp);
      const std::string text = emit_instance(inst);
      if (g_out.empty())
        std::cout << text;
      else
        write_file(g_out, text);
      return 0;
    }

    if (sc_bench->parsed()) {
      if (b_family != "fig2")
        throw_error(ErrorKind::Parse, "ParseError",
                    "unknown bench family '" + b_family + "' (supported: fig2)");
      const auto [d_lo, d_hi] = parse_range(b_drange);
      const auto [e_lo, e_hi] = parse_range(b_ellrange);
      std::string out = "family,d,ell,q,achieved,formula,decimal\n";
      for (int d = d_lo; d <= d_hi; ++d) {
        for (int ell = std::max(1, e_lo); ell <= std::min(e_hi, d - 1); ++ell) {
          GenParams p;
          p.q = b_q;
          p.d = d;
          p.ell = ell;
          const NetworkInstance inst = generate_canonical("fig2", p);
          const Plan plan = compile_plan(inst, "full", d);
          Rng rng(1);
          const SchemeResult res = execute_plan(plan, rng);
          out += "fig2," + std::to_string(d) + "," + std::to_string(ell) + "," +
                 std::to_string(b_q) + "," + res.achieved.str() + "," +
                 plan.formula.str() + "," + fixed4(res.achieved.value()) + "\n";
        }
      }
      std::cout << out;
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
