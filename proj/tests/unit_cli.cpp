// End-to-end tests of the installed command-line tool: every subcommand is
// exercised through a real subprocess, stdout is compared byte-for-byte where
// the format is frozen, and the exit-code contract is verified (0 ok,
// 1 verdict failure, 2 parse/validation, 3 feasibility/budget).
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "keycast/io.hpp"

namespace {

struct Cmd {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string scratch_dir() {
  static const std::string dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("keycast_cli_tests_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d.string();
  }();
  return dir;
}

std::string scratch_path(const std::string& name) { return scratch_dir() + "/" + name; }

void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  f << content;
}

// Runs the CLI through the shell; `env` is a prefix like "KEYCAST_BUDGET=10".
Cmd cli(const std::string& args, const std::string& env = "") {
  static int serial = 0;
  const std::string base = scratch_path("capture_" + std::to_string(serial++));
  const std::string out_path = base + ".out";
  const std::string err_path = base + ".err";
  std::string command;
  if (!env.empty()) command += env + " ";
  command += "\"" KEYCAST_CLI_PATH "\" " + args + " >" + out_path + " 2>" + err_path;
  const int raw = std::system(command.c_str());
  Cmd r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

bool has(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

// Generates a canonical instance into the scratch dir once and returns its path.
std::string gen_file(const std::string& name, const std::string& gen_args) {
  const std::string path = scratch_path(name);
  if (!std::filesystem::exists(path)) {
    Cmd g = cli("gen " + gen_args + " --out " + path);
    REQUIRE(g.code == 0);
  }
  return path;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("gen writes a file that validates cleanly") {
    const std::string path = gen_file("fig2_d2_q3.kc", "--kind fig2 --d 2 --q 3");
    Cmd v = cli("validate " + path);
    CHECK(v.code == 0);
    // instances are named after the file they were loaded from
    CHECK(v.out == path + ": ok (nodes=4 edges=6 sources=1 tsets=1 ell=1 x=0 q=3)\n");
  }

  TEST_CASE("gen to stdout emits text the parser round-trips") {
    Cmd g = cli("gen --kind type_b_chain --q 5 --d 3 --len 3");
    REQUIRE(g.code == 0);
    const keycast::NetworkInstance inst = keycast::parse_instance(g.out);
    CHECK(keycast::emit_instance(inst) == g.out);
  }

  TEST_CASE("validate reports structural violations with exit 2") {
    const std::string path = scratch_path("bad_structure.kc");
    write_text(path,
               "keycast v1\n"
               "field 3\n"
               "node s source\n"
               "node m\n"
               "node t terminal 1\n"
               "edge s m\n"
               "edge m t\n"
               "edge m s\n"
               "adversary ell=1 sources=0\n");
    Cmd v = cli("validate " + path);
    CHECK(v.code == 2);
    CHECK(has(v.out, ": invalid"));
    CHECK(has(v.out, "edge into source"));
  }

  TEST_CASE("a malformed file exits 2 with a line-numbered parse error") {
    const std::string path = scratch_path("bad_header.kc");
    write_text(path, "keycast v2\nname x\n");
    Cmd v = cli("validate " + path);
    CHECK(v.code == 2);
    CHECK(has(v.err, "line 1"));
    CHECK(has(v.err, "keycast v1"));
  }

  TEST_CASE("run reports the exact rate and its formula") {
    const std::string path = gen_file("fig2_d3_q5.kc", "--kind fig2 --d 3 --q 5");
    Cmd r = cli("run " + path + " --scheme full --seed 1");
    CHECK(r.code == 0);
    CHECK(has(r.out, "scheme full on " + path + ": q=5 d=3 ell=1 x=0"));
    CHECK(has(r.out, "edges used: 12 of 12, blocklength n = 1"));
    CHECK(has(r.out, "rate: 2/1 (2.0000)\n"));
    CHECK(has(r.out, "achieved 2/1, formula 2\n"));
  }

  TEST_CASE("run output is byte-deterministic for a fixed seed") {
    const std::string path = gen_file("fig2_d3_q5.kc", "--kind fig2 --d 3 --q 5");
    Cmd a = cli("run " + path + " --scheme full --seed 7");
    Cmd b = cli("run " + path + " --scheme full --seed 7");
    REQUIRE(a.code == 0);
    CHECK(!a.out.empty());
    CHECK(a.out == b.out);
  }

  TEST_CASE("run writes the transcript CSV") {
    const std::string path = gen_file("fig2_d3_q5.kc", "--kind fig2 --d 3 --q 5");
    const std::string csv_path = scratch_path("run.csv");
    Cmd r = cli("run " + path + " --scheme full --seed 1 --csv " + csv_path);
    REQUIRE(r.code == 0);
    const std::string csv = slurp(csv_path);
    CHECK(csv.rfind("edge,slot,symbol\ns->v1#0,0,", 0) == 0);
    std::size_t lines = 0;
    for (char c : csv)
      if (c == '\n') ++lines;
    CHECK(lines == 13);  // header + one slot on each of the 12 edges
  }

  TEST_CASE("audit certifies the baseline construction") {
    const std::string path = gen_file("fig2_d2_q3.kc", "--kind fig2 --d 2 --q 3");
    Cmd a = cli("audit " + path + " --scheme full");
    CHECK(a.code == 0);
    CHECK(has(a.out, "tset 0 beta {}: states 27, MI 0\n"));
    CHECK(has(a.out, "tset 0 beta {v1}: states 27, MI 0\n"));
    CHECK(has(a.out, "all 3 eavesdropper sets: MI = 0 (exact)\n"));
  }

  TEST_CASE("audit CSV is frozen byte-for-byte") {
    const std::string path = gen_file("fig2_d2_q3.kc", "--kind fig2 --d 2 --q 3");
    const std::string csv_path = scratch_path("audit.csv");
    Cmd a = cli("audit " + path + " --scheme full --csv " + csv_path);
    REQUIRE(a.code == 0);
    CHECK(slurp(csv_path) ==
          "scheme,terminal_set,beta,states,is_zero,mi_bits\n"
          "full,0,{},27,1,0.000000\n"
          "full,0,{v1},27,1,0.000000\n"
          "full,0,{v2},27,1,0.000000\n");
  }

  TEST_CASE("audit flags a leaking scheme with exit 1") {
    const std::string path = gen_file("fig1_q3.kc", "--kind fig1 --q 3");
    Cmd a = cli("audit " + path + " --scheme fig1_multicast");
    CHECK(a.code == 1);
    CHECK(has(a.out, " LEAK"));
    CHECK(has(a.out, "LEAK: 2 of 5 eavesdropper sets show MI > 0\n"));
    // whereas the split construction on the same network is certified clean
    Cmd b = cli("audit " + path + " --scheme fig1");
    CHECK(b.code == 0);
    CHECK(has(b.out, "all 5 eavesdropper sets: MI = 0 (exact)\n"));
  }

  TEST_CASE("sampled audits estimate but never judge") {
    const std::string path = gen_file("fig1_q3.kc", "--kind fig1 --q 3");
    const std::string csv_path = scratch_path("sampled.csv");
    Cmd a = cli("audit " + path +
                " --scheme fig1_multicast --samples 64 --sample-seed 3 --csv " + csv_path);
    CHECK(a.code == 0);  // no verdict, so no failure exit even on a leaky scheme
    CHECK(has(a.out, "MI estimate"));
    CHECK(has(a.out, "bits (advisory)"));
    CHECK(has(a.out, "advisory sampled audit over 5 eavesdropper sets: no verdict\n"));
    CHECK(has(slurp(csv_path), ",64,,"));  // the verdict column stays empty
  }

  TEST_CASE("dimension requests beyond the terminals are refused") {
    const std::string path = gen_file("fig2_d2_q3.kc", "--kind fig2 --d 2 --q 3");
    Cmd r = cli("run " + path + " --d 5");
    CHECK(r.code == 2);
    CHECK(has(r.err, "exceeds the minimum terminal connectivity"));
  }

  TEST_CASE("unknown scheme name exits 2") {
    const std::string path = gen_file("fig2_d2_q3.kc", "--kind fig2 --d 2 --q 3");
    Cmd r = cli("run " + path + " --scheme bogus");
    CHECK(r.code == 2);
  }

  TEST_CASE("an infeasible field size exits 3") {
    const std::string path = gen_file("tbc_q2.kc", "--kind type_b_chain --q 2 --d 3 --len 3");
    Cmd r = cli("run " + path + " --scheme partial");
    CHECK(r.code == 3);
    CHECK(has(r.err, "partial schemes reuse"));
  }

  TEST_CASE("audit budget: environment default, flag override") {
    const std::string path = gen_file("fig2_d3_q3.kc", "--kind fig2 --d 3 --q 3");
    // 4 eavesdropper sets x 3^6 states = 2916 > 1000
    Cmd tight = cli("audit " + path, "KEYCAST_BUDGET=1000");
    CHECK(tight.code == 3);
    Cmd loose = cli("audit " + path, "KEYCAST_BUDGET=100000");
    CHECK(loose.code == 0);
    Cmd flag = cli("audit " + path + " --budget 100000", "KEYCAST_BUDGET=1000");
    CHECK(flag.code == 0);
  }

  TEST_CASE("analyze prints the connectivity profile") {
    const std::string tbc = gen_file("tbc_q5.kc", "--kind type_b_chain --q 5 --d 3 --len 3");
    Cmd a = cli("analyze " + tbc);
    REQUIRE(a.code == 0);
    CHECK(has(a.out, "analyze " + tbc + ": q=5 ell=1 x=0\n"));
    CHECK(has(a.out, "d = 3, dhat = 1, z_obs = 1, z = 1\n"));
    CHECK(has(a.out, "node a1: fully conn=3"));
    CHECK(has(a.out, "node a2: typeB conn=1"));
    CHECK(has(a.out, "J = {}, p = {}\n"));

    const std::string pm = gen_file("pm34.kc", "--kind partial_mix --d 3 --extra 4 --q 11");
    Cmd b = cli("analyze " + pm);
    REQUIRE(b.code == 0);
    CHECK(has(b.out, "z_obs = 5, z = 2\n"));
    CHECK(has(b.out, "node j: fully conn=7 partial_in=5"));
    CHECK(has(b.out, "J = {j}, p = {3}\n"));
  }

  TEST_CASE("bench emits the frozen rate grid") {
    Cmd b = cli("bench --family fig2 --d-range 2..3 --ell-range 1..2 --q 13");
    CHECK(b.code == 0);
    CHECK(b.out ==
          "family,d,ell,q,achieved,formula,decimal\n"
          "fig2,2,1,13,1/1,1/1,1.0000\n"
          "fig2,3,1,13,2/1,2/1,2.0000\n"
          "fig2,3,2,13,1/1,1/1,1.0000\n");
  }

  TEST_CASE("--help exits 0 and a missing subcommand exits 2") {
    Cmd h = cli("--help");
    CHECK(h.code == 0);
    CHECK(!h.out.empty());
    Cmd none = cli("");
    CHECK(none.code == 2);
  }
}
