// The keycast v1 text format: parse/emit round trips, line-exact error
// reporting, and the structural guarantees of the built-in generators.
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "keycast/connectivity.hpp"
#include "keycast/errors.hpp"
#include "keycast/generate.hpp"
#include "keycast/io.hpp"

using namespace keycast;

namespace {

int parse_error_line(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

bool same_structure(const NetworkInstance& a, const NetworkInstance& b) {
  if (a.q != b.q || a.node_names != b.node_names || a.ell != b.ell || a.x != b.x)
    return false;
  if (a.source != b.source || a.tsets != b.tsets || a.eaves != b.eaves) return false;
  if (a.edges.size() != b.edges.size()) return false;
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    if (a.edges[i].tail != b.edges[i].tail || a.edges[i].head != b.edges[i].head)
      return false;
  return true;
}

}  // namespace

TEST_SUITE("instance_io") {
  TEST_CASE("parse accepts comments, blank lines, and flexible eaves spacing") {
    NetworkInstance inst = parse_instance(
        "keycast v1\n"
        "# demonstration network\n"
        "field 5\n"
        "\n"
        "node s source\n"
        "node a\n"
        "node t terminal 1   # the only terminal\n"
        "edge s a x2\n"
        "edge a t\n"
        "edge s t\n"
        "adversary ell=1 sources=0\n"
        "eaves {a, s}\n");
    CHECK(inst.q == 5);
    CHECK(inst.size() == 3);
    CHECK(inst.edges.size() == 4);  // x2 expands
    CHECK(inst.tsets == std::vector<std::vector<int>>{{2}});
    CHECK(inst.ell == 1);
    CHECK(inst.eaves == std::vector<std::vector<int>>{{1, 0}});
  }

  TEST_CASE("emit is the exact inverse of parse on every generator family") {
    std::vector<NetworkInstance> fixtures;
    GenParams p;
    p.q = 5;
    p.d = 3;
    fixtures.push_back(generate_canonical("fig2", p));
    fixtures.push_back(generate_canonical("fig1", p));
    fixtures.push_back(generate_canonical("type_b_chain", p));
    fixtures.push_back(generate_canonical("partial_mix", p));
    p.sources = 2;
    p.x = 1;
    fixtures.push_back(generate_canonical("fig2_multi", p));
    fixtures.push_back(generate_random(7, 8, 2, 0.3, 5, 1));
    for (const auto& inst : fixtures) {
      const std::string text = emit_instance(inst);
      NetworkInstance back = parse_instance(text);
      CHECK(same_structure(inst, back));
      CHECK(emit_instance(back) == text);  // emit∘parse is a fixed point
    }
  }

  TEST_CASE("adjacent parallel edges collapse to a multiplicity suffix") {
    GenParams p;
    p.d = 2;
    p.q = 5;
    const std::string text = emit_instance(generate_canonical("fig2", p));
    CHECK(text.find("edge s v1 x2") != std::string::npos);
    CHECK(text.find("edge v1 t\n") != std::string::npos);
  }

  TEST_CASE("parse errors carry the offending line number") {
    // document opening with a declaration instead of the header
    CHECK(parse_error_line("node s source\n") == 1);
    CHECK(parse_error_line("keycast v2\n") == 1);
    CHECK(parse_error_line("") == 1);
    // missing field/adversary directives report at line 1
    CHECK(parse_error_line("keycast v1\nnode s source\nnode t terminal 1\n"
                           "adversary ell=1 sources=0\n") == 1);
    CHECK(parse_error_line("keycast v1\nfield 5\nnode s source\n") == 1);
    // local syntax errors report their own line
    CHECK(parse_error_line("keycast v1\nfield 5\nfield 7\n") == 3);
    CHECK(parse_error_line("keycast v1\nfield 5\nnode s source\nnode s\n") == 4);
    CHECK(parse_error_line("keycast v1\nfield 5\nnode s source\nedge s tt\n") == 4);
    CHECK(parse_error_line("keycast v1\nfield 5\nnode s source\nnode t terminal 1\n"
                           "edge s t x0\n") == 5);
    CHECK(parse_error_line("keycast v1\nfield 5\nnode s source\nnode t terminal 0\n") == 4);
    CHECK(parse_error_line("keycast v1\nfield 5\nwibble\n") == 3);
    CHECK(parse_error_line("keycast v1\nfield 5\nnode s source\n"
                           "adversary ell=1 bananas=0\n") == 4);
    CHECK(parse_error_line("keycast v1\nfield 5\nnode s source\neaves {zz}\n") == 4);
    CHECK(parse_error_line("keycast v1\nfield x\n") == 2);
  }

  TEST_CASE("parse error messages state what was expected") {
    try {
      parse_instance("node s source\n");
      FAIL("must throw");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 1") != std::string::npos);
      CHECK(std::string(e.what()).find("keycast v1") != std::string::npos);
    }
  }

  TEST_CASE("load_instance reports unreadable paths and reads real files") {
    CHECK_THROWS_AS(load_instance("/nonexistent/nowhere.kc"), Error);
    const std::string path = "/tmp/keycast_io_test.kc";
    GenParams p;
    p.d = 2;
    p.q = 3;
    const std::string text = emit_instance(generate_canonical("fig2", p));
    {
      std::ofstream f(path, std::ios::binary);
      f << text;
    }
    NetworkInstance inst = load_instance(path);
    CHECK(inst.name == path);
    CHECK(emit_instance(inst) == text);
    std::remove(path.c_str());
  }

  TEST_CASE("fig2 generator: d intermediates, d-fold source fan, no shortcut edge") {
    for (int d : {2, 3, 4}) {
      GenParams p;
      p.d = d;
      p.q = 13;
      NetworkInstance inst = generate_canonical("fig2", p);
      CHECK(inst.size() == d + 2);
      CHECK(static_cast<int>(inst.edges.size()) == d * d + d);
      int s = inst.find_node("s"), t = inst.find_node("t");
      for (const auto& e : inst.edges) CHECK(!(e.tail == s && e.head == t));
      for (int i = 1; i <= d; ++i) {
        int v = inst.find_node("v" + std::to_string(i));
        REQUIRE(v >= 0);
        int fan = 0;
        for (const auto& e : inst.edges) fan += (e.tail == s && e.head == v);
        CHECK(fan == d);
        CHECK(vertex_connectivity(inst, s, v) == d);
      }
      CHECK(vertex_connectivity(inst, s, t) == d);
      CHECK(validate_instance(inst).empty());
    }
  }

  TEST_CASE("fig2_multi generator: terminal is fed only by the intermediates") {
    GenParams p;
    p.d = 2;
    p.sources = 2;
    p.x = 1;
    p.q = 2;
    NetworkInstance inst = generate_canonical("fig2_multi", p);
    CHECK(inst.sources().size() == 2);
    int t = inst.find_node("t");
    for (const auto& e : inst.edges)
      if (e.head == t) CHECK(!inst.source[e.tail]);
    for (int s : inst.sources())
      for (int i = 1; i <= p.d; ++i) {
        int v = inst.find_node("v" + std::to_string(i));
        int fan = 0;
        for (const auto& e : inst.edges) fan += (e.tail == s && e.head == v);
        CHECK(fan == p.d);
      }
    CHECK(validate_instance(inst).empty());
  }

  TEST_CASE("type_b_chain generator shape") {
    GenParams p;
    p.d = 3;
    p.len = 3;
    p.q = 5;
    NetworkInstance inst = generate_canonical("type_b_chain", p);
    int s = inst.find_node("s"), t = inst.find_node("t");
    int to_a1 = 0, direct = 0;
    for (const auto& e : inst.edges) {
      to_a1 += (e.tail == s && e.head == inst.find_node("a1"));
      direct += (e.tail == s && e.head == t);
    }
    CHECK(to_a1 == 3);
    CHECK(direct == 2);  // d - 1 direct edges keep t fully connected
    CHECK(validate_instance(inst).empty());
  }

  TEST_CASE("partial_mix generator: the extra knob adds masked parents of j") {
    GenParams base, more;
    base.d = more.d = 3;
    base.q = more.q = 11;
    more.extra = 4;
    NetworkInstance a = generate_canonical("partial_mix", base);
    NetworkInstance b = generate_canonical("partial_mix", more);
    CHECK(b.size() == a.size() + 4);
    int j = b.find_node("j");
    int jin = 0;
    for (const auto& e : b.edges) jin += (e.head == j);
    int jin_a = 0;
    for (const auto& e : a.edges) jin_a += (e.head == a.find_node("j"));
    CHECK(jin == jin_a + 4);
    CHECK(validate_instance(b).empty());
  }

  TEST_CASE("unknown generator kinds are rejected") {
    CHECK_THROWS_AS(generate_canonical("fig3", {}), Error);
  }

  TEST_CASE("random generator: valid, seed-deterministic, seed-sensitive") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      NetworkInstance inst = generate_random(seed, 8, 2, 0.3, 5, 1);
      CHECK(inst.size() == 8);
      CHECK(validate_instance(inst).empty());
    }
    CHECK(emit_instance(generate_random(5, 8, 2, 0.3, 5, 1)) ==
          emit_instance(generate_random(5, 8, 2, 0.3, 5, 1)));
    CHECK(emit_instance(generate_random(5, 8, 2, 0.3, 5, 1)) !=
          emit_instance(generate_random(6, 8, 2, 0.3, 5, 1)));
  }
}
