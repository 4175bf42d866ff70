#include "keycast/io.hpp"

#include <fstream>
#include <sstream>

#include "keycast/errors.hpp"

namespace keycast {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line;
  auto hash = body.find('#');
  if (hash != std::string::npos) body.resize(hash);
  std::istringstream is(body);
  std::vector<std::string> toks;
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

[[noreturn]] void fail(int line, const std::string& msg) { throw ParseError(line, msg); }

long parse_int(const std::string& s, int line, const char* what) {
  try {
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) fail(line, std::string("malformed ") + what + " '" + s + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (...) {
    fail(line, std::string("malformed ") + what + " '" + s + "'");
  }
}

// Parses `key=value` returning value, enforcing the key.
long parse_kv(const std::string& tok, const char* key, int line) {
  auto eq = tok.find('=');
  if (eq == std::string::npos || tok.substr(0, eq) != key)
    fail(line, std::string("expected ") + key + "=<int>, got '" + tok + "'");
  return parse_int(tok.substr(eq + 1), line, key);
}

}  // namespace

NetworkInstance parse_instance(const std::string& text, const std::string& name) {
  NetworkInstance inst;
  inst.name = name;
  bool saw_header = false, saw_field = false, saw_adversary = false;

  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;

    if (!saw_header) {
      if (toks.size() == 2 && toks[0] == "keycast" && toks[1] == "v1") {
        saw_header = true;
        continue;
      }
      fail(lineno, "expected header 'keycast v1'");
    }

    const std::string& kw = toks[0];
    if (kw == "field") {
      if (saw_field) fail(lineno, "duplicate field directive");
      if (toks.size() != 2) fail(lineno, "expected: field <modulus>");
      long q = parse_int(toks[1], lineno, "field modulus");
      if (q < 2) fail(lineno, "field modulus must be at least 2");
      inst.q = static_cast<std::uint32_t>(q);
      saw_field = true;
    } else if (kw == "node") {
      if (toks.size() < 2) fail(lineno, "expected: node <name> [source] [terminal <set>]");
      const std::string& nm = toks[1];
      if (inst.find_node(nm) >= 0) fail(lineno, "duplicate node name '" + nm + "'");
      bool src = false;
      int tset = -1;
      for (size_t i = 2; i < toks.size(); ++i) {
        if (toks[i] == "source") {
          src = true;
        } else if (toks[i] == "terminal") {
          if (i + 1 >= toks.size()) fail(lineno, "terminal clause needs a set index");
          long idx = parse_int(toks[++i], lineno, "terminal set index");
          if (idx < 1) fail(lineno, "terminal set index must be >= 1");
          tset = static_cast<int>(idx) - 1;
        } else {
          fail(lineno, "unknown node attribute '" + toks[i] + "'");
        }
      }
      inst.node_names.push_back(nm);
      inst.source.push_back(src);
      if (tset >= 0) {
        if (static_cast<int>(inst.tsets.size()) <= tset) inst.tsets.resize(tset + 1);
        inst.tsets[tset].push_back(inst.size() - 1);
      }
    } else if (kw == "edge") {
      if (toks.size() != 3 && toks.size() != 4) fail(lineno, "expected: edge <tail> <head> [xK]");
      int tail = inst.find_node(toks[1]);
      int head = inst.find_node(toks[2]);
      if (tail < 0) fail(lineno, "unknown node '" + toks[1] + "'");
      if (head < 0) fail(lineno, "unknown node '" + toks[2] + "'");
      long mult = 1;
      if (toks.size() == 4) {
        if (toks[3].empty() || toks[3][0] != 'x')
          fail(lineno, "multiplicity must look like x3, got '" + toks[3] + "'");
        mult = parse_int(toks[3].substr(1), lineno, "edge multiplicity");
        if (mult < 1) fail(lineno, "edge multiplicity must be >= 1");
      }
      for (long k = 0; k < mult; ++k) inst.edges.push_back({tail, head});
    } else if (kw == "adversary") {
      if (saw_adversary) fail(lineno, "duplicate adversary directive");
      if (toks.size() != 3) fail(lineno, "expected: adversary ell=<int> sources=<int>");
      inst.ell = static_cast<int>(parse_kv(toks[1], "ell", lineno));
      inst.x = static_cast<int>(parse_kv(toks[2], "sources", lineno));
      if (inst.ell < 0 || inst.x < 0) fail(lineno, "adversary bounds must be non-negative");
      saw_adversary = true;
    } else if (kw == "eaves") {
      // Re-join remaining tokens so `{a, b}` and `{a,b}` both work.
      std::string rest;
      for (size_t i = 1; i < toks.size(); ++i) rest += toks[i];
      if (rest.size() < 2 || rest.front() != '{' || rest.back() != '}')
        fail(lineno, "expected: eaves {a,b,...}");
      std::vector<int> set;
      std::string inner = rest.substr(1, rest.size() - 2);
      std::istringstream items(inner);
      std::string item;
      while (std::getline(items, item, ',')) {
        if (item.empty()) fail(lineno, "empty node name in eaves set");
        int v = inst.find_node(item);
        if (v < 0) fail(lineno, "unknown node '" + item + "'");
        set.push_back(v);
      }
      inst.eaves.push_back(std::move(set));
    } else {
      fail(lineno, "unknown directive '" + kw + "'");
    }
  }

  if (!saw_header) fail(1, "empty input: expected header 'keycast v1'");
  if (!saw_field) fail(1, "missing 'field' directive");
  if (!saw_adversary) fail(1, "missing 'adversary' directive");
  return inst;
}

NetworkInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_error(ErrorKind::Parse, "ParseError", "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), path);
}

std::string emit_instance(const NetworkInstance& inst) {
  std::ostringstream os;
  os << "keycast v1\n";
  os << "field " << inst.q << "\n";
  for (int v = 0; v < inst.size(); ++v) {
    os << "node " << inst.node_names[v];
    if (inst.source[v]) os << " source";
    int t = inst.terminal_of(v);
    if (t >= 0) os << " terminal " << (t + 1);
    os << "\n";
  }
  for (size_t e = 0; e < inst.edges.size();) {
    size_t run = e + 1;
    while (run < inst.edges.size() && inst.edges[run].tail == inst.edges[e].tail &&
           inst.edges[run].head == inst.edges[e].head)
      ++run;
    os << "edge " << inst.node_names[inst.edges[e].tail] << ' '
       << inst.node_names[inst.edges[e].head];
    if (run - e > 1) os << " x" << (run - e);
    os << "\n";
    e = run;
  }
  os << "adversary ell=" << inst.ell << " sources=" << inst.x << "\n";
  for (const auto& set : inst.eaves) {
    os << "eaves {";
    for (size_t i = 0; i < set.size(); ++i) {
      if (i) os << ',';
      os << inst.node_names[set[i]];
    }
    os << "}\n";
  }
  return os.str();
}

}  // namespace keycast
