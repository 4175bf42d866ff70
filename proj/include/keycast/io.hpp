// Reader/writer for the `keycast v1` instance text format:
//
//   keycast v1
//   field 5
//   node s source
//   node v1
//   node t terminal 1
//   edge s v1 x3        # multiplicity suffix expands to parallel edges
//   edge v1 t
//   adversary ell=1 sources=0
//   eaves {v1}          # optional explicit eavesdropper sets
//
// '#' starts a comment; blank lines are ignored.  parse_instance reports the
// offending line number on malformed input.  emit_instance is the exact
// inverse on valid instances (adjacent equal edges collapse back to xK).
#pragma once

#include <string>

#include "keycast/instance.hpp"

namespace keycast {

NetworkInstance parse_instance(const std::string& text, const std::string& name = "instance");
NetworkInstance load_instance(const std::string& path);
std::string emit_instance(const NetworkInstance& inst);

}  // namespace keycast
