// Deterministic text and CSV rendering for the CLI.  All output here is
// byte-stable for fixed inputs: node order follows declarations, beta sets
// are sorted, and rationals print exactly.
#pragma once

#include <string>

#include "keycast/audit.hpp"
#include "keycast/classify.hpp"
#include "keycast/engine.hpp"

namespace keycast {

std::string format_beta(const NetworkInstance& inst, const std::vector<int>& beta);

std::string render_validate(const NetworkInstance& inst,
                            const std::vector<std::string>& violations);
std::string render_analyze(const NetworkInstance& inst, const ConnectivityProfile& profile);
std::string render_run(const SchemeResult& res);
std::string render_audit(const Plan& plan, const AuditReport& report);

// Header: scheme,terminal_set,beta,states,is_zero,mi_bits
std::string audit_csv(const Plan& plan, const AuditReport& report);
// Header: edge,slot,symbol
std::string run_csv(const SchemeResult& res);

}  // namespace keycast
