#pragma once

#include <string>

#include "lattopt/chc/engine.hpp"

namespace lattopt::chc {

// Renders a ground clause set as SMT-LIB 2 Horn text: relation declarations,
// one universally quantified implication per clause (with the bounded sort
// domains as explicit range conjuncts), and a final (check-sat). The exact
// format is documented in docs/horn-format.md and golden-tested byte for
// byte. ConstructionError when parameters remain.
std::string emit_smtlib_horn(const ClauseSet& ground);

struct ExternalSolver {
  // Command template; "{file}" is replaced by the problem path.
  std::string command;
  double timeout_seconds = 10.0;
};

// Writes the emitted text to a temporary file and runs the configured
// command. The first non-comment output line must be "sat", "unsat" or
// "unknown". No certificates are parsed from external solvers. Throws
// SolverError on launch failure, unparseable output or timeout.
VerdictKind external_solve(const ClauseSet& ground, const ExternalSolver& solver);

}  // namespace lattopt::chc
