#pragma once

#include <stdexcept>
#include <string>

namespace lattopt {

// A node was handed to a lattice that did not mint it, an ascent was started
// from an infeasible node, a certificate is malformed, or a score comparison
// mixes incompatible shapes.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// Invalid construction arguments: duplicate powerset elements, empty interval
// point sets, non-constant flat_map families, ill-formed clause sets.
class ConstructionError : public std::invalid_argument {
 public:
  explicit ConstructionError(const std::string& what) : std::invalid_argument(what) {}
};

// An oracle-call or fact budget was exhausted.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// External solver could not be launched, timed out, or produced
// unparseable output.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// A problem file failed schema validation.
class ValidationError : public ConstructionError {
 public:
  explicit ValidationError(const std::string& what) : ConstructionError(what) {}
};

}  // namespace lattopt
