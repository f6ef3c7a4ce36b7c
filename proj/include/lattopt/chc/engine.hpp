#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lattopt/chc/ast.hpp"

namespace lattopt::chc {

using Tuple = std::vector<Value>;
// Relation interpretation; ordered containers keep rendering deterministic.
using Model = std::map<std::string, std::set<Tuple>>;

// One derivation step: `clause` fired under `assignment`, with one premise
// per body atom, deriving `fact` (nullopt at a False root).
struct Derivation {
  Clause clause;
  Env assignment;
  std::optional<std::pair<std::string, Tuple>> fact;
  std::vector<Derivation> premises;

  std::size_t depth() const;
};

enum class VerdictKind { Sat, Unsat, Unknown };

// Sat carries the least model restricted to in-domain facts; Unsat carries a
// minimal-depth derivation of False; Unknown means some derived fact left
// its sort's domain, so saturation is not exhaustive. Unsat is sound
// unconditionally; Sat is exact precisely because no overflow occurred.
struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<Model> model;
  std::optional<Derivation> counterexample;
  bool overflow = false;
};

struct SolveLimits {
  std::uint64_t max_facts = 1u << 20;
};

// Bounded least-fixpoint engine: saturates ground facts round by round over
// the declared finite domains. Requires a ground clause set. Throws
// BudgetError when the fact budget is exhausted.
Verdict solve(const ClauseSet& ground, const SolveLimits& limits = {});

// Replays a derivation against a clause set: every step's clause must exist
// in the set (structurally), its guard must hold under the step's
// assignment, the assignment must stay within the declared domains, and the
// evaluated body/head atoms must match the premises/derived fact. Malformed
// trees yield false.
bool check_counterexample(const Derivation& cex, const ClauseSet& ground);

// True iff every clause is satisfied by the model over the full domain:
// whenever guard and body hold, the head fact is present (and False heads
// never fire).
bool check_model(const Model& model, const ClauseSet& ground);

}  // namespace lattopt::chc
