#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "lattopt/chc/engine.hpp"
#include "lattopt/chc/smtlib.hpp"
#include "lattopt/inverted.hpp"
#include "lattopt/opt_lattice.hpp"
#include "lattopt/powerset.hpp"
#include "lattopt/search.hpp"

namespace lattopt::chc {

// What to do when the bounded engine answers Unknown. TreatInfeasible keeps
// feasibility downward-closed (Unknown only removes nodes) and flags the run
// as bound-limited; Error aborts instead.
enum class UnknownPolicy { TreatInfeasible, Error };

struct OracleStats {
  std::uint64_t queries = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t solver_calls = 0;
  std::uint64_t model_reuses = 0;
  std::uint64_t cex_reuses = 0;
  std::uint64_t unknowns = 0;
};

struct OracleConfig {
  UnknownPolicy unknown_policy = UnknownPolicy::TreatInfeasible;
  SolveLimits limits;
  std::size_t max_certificates = 64;
  // When set, instances are solved by the external command instead of the
  // internal engine; no certificates are stored or reused in that mode.
  std::optional<ExternalSolver> external;
};

// Incremental feasibility oracle over the instances of one parameterized
// clause set: results are memoized per substitution, and stored models /
// counterexamples are replayed (newest first) before solving afresh.
// Thread-safe; races recompute but store identical values.
class ClauseOracle {
 public:
  // ConstructionError when the set is invalid or a parameter occurs in a
  // clause head (which would break the monotonicity recipe).
  explicit ClauseOracle(ClauseSet hc, OracleConfig config = {});

  VerdictKind query(const Substitution& m);
  // Bypasses memo and certificate store; differential-testing hook.
  Verdict solve_fresh(const Substitution& m) const;

  const ClauseSet& clause_set() const { return hc_; }
  OracleStats stats() const;
  bool bound_limited() const { return bound_limited_.load(); }

 private:
  using Certificate = std::variant<Model, Derivation>;

  ClauseSet hc_;
  OracleConfig config_;

  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, VerdictKind> memo_;
  std::deque<std::shared_ptr<const Certificate>> certificates_;  // newest first

  std::atomic<std::uint64_t> queries_{0};
  std::atomic<std::uint64_t> memo_hits_{0};
  std::atomic<std::uint64_t> solver_calls_{0};
  std::atomic<std::uint64_t> model_reuses_{0};
  std::atomic<std::uint64_t> cex_reuses_{0};
  std::atomic<std::uint64_t> unknowns_{0};
  std::atomic<bool> bound_limited_{false};
};

// Feasible ⇔ the instance under the node's substitution label is
// satisfiable. Unknown verdicts follow the oracle's policy.
OptLattice clause_sat_lattice(const OptLattice& base, std::shared_ptr<ClauseOracle> oracle);
// Dual: feasible ⇔ unsatisfiable.
OptLattice clause_unsat_lattice(const OptLattice& base, std::shared_ptr<ClauseOracle> oracle);

// Convenience constructors mirroring the (lattice, clauses, parameters)
// shape; `params` must list exactly the declared parameters.
OptLattice clause_sat_lattice(const OptLattice& base, const ClauseSet& hc,
                              const std::vector<std::string>& params,
                              OracleConfig config = {});
OptLattice clause_unsat_lattice(const OptLattice& base, const ClauseSet& hc,
                                const std::vector<std::string>& params,
                                OracleConfig config = {});

// Weighted partial MaxCHC: a powerset lattice over the soft-clause flags,
// score the sum of enabled weights, feasibility through clause_sat_lattice.
// Hard clauses carry no flags.
struct MaxChcProblem {
  OptLattice lattice;
  std::shared_ptr<ClauseOracle> oracle;
  std::shared_ptr<const PowersetLattice> flags;
  std::vector<std::size_t> soft;  // clause indices, in flag order

  // Enabled soft-clause indices of a node.
  std::vector<std::size_t> selected(const NodeRef& n) const;
};

// `weight[i]` applies to clause i; entries under `hard` get no flag and are
// always enabled. Weights must be non-negative. All-hard-unsat inputs
// surface as an infeasible bottom (an empty enumeration).
MaxChcProblem maxchc(const ClauseSet& cs, const std::vector<BigInt>& weights,
                     const std::vector<bool>& hard, OracleConfig config = {});

struct MusResult {
  std::vector<std::vector<std::size_t>> muses;  // sorted clause-index sets
  SearchStats stats;
  OracleStats oracle_stats;
  bool complete = true;
  bool bound_limited = false;
};

// All minimal unsatisfiable subsets: maximal feasible nodes of the inverted
// powerset lattice paired with clause_unsat_lattice. Empty when the whole
// set is satisfiable.
MusResult mus(const ClauseSet& cs, const SearchConfig& cfg = {}, OracleConfig config = {});

}  // namespace lattopt::chc
