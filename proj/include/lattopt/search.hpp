#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "lattopt/errors.hpp"
#include "lattopt/opt_lattice.hpp"

namespace lattopt {

struct SearchConfig {
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> max_oracle_calls;
  bool objective_pruning = true;
  // 1 = serial and deterministic (the reference mode). Values > 1 enable the
  // OpenMP candidate-batch mode, which returns the same solution set but is
  // excluded from the determinism guarantees for traces and stats.
  int threads = 1;
};

struct SearchStats {
  std::uint64_t oracle_calls = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t ascent_steps = 0;
  std::uint64_t bound_prunes = 0;
  std::uint64_t score_prunes = 0;
};

// Antichain of known-infeasible nodes; everything above a member is
// infeasible. Thread-safe.
class BoundStore {
 public:
  explicit BoundStore(const Lattice& l) : lattice_(&l) {}

  // True iff some recorded bound lies at or below n.
  bool is_pruned(const NodeRef& n) const;
  // Records an infeasible node, discarding entries it dominates.
  void record(const NodeRef& n);

  std::size_t size() const;
  std::vector<NodeRef> snapshot() const;

 private:
  const Lattice* lattice_;
  mutable std::shared_mutex mutex_;
  std::vector<NodeRef> bounds_;
};

struct SearchOutcome {
  std::vector<NodeRef> nodes;  // canonical order
  bool complete = true;
  SearchStats stats;
};

class BudgetExhausted : public BudgetError {
 public:
  BudgetExhausted(const std::string& what, SearchOutcome partial)
      : BudgetError(what), partial_(std::move(partial)) {}
  // Results found before the budget ran out, flagged incomplete.
  const SearchOutcome& partial() const { return partial_; }

 private:
  SearchOutcome partial_;
};

// State shared across one enumeration run: found maximals, the infeasibility
// bound store, the feasibility memo and the stat counters. Also usable on its
// own with greedy_ascend.
class SearchState {
 public:
  SearchState(const OptLattice& l, const SearchConfig& cfg);

  // Memoized feasibility probe; counts oracle calls and enforces the budget
  // by throwing BudgetExhausted (carrying the maximals found so far).
  bool probe(const NodeRef& n);

  void record_infeasible(const NodeRef& n) { bounds_.record(n); }
  bool is_pruned(const NodeRef& n) const { return bounds_.is_pruned(n); }

  void add_maximal(const NodeRef& m);
  std::vector<NodeRef> maximals() const;

  BoundStore& bounds() { return bounds_; }
  SeededRng& rng() { return rng_; }
  const OptLattice& lattice() const { return *lattice_; }

  SearchStats stats() const;
  void count_ascent_step() { ascent_steps_.fetch_add(1); }
  void count_bound_prune() { bound_prunes_.fetch_add(1); }
  void count_score_prune() { score_prunes_.fetch_add(1); }

  SearchOutcome outcome(bool complete) const;

 private:
  const OptLattice* lattice_;
  SearchConfig cfg_;
  BoundStore bounds_;
  SeededRng rng_;

  mutable std::shared_mutex memo_mutex_;
  std::unordered_map<NodeRef, bool, NodeRefHash> memo_;

  mutable std::mutex maximals_mutex_;
  std::vector<NodeRef> maximals_;

  std::atomic<std::uint64_t> oracle_calls_{0};
  std::atomic<std::uint64_t> cache_hits_{0};
  std::atomic<std::uint64_t> ascent_steps_{0};
  std::atomic<std::uint64_t> bound_prunes_{0};
  std::atomic<std::uint64_t> score_prunes_{0};
};

// Walks upward from a feasible node until every successor is infeasible.
// Successors are probed in an order shuffled by the seeded source; infeasible
// successors are recorded as bounds, and bound-dominated ones are skipped
// without an oracle call. Throws ContractViolation on an infeasible start.
NodeRef greedy_ascend(const OptLattice& l, const NodeRef& start, SearchState& state,
                      const SearchConfig& cfg);

// All maximal feasible nodes above lower_bound; empty when lower_bound is
// infeasible. Throws BudgetExhausted (with partial results) when the
// oracle-call budget runs out.
SearchOutcome maximal_feasible_objects(const OptLattice& l, const NodeRef& lower_bound,
                                       const SearchConfig& cfg = {});

// The subset of maximal_feasible_objects attaining the maximum score. With
// objective_pruning on, candidate regions whose attainable-score bound falls
// strictly below the best score found are skipped.
SearchOutcome optimal_feasible_objects(const OptLattice& l, const NodeRef& lower_bound,
                                       const SearchConfig& cfg = {});

}  // namespace lattopt
