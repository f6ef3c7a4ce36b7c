#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include "lattopt/lattice.hpp"

namespace lattopt {

// Concurrent feasibility memo with counters. Concurrent queries on the same
// node may race to compute; the oracle must be deterministic, so every
// winner stores the same value.
class FeasibilityCache {
 public:
  bool lookup(const NodeRef& n, bool& out) const;
  void store(const NodeRef& n, bool value);

  std::uint64_t queries() const { return queries_.load(); }
  std::uint64_t hits() const { return hits_.load(); }
  std::uint64_t oracle_calls() const { return oracle_calls_.load(); }

  void count_query() { queries_.fetch_add(1); }
  void count_oracle_call() { oracle_calls_.fetch_add(1); }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<NodeRef, bool, NodeRefHash> memo_;
  mutable std::atomic<std::uint64_t> queries_{0};
  mutable std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> oracle_calls_{0};
};

// Optimization lattice: a carrier lattice plus label, score and feasibility
// maps. Values are immutable; combinators return new views sharing the
// carrier. The score map must be monotone and the feasibility predicate
// downward-closed; both are caller obligations checked by the audit
// functions below.
class OptLattice {
 public:
  // Empty handle; assign a real lattice before use.
  OptLattice() = default;

  // Family default labels and scores; everything feasible.
  static OptLattice over(std::shared_ptr<const Lattice> carrier);

  const Lattice& carrier() const { return *carrier_; }
  const std::shared_ptr<const Lattice>& carrier_ptr() const { return carrier_; }

  NodeRef bottom() const { return carrier_->bottom(); }
  NodeRef top() const { return carrier_->top(); }

  Label label(const NodeRef& n) const { return label_(n); }
  Score score(const NodeRef& n) const { return score_(n); }
  bool feasible(const NodeRef& n) const { return feasible_(n); }

  // Score recomputed from the current label.
  OptLattice with_score(std::function<Score(const Label&)> f) const;
  // Relabeling; order, score and feasibility unchanged.
  OptLattice map(std::function<Label(const Label&)> g) const;
  // Conjoins a constraint onto the feasibility predicate. The predicate must
  // be downward-closed through the label map for search to stay exact.
  OptLattice filter(std::function<bool(const Label&)> pred) const;
  // Post-composition on scores; f must be monotone.
  OptLattice map_score(std::function<Score(const Score&)> f) const;
  // Memoizes feasibility in `cache`, which exposes query/hit counters.
  OptLattice cached(std::shared_ptr<FeasibilityCache> cache) const;

  // Node-level replacements; used by adapters and test harnesses that work
  // below the label layer.
  OptLattice with_node_feasibility(std::function<bool(const NodeRef&)> f) const;
  OptLattice with_node_score(std::function<Score(const NodeRef&)> f) const;

 private:
  OptLattice(std::shared_ptr<const Lattice> carrier,
             std::function<Label(const NodeRef&)> label,
             std::function<Score(const NodeRef&)> score,
             std::function<bool(const NodeRef&)> feasible);

  std::shared_ptr<const Lattice> carrier_;
  std::function<Label(const NodeRef&)> label_;
  std::function<Score(const NodeRef&)> score_;
  std::function<bool(const NodeRef&)> feasible_;

  friend OptLattice flat_map(const OptLattice& outer,
                             const std::function<OptLattice(const Label&)>& h);
  friend OptLattice product(const OptLattice& left, const OptLattice& right);
};

// Dependent product over a constant inner carrier: the inner lattice's
// labels, score and feasibility may depend on the outer label, but every
// h(label) must share one carrier (checked at construction on the bottom and
// top labels, and lazily on every evaluated node). Nodes are pairs, order is
// componentwise, the label is the inner label, the score is the
// lexicographic (outer, inner) pair and feasibility is the conjunction.
OptLattice flat_map(const OptLattice& outer,
                    const std::function<OptLattice(const Label&)>& h);

// Plain product: flat_map with pair labels.
OptLattice product(const OptLattice& left, const OptLattice& right);

struct AuditViolation {
  NodeRef lower;
  NodeRef upper;
};

// Checks feasible(upper) ⇒ feasible(lower) over every Hasse edge when the
// lattice has at most `exhaustive_limit` nodes, otherwise over `samples`
// random comparable pairs drawn from `seed`.
std::optional<AuditViolation> audit_downward_closure(const OptLattice& l,
                                                     std::uint64_t seed,
                                                     std::size_t samples = 10000,
                                                     std::size_t exhaustive_limit = 4096);

// Same scheme for score(lower) ≤ score(upper).
std::optional<AuditViolation> audit_score_monotonicity(const OptLattice& l,
                                                       std::uint64_t seed,
                                                       std::size_t samples = 10000,
                                                       std::size_t exhaustive_limit = 4096);

}  // namespace lattopt
