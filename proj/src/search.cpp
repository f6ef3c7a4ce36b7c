#include "lattopt/search.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lattopt {

bool BoundStore::is_pruned(const NodeRef& n) const {
  std::shared_lock lock(mutex_);
  for (const NodeRef& b : bounds_) {
    if (lattice_->order(b, n)) return true;
  }
  return false;
}

void BoundStore::record(const NodeRef& n) {
  std::unique_lock lock(mutex_);
  for (const NodeRef& b : bounds_) {
    if (lattice_->order(b, n)) return;  // already dominated
  }
  std::erase_if(bounds_, [&](const NodeRef& b) { return lattice_->order(n, b); });
  bounds_.push_back(n);
}

std::size_t BoundStore::size() const {
  std::shared_lock lock(mutex_);
  return bounds_.size();
}

std::vector<NodeRef> BoundStore::snapshot() const {
  std::shared_lock lock(mutex_);
  std::vector<NodeRef> out = bounds_;
  std::sort(out.begin(), out.end());
  return out;
}

SearchState::SearchState(const OptLattice& l, const SearchConfig& cfg)
    : lattice_(&l), cfg_(cfg), bounds_(l.carrier()), rng_(cfg.seed) {}

bool SearchState::probe(const NodeRef& n) {
  {
    std::shared_lock lock(memo_mutex_);
    auto it = memo_.find(n);
    if (it != memo_.end()) {
      cache_hits_.fetch_add(1);
      return it->second;
    }
  }
  std::uint64_t calls = oracle_calls_.fetch_add(1) + 1;
  if (cfg_.max_oracle_calls && calls > *cfg_.max_oracle_calls) {
    oracle_calls_.fetch_sub(1);
    throw BudgetExhausted("oracle-call budget exhausted", outcome(false));
  }
  bool value = lattice_->feasible(n);
  std::unique_lock lock(memo_mutex_);
  memo_.emplace(n, value);
  return value;
}

void SearchState::add_maximal(const NodeRef& m) {
  std::scoped_lock lock(maximals_mutex_);
  if (std::find(maximals_.begin(), maximals_.end(), m) == maximals_.end()) {
    maximals_.push_back(m);
  }
}

std::vector<NodeRef> SearchState::maximals() const {
  std::scoped_lock lock(maximals_mutex_);
  std::vector<NodeRef> out = maximals_;
  std::sort(out.begin(), out.end());
  return out;
}

SearchStats SearchState::stats() const {
  SearchStats s;
  s.oracle_calls = oracle_calls_.load();
  s.cache_hits = cache_hits_.load();
  s.ascent_steps = ascent_steps_.load();
  s.bound_prunes = bound_prunes_.load();
  s.score_prunes = score_prunes_.load();
  return s;
}

SearchOutcome SearchState::outcome(bool complete) const {
  SearchOutcome o;
  o.nodes = maximals();
  o.complete = complete;
  o.stats = stats();
  return o;
}

namespace {

NodeRef ascend(const OptLattice& l, const NodeRef& start, SearchState& state,
               SeededRng& rng) {
  NodeRef cur = start;
  for (;;) {
    std::vector<NodeRef> succ = l.carrier().successors(cur);
    rng.shuffle(succ);
    bool advanced = false;
    for (const NodeRef& s : succ) {
      if (state.is_pruned(s)) {
        state.count_bound_prune();
        continue;
      }
      if (state.probe(s)) {
        cur = s;
        state.count_ascent_step();
        advanced = true;
        break;
      }
      state.record_infeasible(s);
    }
    if (!advanced) return cur;
  }
}

// Attainable-score bound for the region above `c`, derived from the
// infeasibility bounds: any feasible x ⊒ c avoids each bound b, so x lies
// below one of the maximal nodes not above b (the co-covering differences of
// (top, b)); the best cap score over b, minimized over bounds, caps the
// region. nullopt means the region cannot contain feasible nodes at all.
class ScoreBounder {
 public:
  explicit ScoreBounder(const OptLattice& l) : lattice_(&l), top_(l.carrier().top()) {}

  std::optional<Score> bound(const NodeRef& c, const std::vector<NodeRef>& bounds) {
    std::optional<Score> best;  // empty until first applicable bound; fall back to top
    for (const NodeRef& b : bounds) {
      const auto& caps = caps_for(b);
      std::optional<Score> via_b;
      for (const auto& [cap, cap_score] : caps) {
        if (!lattice_->carrier().order(c, cap)) continue;
        if (!via_b || *via_b < cap_score) via_b = cap_score;
      }
      if (!via_b) return std::nullopt;  // c is above b; region infeasible
      if (!best || via_b < best) best = via_b;
    }
    if (!best) best = lattice_->score(top_);
    return best;
  }

 private:
  const std::vector<std::pair<NodeRef, Score>>& caps_for(const NodeRef& b) {
    auto it = cache_.find(b);
    if (it != cache_.end()) return it->second;
    std::vector<std::pair<NodeRef, Score>> scored;
    for (const NodeRef& cap : lattice_->carrier().co_covering_differences(top_, b)) {
      scored.emplace_back(cap, lattice_->score(cap));
    }
    return cache_.emplace(b, std::move(scored)).first->second;
  }

  const OptLattice* lattice_;
  NodeRef top_;
  std::map<NodeRef, std::vector<std::pair<NodeRef, Score>>> cache_;
};

struct EnumerationResult {
  std::vector<NodeRef> maximals;
  std::optional<Score> best;
};

void expand_candidates(const Lattice& carrier, std::set<NodeRef>& candidates,
                       const std::vector<NodeRef>& new_maximals) {
  for (const NodeRef& m : new_maximals) {
    std::set<NodeRef> next;
    for (const NodeRef& c : candidates) {
      for (NodeRef& d : carrier.covering_differences(c, m)) {
        next.insert(std::move(d));
      }
    }
    candidates = std::move(next);
  }
}

void enumerate_serial(const OptLattice& l, const NodeRef& lower_bound,
                      const SearchConfig& cfg, SearchState& state, bool optimal) {
  if (!state.probe(lower_bound)) return;
  ScoreBounder bounder(l);
  std::optional<Score> best;
  std::set<NodeRef> candidates{lower_bound};
  while (!candidates.empty()) {
    NodeRef c = *candidates.begin();
    candidates.erase(candidates.begin());
    if (state.is_pruned(c)) {
      state.count_bound_prune();
      continue;
    }
    if (optimal && cfg.objective_pruning && best) {
      auto ub = bounder.bound(c, state.bounds().snapshot());
      if (!ub || *ub < *best) {
        state.count_score_prune();
        continue;
      }
    }
    if (!state.probe(c)) {
      state.record_infeasible(c);
      continue;
    }
    NodeRef m = ascend(l, c, state, state.rng());
    state.add_maximal(m);
    if (optimal) {
      Score s = l.score(m);
      if (!best || *best < s) best = s;
    }
    candidates.insert(std::move(c));  // its region may hold further maximals
    expand_candidates(l.carrier(), candidates, {m});
  }
}

void enumerate_parallel(const OptLattice& l, const NodeRef& lower_bound,
                        const SearchConfig& cfg, SearchState& state, bool optimal) {
  if (!state.probe(lower_bound)) return;
  ScoreBounder bounder(l);
  std::mutex bounder_mutex;
  std::optional<Score> best;
  std::set<NodeRef> candidates{lower_bound};
  std::atomic<bool> budget_blown{false};
  std::string budget_message;

  while (!candidates.empty()) {
    const std::size_t batch_size =
        std::min<std::size_t>(candidates.size(), static_cast<std::size_t>(cfg.threads) * 4);
    std::vector<NodeRef> batch;
    batch.reserve(batch_size);
    for (std::size_t i = 0; i < batch_size; ++i) {
      batch.push_back(*candidates.begin());
      candidates.erase(candidates.begin());
    }
    std::vector<std::optional<NodeRef>> found(batch.size());

#ifdef _OPENMP
#pragma omp parallel for num_threads(cfg.threads) schedule(dynamic)
#endif
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (budget_blown.load()) continue;
      try {
        const NodeRef& c = batch[i];
        if (state.is_pruned(c)) {
          state.count_bound_prune();
          continue;
        }
        if (optimal && cfg.objective_pruning) {
          std::scoped_lock lock(bounder_mutex);
          if (best) {
            auto ub = bounder.bound(c, state.bounds().snapshot());
            if (!ub || *ub < *best) {
              state.count_score_prune();
              continue;
            }
          }
        }
        if (!state.probe(c)) {
          state.record_infeasible(c);
          continue;
        }
        SeededRng local_rng(cfg.seed ^ (NodeRefHash{}(c) | 1));
        NodeRef m = ascend(l, c, state, local_rng);
        state.add_maximal(m);
        if (optimal) {
          Score s = l.score(m);
          std::scoped_lock lock(bounder_mutex);
          if (!best || *best < s) best = s;
        }
        found[i] = std::move(m);
      } catch (const BudgetExhausted& e) {
        if (!budget_blown.exchange(true)) budget_message = e.what();
      }
    }
    if (budget_blown.load()) {
      throw BudgetExhausted(budget_message, state.outcome(false));
    }

    std::vector<NodeRef> new_maximals;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (found[i]) {
        candidates.insert(batch[i]);  // keep exploring the ascended region
        if (std::find(new_maximals.begin(), new_maximals.end(), *found[i]) ==
            new_maximals.end()) {
          new_maximals.push_back(*found[i]);
        }
      }
    }
    expand_candidates(l.carrier(), candidates, new_maximals);
  }
}

SearchOutcome run_enumeration(const OptLattice& l, const NodeRef& lower_bound,
                              const SearchConfig& cfg, bool optimal) {
  l.carrier().check_node(lower_bound);
  SearchState state(l, cfg);
  if (cfg.threads > 1) {
    enumerate_parallel(l, lower_bound, cfg, state, optimal);
  } else {
    enumerate_serial(l, lower_bound, cfg, state, optimal);
  }
  SearchOutcome out = state.outcome(true);
  if (optimal && !out.nodes.empty()) {
    Score best = l.score(out.nodes.front());
    for (const NodeRef& n : out.nodes) {
      Score s = l.score(n);
      if (best < s) best = s;
    }
    std::erase_if(out.nodes, [&](const NodeRef& n) { return l.score(n) < best; });
  }
  return out;
}

}  // namespace

NodeRef greedy_ascend(const OptLattice& l, const NodeRef& start, SearchState& state,
                      const SearchConfig& cfg) {
  (void)cfg;
  l.carrier().check_node(start);
  if (!state.probe(start)) {
    throw ContractViolation("greedy_ascend requires a feasible start node");
  }
  return ascend(l, start, state, state.rng());
}

SearchOutcome maximal_feasible_objects(const OptLattice& l, const NodeRef& lower_bound,
                                       const SearchConfig& cfg) {
  return run_enumeration(l, lower_bound, cfg, false);
}

SearchOutcome optimal_feasible_objects(const OptLattice& l, const NodeRef& lower_bound,
                                       const SearchConfig& cfg) {
  return run_enumeration(l, lower_bound, cfg, true);
}

}  // namespace lattopt
