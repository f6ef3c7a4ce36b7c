#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "lattopt/powerset.hpp"
#include "lattopt/search.hpp"
#include "support/brute_force.hpp"
#include "support/random_lattices.hpp"

using namespace lattopt;
using namespace lattopt::testing;

namespace {

OptLattice squares_problem(std::shared_ptr<const PowersetLattice>& carrier_out) {
  std::vector<std::int64_t> elements;
  for (int i = 0; i <= 16; ++i) elements.push_back(i);
  carrier_out = powerset(elements);
  return OptLattice::over(carrier_out)
      .with_score([](const Label& l) {
        BigInt total = 0;
        for (auto v : l.as_set()) total += v;
        return Score::integer(total);
      })
      .filter([](const Label& l) {
        const auto& s = l.as_set();
        return std::none_of(s.begin(), s.end(), [&](std::int64_t x) {
          return std::binary_search(s.begin(), s.end(), x * x);
        });
      });
}

}  // namespace

TEST_CASE("bound store keeps an antichain") {
  auto c = powerset({0, 1, 2});
  BoundStore bounds(*c);
  bounds.record(c->of_values({0}));
  CHECK(bounds.is_pruned(c->of_values({0, 1})));
  CHECK_FALSE(bounds.is_pruned(c->bottom()));
  bounds.record(c->of_values({0, 1}));  // dominated, ignored
  CHECK(bounds.size() == 1);
  bounds.record(c->of_values({1, 2}));
  CHECK(bounds.size() == 2);
  bounds.record(c->of_values({1}));  // dominates {1,2}
  CHECK(bounds.size() == 2);
  CHECK(bounds.is_pruned(c->of_values({1, 2})));
}

TEST_CASE("greedy ascent reaches a maximal feasible node") {
  std::shared_ptr<const PowersetLattice> c;
  OptLattice l = squares_problem(c);
  SearchConfig cfg;
  cfg.seed = 123;
  SearchState state(l, cfg);
  NodeRef m = greedy_ascend(l, c->bottom(), state, cfg);
  CHECK(l.feasible(m));
  for (const NodeRef& s : c->successors(m)) CHECK_FALSE(l.feasible(s));
}

TEST_CASE("greedy ascent rejects an infeasible start") {
  std::shared_ptr<const PowersetLattice> c;
  OptLattice l = squares_problem(c);
  SearchConfig cfg;
  SearchState state(l, cfg);
  CHECK_THROWS_AS(greedy_ascend(l, c->of_values({3, 9}), state, cfg), ContractViolation);
}

TEST_CASE("ascent stops at the top when everything is feasible") {
  auto c = powerset({0, 1, 2});
  OptLattice l = OptLattice::over(c);
  SearchConfig cfg;
  SearchState state(l, cfg);
  CHECK(greedy_ascend(l, c->bottom(), state, cfg) == c->top());
}

TEST_CASE("two-chain with only bottom feasible") {
  auto c = powerset({0});
  OptLattice l = OptLattice::over(c).filter([](const Label& lab) { return lab.as_set().empty(); });
  SearchConfig cfg;
  SearchState state(l, cfg);
  CHECK(greedy_ascend(l, c->bottom(), state, cfg) == c->bottom());
}

TEST_CASE("squares problem: maximal and optimal sets") {
  std::shared_ptr<const PowersetLattice> c;
  OptLattice l = squares_problem(c);
  SearchConfig cfg;
  cfg.seed = 123;

  SearchOutcome maximal = maximal_feasible_objects(l, c->bottom(), cfg);
  CHECK(maximal.complete);
  CHECK(maximal.nodes.size() == 4);
  CHECK(maximal.stats.oracle_calls < 2000);
  for (const NodeRef& m : maximal.nodes) {
    CHECK(l.feasible(m));
    for (const NodeRef& s : c->successors(m)) CHECK_FALSE(l.feasible(s));
  }

  SearchOutcome optimal = optimal_feasible_objects(l, c->bottom(), cfg);
  REQUIRE(optimal.nodes.size() == 1);
  CHECK(l.label(optimal.nodes.front()).as_set() ==
        std::vector<std::int64_t>{2, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16});
  CHECK(l.score(optimal.nodes.front()) == Score::integer(128));
}

TEST_CASE("an infeasible lower bound yields the empty set") {
  std::shared_ptr<const PowersetLattice> c;
  OptLattice l = squares_problem(c);
  SearchOutcome out = maximal_feasible_objects(l, c->of_values({3, 9}), {});
  CHECK(out.complete);
  CHECK(out.nodes.empty());
}

TEST_CASE("everything feasible yields exactly the top") {
  auto c = powerset({0, 1, 2, 3});
  OptLattice l = OptLattice::over(c);
  SearchOutcome out = maximal_feasible_objects(l, c->bottom(), {});
  REQUIRE(out.nodes.size() == 1);
  CHECK(out.nodes.front() == c->top());
}

TEST_CASE("constant score: optimal equals maximal") {
  SeededRng rng(7);
  for (int i = 0; i < 10; ++i) {
    auto carrier = random_carrier(rng);
    OptLattice base = random_problem(carrier, rng);
    OptLattice flat = base.with_node_score([](const NodeRef&) { return Score::integer(1); });
    SearchConfig cfg;
    cfg.seed = i;
    auto maximal = maximal_feasible_objects(flat, flat.bottom(), cfg);
    auto optimal = optimal_feasible_objects(flat, flat.bottom(), cfg);
    CHECK(maximal.nodes == optimal.nodes);
  }
}

TEST_CASE("search matches brute force on random lattices and seeds") {
  SeededRng rng(424242);
  for (int trial = 0; trial < 40; ++trial) {
    auto carrier = random_carrier(rng);
    OptLattice l = random_problem(carrier, rng);
    auto nodes = all_nodes(*carrier, 5000);
    auto expected = brute_maximal_feasible(l, carrier->bottom(), nodes);
    auto best = brute_best_feasible_score(l, carrier->bottom(), nodes);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      SearchConfig cfg;
      cfg.seed = seed;
      SearchOutcome out = maximal_feasible_objects(l, carrier->bottom(), cfg);
      CHECK(out.nodes == expected);
      CHECK(out.stats.oracle_calls <= nodes.size());

      SearchOutcome opt = optimal_feasible_objects(l, carrier->bottom(), cfg);
      if (expected.empty()) {
        CHECK(opt.nodes.empty());
      } else {
        REQUIRE(!opt.nodes.empty());
        for (const NodeRef& n : opt.nodes) CHECK(l.score(n) == *best);
        // exactly the argmax subset of the maximal set
        std::vector<NodeRef> want;
        for (const NodeRef& n : expected) {
          if (l.score(n) == *best) want.push_back(n);
        }
        CHECK(opt.nodes == want);
      }
    }
  }
}

TEST_CASE("returned nodes are pairwise incomparable") {
  SeededRng rng(5150);
  for (int trial = 0; trial < 10; ++trial) {
    auto carrier = random_carrier(rng);
    OptLattice l = random_problem(carrier, rng);
    SearchOutcome out = maximal_feasible_objects(l, carrier->bottom(), {});
    for (const NodeRef& a : out.nodes) {
      for (const NodeRef& b : out.nodes) {
        if (a == b) continue;
        CHECK_FALSE(carrier->order(a, b));
      }
    }
  }
}

TEST_CASE("same seed, same outcome and stats") {
  std::shared_ptr<const PowersetLattice> c;
  OptLattice l = squares_problem(c);
  SearchConfig cfg;
  cfg.seed = 9001;
  SearchOutcome a = maximal_feasible_objects(l, c->bottom(), cfg);
  SearchOutcome b = maximal_feasible_objects(l, c->bottom(), cfg);
  CHECK(a.nodes == b.nodes);
  CHECK(a.stats.oracle_calls == b.stats.oracle_calls);
  CHECK(a.stats.cache_hits == b.stats.cache_hits);
  CHECK(a.stats.ascent_steps == b.stats.ascent_steps);
  CHECK(a.stats.bound_prunes == b.stats.bound_prunes);

  SearchConfig other = cfg;
  other.seed = 1;
  SearchOutcome d = maximal_feasible_objects(l, c->bottom(), other);
  CHECK(a.nodes == d.nodes);  // the answer set does not depend on the seed
}

TEST_CASE("budget exhaustion raises an error carrying partial results") {
  std::shared_ptr<const PowersetLattice> c;
  OptLattice l = squares_problem(c);
  SearchConfig cfg;
  cfg.seed = 123;
  cfg.max_oracle_calls = 20;
  bool thrown = false;
  try {
    maximal_feasible_objects(l, c->bottom(), cfg);
  } catch (const BudgetExhausted& e) {
    thrown = true;
    CHECK_FALSE(e.partial().complete);
    CHECK(e.partial().stats.oracle_calls <= 20);
    for (const NodeRef& n : e.partial().nodes) CHECK(l.feasible(n));
  }
  CHECK(thrown);
}

TEST_CASE("objective pruning does not change the optimal set") {
  SeededRng rng(777);
  for (int trial = 0; trial < 15; ++trial) {
    auto carrier = random_carrier(rng);
    OptLattice l = random_problem(carrier, rng);
    SearchConfig with;
    with.seed = trial;
    SearchConfig without = with;
    without.objective_pruning = false;
    auto a = optimal_feasible_objects(l, carrier->bottom(), with);
    auto b = optimal_feasible_objects(l, carrier->bottom(), without);
    CHECK(a.nodes == b.nodes);
  }
}

TEST_CASE("parallel mode returns the same solution set") {
  SeededRng rng(86);
  for (int trial = 0; trial < 10; ++trial) {
    auto carrier = random_carrier(rng);
    OptLattice l = random_problem(carrier, rng);
    SearchConfig serial;
    serial.seed = trial;
    SearchConfig parallel = serial;
    parallel.threads = 4;
    CHECK(maximal_feasible_objects(l, carrier->bottom(), serial).nodes ==
          maximal_feasible_objects(l, carrier->bottom(), parallel).nodes);
    CHECK(optimal_feasible_objects(l, carrier->bottom(), serial).nodes ==
          optimal_feasible_objects(l, carrier->bottom(), parallel).nodes);
  }
}

TEST_CASE("record/prune examples") {
  auto c = powerset([] {
    std::vector<std::int64_t> v;
    for (int i = 0; i <= 16; ++i) v.push_back(i);
    return v;
  }());
  OptLattice l = OptLattice::over(c);
  SearchConfig cfg;
  SearchState state(l, cfg);
  state.record_infeasible(c->of_values({3, 9}));
  CHECK(state.is_pruned(c->of_values({3, 9, 11})));
  CHECK_FALSE(state.is_pruned(c->bottom()));
}
