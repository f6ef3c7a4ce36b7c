#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "lattopt/interval.hpp"
#include "lattopt/inverted.hpp"
#include "lattopt/opt_lattice.hpp"
#include "lattopt/powerset.hpp"
#include "lattopt/product.hpp"
#include "support/brute_force.hpp"
#include "support/random_lattices.hpp"

using namespace lattopt;
using namespace lattopt::testing;

namespace {

Score sum_score(const Label& l) {
  BigInt total = 0;
  for (auto v : l.as_set()) total += v;
  return Score::integer(total);
}

bool squares_free(const Label& l) {
  const auto& s = l.as_set();
  return std::none_of(s.begin(), s.end(), [&](std::int64_t x) {
    return std::binary_search(s.begin(), s.end(), x * x);
  });
}

OptLattice squares_lattice(std::shared_ptr<const PowersetLattice>& carrier_out) {
  std::vector<std::int64_t> elements;
  for (int i = 0; i <= 16; ++i) elements.push_back(i);
  carrier_out = powerset(elements);
  return OptLattice::over(carrier_out).with_score(sum_score).filter(squares_free);
}

}  // namespace

TEST_CASE("with_score computes from labels") {
  std::shared_ptr<const PowersetLattice> c;
  OptLattice l = squares_lattice(c);
  CHECK(l.score(c->of_values({2, 5})) == Score::integer(7));
  CHECK(l.score(c->bottom()) == Score::integer(0));
  CHECK(l.score(c->of_values({2, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16})) ==
        Score::integer(128));
}

TEST_CASE("filter evaluates the squares predicate") {
  std::shared_ptr<const PowersetLattice> c;
  OptLattice l = squares_lattice(c);
  CHECK_FALSE(l.feasible(c->of_values({3, 9})));
  CHECK(l.feasible(c->bottom()));
  CHECK_FALSE(l.feasible(c->of_values({4, 16})));
  CHECK(l.feasible(c->of_values({4})));
}

TEST_CASE("map relabels without touching score or feasibility") {
  auto c = powerset({1, 2});
  OptLattice base = OptLattice::over(c).with_score(sum_score);
  OptLattice sized = base.map(
      [](const Label& l) { return Label::integer(static_cast<std::int64_t>(l.as_set().size())); });
  NodeRef top = c->top();
  CHECK(sized.label(top).as_integer() == 2);
  CHECK(sized.score(top) == Score::integer(3));  // still the sum
  CHECK(sized.feasible(top));

  OptLattice ident = base.map([](const Label& l) { return l; });
  for (const NodeRef& n : all_nodes(*c, 10)) {
    CHECK(ident.label(n) == base.label(n));
    CHECK(ident.score(n) == base.score(n));
    CHECK(ident.feasible(n) == base.feasible(n));
  }
}

TEST_CASE("map can build substitution-style opaque labels") {
  auto c = powerset({0, 1, 2, 3});
  OptLattice l = OptLattice::over(c).map([](const Label& lab) {
    std::map<std::string, bool> flags;
    for (int i = 0; i < 4; ++i) flags["f" + std::to_string(i)] = false;
    for (auto v : lab.as_set()) flags["f" + std::to_string(v)] = true;
    return Label::opaque(flags);
  });
  Label top = l.label(c->top());
  const auto& flags = top.as<std::map<std::string, bool>>();
  CHECK(flags.at("f0"));
  CHECK(flags.at("f3"));
}

TEST_CASE("map_score transforms scores") {
  auto c = powerset({1, 2, 3});
  OptLattice base = OptLattice::over(c).with_score(sum_score);
  OptLattice doubled = base.map_score(
      [](const Score& s) { return Score::integer(s.as_integer() * 2); });
  CHECK(doubled.score(c->top()) == Score::integer(12));

  // a strictly monotone transform preserves the argmax set
  auto nodes = all_nodes(*c, 10);
  auto argmax = [&](const OptLattice& l) {
    std::vector<NodeRef> best;
    for (const NodeRef& n : nodes) {
      if (best.empty() || l.score(best.front()) < l.score(n)) best = {n};
      else if (l.score(best.front()) == l.score(n)) best.push_back(n);
    }
    return best;
  };
  CHECK(argmax(base) == argmax(doubled));

  OptLattice ident = base.map_score([](const Score& s) { return s; });
  for (const NodeRef& n : nodes) CHECK(ident.score(n) == base.score(n));
}

TEST_CASE("product pairs labels and scores, conjoins feasibility") {
  auto a = powerset({1, 2});
  auto b = powerset({3});
  OptLattice la = OptLattice::over(a).with_score(sum_score).filter(
      [](const Label& l) { return l.as_set().size() < 2; });
  OptLattice lb = OptLattice::over(b).with_score(sum_score);
  OptLattice p = product(la, lb);

  auto pc = std::dynamic_pointer_cast<const ProductLattice>(p.carrier_ptr());
  REQUIRE(pc != nullptr);
  NodeRef n = pc->compose(a->of_values({1}), b->of_values({3}));
  CHECK(p.label(n).first().as_set() == std::vector<std::int64_t>{1});
  CHECK(p.label(n).second().as_set() == std::vector<std::int64_t>{3});
  CHECK(p.score(n) == Score::pair(Score::integer(1), Score::integer(3)));
  CHECK(p.feasible(n));
  CHECK_FALSE(p.feasible(pc->compose(a->top(), b->bottom())));  // left filter fails

  // map_score can reduce the pair to a sum, as the network objective does
  OptLattice summed = p.map_score([](const Score& s) { return s.first() + s.second(); });
  CHECK(summed.score(n) == Score::integer(4));
}

TEST_CASE("product of two 2-chains is the 4-node diamond") {
  OptLattice p = product(OptLattice::over(powerset({0})), OptLattice::over(powerset({1})));
  auto nodes = all_nodes(p.carrier(), 10);
  REQUIRE(nodes.size() == 4);
  for (const NodeRef& n : nodes) CHECK(p.feasible(n));
  std::size_t covers = 0;
  for (const NodeRef& n : nodes) covers += p.carrier().successors(n).size();
  CHECK(covers == 4);  // diamond has 4 Hasse edges
}

TEST_CASE("flat_map over a single-node lattice behaves like the inner lattice") {
  OptLattice inner = OptLattice::over(powerset({5, 6})).with_score(sum_score);
  OptLattice outer = OptLattice::over(powerset({}));
  OptLattice fm = flat_map(outer, [inner](const Label&) { return inner; });

  auto pc = std::dynamic_pointer_cast<const ProductLattice>(fm.carrier_ptr());
  REQUIRE(pc != nullptr);
  auto inner_nodes = all_nodes(inner.carrier(), 10);
  NodeRef unit = outer.bottom();
  for (const NodeRef& x : inner_nodes) {
    for (const NodeRef& y : inner_nodes) {
      CHECK(fm.carrier().order(pc->compose(unit, x), pc->compose(unit, y)) ==
            inner.carrier().order(x, y));
    }
    CHECK(fm.label(pc->compose(unit, x)) == inner.label(x));
    CHECK(fm.score(pc->compose(unit, x)).second() == inner.score(x));
    CHECK(fm.feasible(pc->compose(unit, x)) == inner.feasible(x));
  }
}

TEST_CASE("flat_map labels may depend on the outer label") {
  OptLattice outer = OptLattice::over(powerset({0, 1}));
  OptLattice inner = OptLattice::over(powerset({7}));
  OptLattice fm = flat_map(outer, [inner](const Label& out_label) {
    std::int64_t base = static_cast<std::int64_t>(out_label.as_set().size());
    return inner.map([base](const Label& in_label) {
      return Label::integer(base * 100 + static_cast<std::int64_t>(in_label.as_set().size()));
    });
  });
  auto pc = std::dynamic_pointer_cast<const ProductLattice>(fm.carrier_ptr());
  auto op = std::dynamic_pointer_cast<const PowersetLattice>(outer.carrier_ptr());
  auto ip = std::dynamic_pointer_cast<const PowersetLattice>(inner.carrier_ptr());
  CHECK(fm.label(pc->compose(op->of_values({0, 1}), ip->top())).as_integer() == 201);
  CHECK(fm.label(pc->compose(op->bottom(), ip->bottom())).as_integer() == 0);
}

TEST_CASE("flat_map rejects a non-constant inner carrier") {
  OptLattice outer = OptLattice::over(powerset({0}));
  CHECK_THROWS_AS(flat_map(outer,
                           [](const Label& l) {
                             return l.as_set().empty() ? OptLattice::over(powerset({1}))
                                                       : OptLattice::over(powerset({1, 2}));
                           }),
                  ConstructionError);
}

TEST_CASE("cached memoizes feasibility and counts") {
  auto c = powerset({0, 1, 2});
  auto counter = std::make_shared<int>(0);
  OptLattice l = OptLattice::over(c).filter([counter](const Label&) {
    ++*counter;
    return true;
  });
  auto cache = std::make_shared<FeasibilityCache>();
  OptLattice cl = l.cached(cache);

  NodeRef n = c->of_values({1});
  CHECK(cl.feasible(n));
  CHECK(cl.feasible(n));
  CHECK(*counter == 1);
  CHECK(cache->queries() == 2);
  CHECK(cache->hits() == 1);
  CHECK(cache->oracle_calls() == 1);

  // distinct nodes each cost one oracle call
  for (const NodeRef& m : all_nodes(*c, 10)) cl.feasible(m);
  CHECK(cache->oracle_calls() == 8);

  // observationally equal on every queried node
  for (const NodeRef& m : all_nodes(*c, 10)) CHECK(cl.feasible(m) == l.feasible(m));
}

TEST_CASE("combinator laws, observationally") {
  auto c = powerset({1, 2, 3});
  auto nodes = all_nodes(*c, 10);
  OptLattice base = OptLattice::over(c);

  auto p = [](const Label& l) { return l.as_set().size() < 3; };
  auto q = [](const Label& l) { return !l.as_set().empty(); };
  OptLattice chained = base.filter(p).filter(q);
  OptLattice conjoined = base.filter([&](const Label& l) { return p(l) && q(l); });
  for (const NodeRef& n : nodes) CHECK(chained.feasible(n) == conjoined.feasible(n));

  auto g = [](const Label& l) { return Label::integer(static_cast<std::int64_t>(l.as_set().size())); };
  auto h = [](const Label& l) { return Label::integer(l.as_integer() + 10); };
  OptLattice mapped_twice = base.map(g).map(h);
  OptLattice composed = base.map([&](const Label& l) { return h(g(l)); });
  for (const NodeRef& n : nodes) CHECK(mapped_twice.label(n) == composed.label(n));

  OptLattice rescored = base.with_score(sum_score).with_score(
      [](const Label& l) { return Score::integer(static_cast<long long>(l.as_set().size())); });
  for (const NodeRef& n : nodes) {
    CHECK(rescored.score(n) == Score::integer(static_cast<long long>(c->cardinality(n))));
  }
}

TEST_CASE("downward-closure and monotonicity audits") {
  std::shared_ptr<const PowersetLattice> c;
  OptLattice squares = squares_lattice(c);
  CHECK_FALSE(audit_downward_closure(squares, 5).has_value());
  CHECK_FALSE(audit_score_monotonicity(squares, 5).has_value());

  // a non-downward-closed predicate is caught
  OptLattice bad = OptLattice::over(c).filter([](const Label& l) { return !l.as_set().empty(); });
  CHECK(audit_downward_closure(bad, 5).has_value());

  // an anti-monotone score is caught
  OptLattice bad_score = OptLattice::over(c).with_score([](const Label& l) {
    return Score::integer(-static_cast<long long>(l.as_set().size()));
  });
  CHECK(audit_score_monotonicity(bad_score, 5).has_value());

  // sampled mode on a lattice too large to enumerate
  auto big = powerset([] {
    std::vector<std::int64_t> v;
    for (int i = 0; i < 40; ++i) v.push_back(i);
    return v;
  }());
  OptLattice big_bad = OptLattice::over(big).with_score([](const Label& l) {
    return Score::integer(-static_cast<long long>(l.as_set().size()));
  });
  CHECK(audit_score_monotonicity(big_bad, 5, 2000).has_value());
  OptLattice big_good = OptLattice::over(big);
  CHECK_FALSE(audit_downward_closure(big_good, 5, 2000).has_value());
}

TEST_CASE("random problems pass the audits") {
  SeededRng rng(31337);
  for (int i = 0; i < 25; ++i) {
    auto carrier = random_carrier(rng);
    OptLattice l = random_problem(carrier, rng);
    CHECK_FALSE(audit_downward_closure(l, i).has_value());
    CHECK_FALSE(audit_score_monotonicity(l, i).has_value());
  }
}

TEST_CASE("default family scores are monotone") {
  std::vector<std::shared_ptr<const Lattice>> families = {
      powerset({0, 1, 2, 3}),
      interval_lattice({2, 3, 4}),
      product(powerset({0, 1}), interval_lattice({1, 2})),
      inverted(powerset({0, 1, 2})),
      inverted(interval_lattice({2, 3, 4})),
  };
  for (const auto& c : families) {
    CHECK_FALSE(audit_score_monotonicity(OptLattice::over(c), 1).has_value());
  }
}
