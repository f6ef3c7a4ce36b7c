#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "lattopt/interval.hpp"
#include "lattopt/inverted.hpp"
#include "lattopt/powerset.hpp"
#include "lattopt/product.hpp"
#include "support/brute_force.hpp"

using namespace lattopt;
using namespace lattopt::testing;

TEST_CASE("powerset basics") {
  auto l = powerset({0, 1, 2});
  CHECK(l->node_count() == 8);
  CHECK(l->order(l->bottom(), l->top()));
  CHECK(l->label(l->bottom()).as_set().empty());
  CHECK(l->label(l->top()).as_set() == std::vector<std::int64_t>{0, 1, 2});

  auto big = powerset([] {
    std::vector<std::int64_t> v;
    for (int i = 0; i <= 16; ++i) v.push_back(i);
    return v;
  }());
  CHECK(big->node_count() == 131072);  // 2^17

  CHECK_THROWS_AS(powerset({1, 1}), ConstructionError);
}

TEST_CASE("empty powerset is a single node") {
  auto l = powerset({});
  CHECK(l->bottom() == l->top());
  CHECK(l->node_count() == 1);
  CHECK(l->successors(l->bottom()).empty());
}

TEST_CASE("powerset successors add one element") {
  auto l = powerset({10, 20});
  auto succ = l->successors(l->bottom());
  REQUIRE(succ.size() == 2);
  std::set<std::vector<std::int64_t>> labels;
  for (const auto& s : succ) labels.insert(l->label(s).as_set());
  CHECK(labels == std::set<std::vector<std::int64_t>>{{10}, {20}});
}

TEST_CASE("foreign nodes are rejected") {
  auto a = powerset({0, 1});
  auto b = powerset({0, 1});
  CHECK_THROWS_AS(a->order(a->bottom(), b->bottom()), ContractViolation);
}

TEST_CASE("inverted lattice swaps the order") {
  auto p = powerset({0, 1});
  auto inv = inverted(p);
  CHECK(inv->label(inv->bottom()).as_set() == std::vector<std::int64_t>{0, 1});
  CHECK(inv->label(inv->top()).as_set().empty());

  SeededRng rng(7);
  for (int i = 0; i < 50; ++i) {
    NodeRef a = p->random_node(rng);
    NodeRef b = p->random_node(rng);
    CHECK(inv->order(a, b) == p->order(b, a));
    CHECK(inv->successors(a) == p->predecessors(a));
    CHECK(inv->predecessors(a) == p->successors(a));
  }
}

TEST_CASE("double inversion behaves like the original") {
  auto p = interval_lattice({1, 2, 3});
  auto twice = inverted(inverted(p));
  SeededRng rng(11);
  for (int i = 0; i < 100; ++i) {
    NodeRef a = p->random_node(rng);
    NodeRef b = p->random_node(rng);
    CHECK(twice->order(a, b) == p->order(a, b));
    CHECK(twice->join(a, b) == p->join(a, b));
    CHECK(twice->meet(a, b) == p->meet(a, b));
  }
}

TEST_CASE("interval lattice over {2,3,4} reproduces the 14-node diagram") {
  auto l = interval_lattice({2, 3, 4});
  auto nodes = all_nodes(*l, 100);
  CHECK(nodes.size() == 14);
  CHECK(l->node_count() == 14);

  CHECK(l->value_of(l->bottom()) == IntervalValue::range(true, 0, true, 0));
  CHECK(l->value_of(l->top()).empty);

  // superset is lower: [2,4] below [2,3]
  CHECK(l->order(l->make(2, 4), l->make(2, 3)));
  CHECK(l->order(l->make(std::nullopt, 3), l->make(2, 3)));
  CHECK_FALSE(l->order(l->make(2, 2), l->make(3, 3)));
  CHECK_FALSE(l->order(l->make(3, 3), l->make(2, 2)));

  // Hasse edge count of the drawn diagram
  std::size_t edges = 0;
  for (const NodeRef& n : nodes) edges += l->successors(n).size();
  CHECK(edges == 21);

  // spot-check drawn covers
  auto succ_of = [&](const NodeRef& n) {
    std::set<std::string> out;
    for (const NodeRef& s : l->successors(n)) out.insert(l->value_of(s).str());
    return out;
  };
  CHECK(succ_of(l->make(2, 3)) == std::set<std::string>{"[2,2]", "[3,3]"});
  CHECK(succ_of(l->make(2, 2)) == std::set<std::string>{"empty"});
  CHECK(succ_of(l->make(4, std::nullopt)) == std::set<std::string>{"[4,4]"});
  CHECK(succ_of(l->bottom()) == std::set<std::string>{"(-inf,4]", "[2,+inf)"});

  CHECK_THROWS_AS(interval_lattice({}), ConstructionError);
  CHECK_THROWS_AS(interval_lattice({2, 2}), ConstructionError);
}

TEST_CASE("product lattice composes componentwise") {
  auto a = powerset({0});
  auto b = powerset({1});
  auto p = product(a, b);
  CHECK(p->node_count() == 4);
  CHECK(p->bottom() == p->compose(a->bottom(), b->bottom()));
  CHECK(p->top() == p->compose(a->top(), b->top()));

  auto succ = p->successors(p->bottom());
  REQUIRE(succ.size() == 2);
  CHECK(std::find(succ.begin(), succ.end(), p->compose(a->top(), b->bottom())) != succ.end());
  CHECK(std::find(succ.begin(), succ.end(), p->compose(a->bottom(), b->top())) != succ.end());

  Label l = p->label(p->top());
  CHECK(l.first().as_set() == std::vector<std::int64_t>{0});
  CHECK(l.second().as_set() == std::vector<std::int64_t>{1});
}

TEST_CASE("product of two singleton powersets is order-isomorphic to the pair powerset") {
  auto a = powerset({0});
  auto b = powerset({1});
  auto p = product(a, b);
  auto q = powerset({0, 1});
  auto pn = all_nodes(*p, 10);
  auto qn = all_nodes(*q, 10);
  REQUIRE(pn.size() == 4);
  REQUIRE(qn.size() == 4);

  // natural bijection via labels: (S1, S2) -> S1 ∪ S2
  auto to_q = [&](const NodeRef& n) {
    Label l = p->label(n);
    std::vector<std::int64_t> values = l.first().as_set();
    for (auto v : l.second().as_set()) values.push_back(v);
    return q->of_values(values);
  };
  for (const NodeRef& x : pn) {
    for (const NodeRef& y : pn) {
      CHECK(p->order(x, y) == q->order(to_q(x), to_q(y)));
    }
  }
}

TEST_CASE("covering differences on powersets") {
  auto l = powerset({0, 1, 2});  // a=0 b=1 c=2
  auto nodes = all_nodes(*l, 10);

  auto labels_of = [&](const std::vector<NodeRef>& ns) {
    std::set<std::vector<std::int64_t>> out;
    for (const NodeRef& n : ns) out.insert(l->label(n).as_set());
    return out;
  };

  auto d1 = l->covering_differences(l->bottom(), l->of_values({0, 1}));
  CHECK(labels_of(d1) == std::set<std::vector<std::int64_t>>{{2}});
  auto d2 = l->covering_differences(l->of_values({0}), l->of_values({0, 1}));
  CHECK(labels_of(d2) == std::set<std::vector<std::int64_t>>{{0, 2}});
  CHECK(l->covering_differences(l->of_values({0}), l->top()).empty());

  // matches brute force everywhere
  for (const NodeRef& base : nodes) {
    for (const NodeRef& cap : nodes) {
      CHECK(l->covering_differences(base, cap) ==
            brute_covering_differences(*l, base, cap, nodes));
      CHECK(l->co_covering_differences(base, cap) ==
            brute_co_covering_differences(*l, base, cap, nodes));
    }
  }
}

TEST_CASE("covering differences match brute force across families") {
  SeededRng rng(2024);
  std::vector<std::shared_ptr<const Lattice>> families = {
      powerset({0, 1, 2, 3}),
      interval_lattice({1, 2, 3, 4}),
      product(powerset({0, 1}), interval_lattice({5, 6})),
      inverted(powerset({0, 1, 2})),
      inverted(interval_lattice({2, 3, 4})),
      inverted(product(powerset({0}), powerset({1, 2}))),
  };
  for (const auto& l : families) {
    auto nodes = all_nodes(*l, 5000);
    for (int i = 0; i < 60; ++i) {
      NodeRef base = l->random_node(rng);
      NodeRef cap = l->random_node(rng);
      auto got = l->covering_differences(base, cap);
      auto want = brute_covering_differences(*l, base, cap, nodes);
      std::sort(got.begin(), got.end());
      CHECK(got == want);
      auto got_co = l->co_covering_differences(base, cap);
      auto want_co = brute_co_covering_differences(*l, base, cap, nodes);
      std::sort(got_co.begin(), got_co.end());
      CHECK(got_co == want_co);
    }
  }
}

TEST_CASE("lattice laws hold for every family") {
  std::vector<std::shared_ptr<const Lattice>> families = {
      powerset({0, 1, 2, 3, 4}),
      interval_lattice({1, 3, 5, 7}),
      product(powerset({0, 1}), powerset({2, 3})),
      product(interval_lattice({1, 2}), powerset({0})),
      inverted(powerset({0, 1, 2})),
      inverted(interval_lattice({1, 2, 3})),
  };
  for (const auto& l : families) {
    SeededRng rng(99);
    auto violation = check_lattice_laws(*l, rng, 300);
    INFO("family with node count ", l->node_count().str());
    CHECK_FALSE(violation.has_value());
  }
}

TEST_CASE("cover soundness, exhaustively on small lattices") {
  std::vector<std::shared_ptr<const Lattice>> families = {
      powerset({0, 1, 2, 3}),
      interval_lattice({1, 2, 3, 4, 5}),
      product(powerset({0, 1}), interval_lattice({1, 2})),
      inverted(product(powerset({0, 1}), powerset({2}))),
  };
  for (const auto& l : families) {
    auto nodes = all_nodes(*l, 5000);
    auto violation = check_cover_soundness(*l, nodes);
    CHECK_FALSE(violation.has_value());
  }
}

TEST_CASE("enumeration agrees with the symbolic node count") {
  std::vector<std::shared_ptr<const Lattice>> families = {
      powerset({0, 1, 2, 3, 4, 5}),
      interval_lattice({1, 2, 3, 4, 5, 6}),
      product(powerset({0, 1, 2}), interval_lattice({1, 2, 3})),
  };
  for (const auto& l : families) {
    auto nodes = all_nodes(*l, 5000);
    CHECK(BigCount(nodes.size()) == l->node_count());
  }
}
