#pragma once

// Random lattice families and random optimization problems (downward-closed
// feasibility, monotone score) for the property suites.

#include <memory>
#include <vector>

#include "lattopt/interval.hpp"
#include "lattopt/inverted.hpp"
#include "lattopt/opt_lattice.hpp"
#include "lattopt/powerset.hpp"
#include "lattopt/product.hpp"

namespace lattopt::testing {

inline std::shared_ptr<const Lattice> random_small_carrier(SeededRng& rng, int max_bits = 6) {
  switch (rng.below(3)) {
    case 0: {
      std::size_t k = 1 + rng.below(static_cast<std::uint64_t>(max_bits));
      std::vector<std::int64_t> elements;
      for (std::size_t i = 0; i < k; ++i) elements.push_back(static_cast<std::int64_t>(i * 3));
      return powerset(std::move(elements));
    }
    case 1: {
      std::size_t k = 1 + rng.below(10);
      std::vector<std::int64_t> points;
      for (std::size_t i = 0; i < k; ++i) points.push_back(static_cast<std::int64_t>(i * 2 + 1));
      return interval_lattice(std::move(points));
    }
    default: {
      std::size_t k = 2 + rng.below(4);
      std::vector<std::int64_t> elements;
      for (std::size_t i = 0; i < k; ++i) elements.push_back(static_cast<std::int64_t>(i));
      return powerset(std::move(elements));
    }
  }
}

// Powersets, intervals, products and inversions, sized to stay enumerable.
inline std::shared_ptr<const Lattice> random_carrier(SeededRng& rng) {
  switch (rng.below(5)) {
    case 0:
    case 1:
      return random_small_carrier(rng, 10);
    case 2:
      return product(random_small_carrier(rng), random_small_carrier(rng));
    case 3:
      return inverted(random_small_carrier(rng, 10));
    default:
      return inverted(product(random_small_carrier(rng), random_small_carrier(rng)));
  }
}

// Feasibility: infeasible iff at or above one of a few random blocker nodes;
// downward-closed by construction. Score: weighted count of dominated anchor
// nodes; monotone by construction.
inline OptLattice random_problem(std::shared_ptr<const Lattice> carrier, SeededRng& rng) {
  const Lattice* c = carrier.get();
  std::vector<NodeRef> blockers;
  std::size_t nb = rng.below(5);
  for (std::size_t i = 0; i < nb; ++i) blockers.push_back(c->random_node(rng));

  std::vector<std::pair<NodeRef, long long>> anchors;
  std::size_t na = 1 + rng.below(4);
  for (std::size_t i = 0; i < na; ++i) {
    anchors.emplace_back(c->random_node(rng), static_cast<long long>(rng.below(9) + 1));
  }

  return OptLattice::over(std::move(carrier))
      .with_node_feasibility([c, blockers](const NodeRef& n) {
        for (const NodeRef& b : blockers) {
          if (c->order(b, n)) return false;
        }
        return true;
      })
      .with_node_score([c, anchors](const NodeRef& n) {
        long long total = 0;
        for (const auto& [a, w] : anchors) {
          if (c->order(a, n)) total += w;
        }
        return Score::integer(total);
      });
}

}  // namespace lattopt::testing
