#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "lattopt/lattice.hpp"

namespace lattopt {

// Intervals [l, u] with l in {-inf} ∪ points and u in points ∪ {+inf},
// l ≤ u, plus the empty interval, ordered by reverse inclusion: bottom is
// (-inf, +inf), top is the empty interval. Walking upward shrinks the
// interval.
class IntervalLattice final : public Lattice {
 public:
  // Points must be non-empty and strictly increasing after sorting;
  // duplicates are rejected.
  explicit IntervalLattice(std::vector<std::int64_t> points);

  const std::vector<std::int64_t>& points() const { return points_; }

  NodeRef empty_interval() const;
  // nullopt endpoints are unbounded; bounded endpoints must be declared
  // points. Requires lo ≤ hi.
  NodeRef make(std::optional<std::int64_t> lo, std::optional<std::int64_t> hi) const;
  IntervalValue value_of(const NodeRef& n) const;

  NodeRef bottom() const override;
  NodeRef top() const override;
  bool order(const NodeRef& a, const NodeRef& b) const override;
  NodeRef join(const NodeRef& a, const NodeRef& b) const override;
  NodeRef meet(const NodeRef& a, const NodeRef& b) const override;
  std::vector<NodeRef> successors(const NodeRef& a) const override;
  std::vector<NodeRef> predecessors(const NodeRef& a) const override;
  Label label(const NodeRef& a) const override;
  Score default_score(const NodeRef& a) const override;
  BigCount node_count() const override;
  std::vector<NodeRef> covering_differences(const NodeRef& base,
                                            const NodeRef& cap) const override;
  std::vector<NodeRef> co_covering_differences(const NodeRef& base,
                                               const NodeRef& cap) const override;
  NodeRef random_node(SeededRng& rng) const override;

 private:
  // lo index: 0 = -inf, i ≥ 1 = points[i-1]. hi index: i < k = points[i],
  // k = +inf. A pair is non-empty iff lo ≤ hi + 1.
  struct Iv {
    bool empty;
    std::size_t lo;
    std::size_t hi;
  };

  Iv decode(const NodeRef& n) const;
  NodeRef encode(const Iv& iv) const;
  NodeRef encode(std::size_t lo, std::size_t hi) const;  // normalizes empties

  std::vector<std::int64_t> points_;
};

std::shared_ptr<const IntervalLattice> interval_lattice(std::vector<std::int64_t> points);

}  // namespace lattopt
