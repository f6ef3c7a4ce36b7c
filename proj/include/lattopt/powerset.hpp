#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lattopt/lattice.hpp"

namespace lattopt {

// All subsets of a finite element set under inclusion, encoded as fixed-width
// bit vectors over the element index space. The element order is fixed at
// construction; successors/predecessors iterate in element-index order.
class PowersetLattice final : public Lattice {
 public:
  // Rejects duplicate elements.
  explicit PowersetLattice(std::vector<std::int64_t> elements);

  const std::vector<std::int64_t>& elements() const { return elements_; }
  std::size_t universe_size() const { return elements_.size(); }

  NodeRef empty_set() const { return bottom(); }
  NodeRef of_indices(const std::vector<std::size_t>& indices) const;
  NodeRef of_values(const std::vector<std::int64_t>& values) const;
  std::vector<std::size_t> indices_of(const NodeRef& n) const;
  bool contains_index(const NodeRef& n, std::size_t index) const;
  std::size_t cardinality(const NodeRef& n) const;

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
  std::vector<std::int64_t> elements_;
};

std::shared_ptr<const PowersetLattice> powerset(std::vector<std::int64_t> elements);

}  // namespace lattopt
