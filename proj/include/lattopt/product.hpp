#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "lattopt/lattice.hpp"

namespace lattopt {

// Cartesian product with componentwise order, join and meet. Covers change
// exactly one coordinate. Labels are pairs of the component labels and the
// default score is the lexicographic pair of the component scores.
class ProductLattice final : public Lattice {
 public:
  ProductLattice(std::shared_ptr<const Lattice> left,
                 std::shared_ptr<const Lattice> right);

  const Lattice& left() const { return *left_; }
  const Lattice& right() const { return *right_; }

  NodeRef compose(const NodeRef& a, const NodeRef& b) const;
  std::pair<NodeRef, NodeRef> split(const NodeRef& n) const;

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
  std::shared_ptr<const Lattice> left_;
  std::shared_ptr<const Lattice> right_;
};

std::shared_ptr<const ProductLattice> product(std::shared_ptr<const Lattice> left,
                                              std::shared_ptr<const Lattice> right);

}  // namespace lattopt
