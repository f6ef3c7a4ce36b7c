#pragma once

#include <memory>
#include <vector>

#include "lattopt/lattice.hpp"

namespace lattopt {

// Order-dual view of another lattice: same carrier and labels, order
// reversed, extremes and join/meet and successors/predecessors swapped.
// Shares the inner lattice's id, so node handles are interchangeable.
// The default score is the negated inner score, which is monotone in the
// reversed order.
class InvertedLattice final : public Lattice {
 public:
  explicit InvertedLattice(std::shared_ptr<const Lattice> inner);

  const Lattice& inner() const { return *inner_; }
  const std::shared_ptr<const Lattice>& inner_ptr() const { return inner_; }

  NodeRef bottom() const override { return inner_->top(); }
  NodeRef top() const override { return inner_->bottom(); }
  bool order(const NodeRef& a, const NodeRef& b) const override {
    return inner_->order(b, a);
  }
  NodeRef join(const NodeRef& a, const NodeRef& b) const override {
    return inner_->meet(a, b);
  }
  NodeRef meet(const NodeRef& a, const NodeRef& b) const override {
    return inner_->join(a, b);
  }
  std::vector<NodeRef> successors(const NodeRef& a) const override {
    return inner_->predecessors(a);
  }
  std::vector<NodeRef> predecessors(const NodeRef& a) const override {
    return inner_->successors(a);
  }
  Label label(const NodeRef& a) const override { return inner_->label(a); }
  Score default_score(const NodeRef& a) const override {
    return inner_->default_score(a).negated();
  }
  BigCount node_count() const override { return inner_->node_count(); }
  std::vector<NodeRef> covering_differences(const NodeRef& base,
                                            const NodeRef& cap) const override {
    return inner_->co_covering_differences(base, cap);
  }
  std::vector<NodeRef> co_covering_differences(const NodeRef& base,
                                               const NodeRef& cap) const override {
    return inner_->covering_differences(base, cap);
  }
  NodeRef random_node(SeededRng& rng) const override {
    return inner_->random_node(rng);
  }

 private:
  std::shared_ptr<const Lattice> inner_;
};

std::shared_ptr<const InvertedLattice> inverted(std::shared_ptr<const Lattice> inner);

}  // namespace lattopt
