#include "lattopt/product.hpp"

#include <algorithm>

#include "lattopt/errors.hpp"

namespace lattopt {

ProductLattice::ProductLattice(std::shared_ptr<const Lattice> left,
                               std::shared_ptr<const Lattice> right)
    : Lattice(left->node_words() + right->node_words()),
      left_(std::move(left)),
      right_(std::move(right)) {}

NodeRef ProductLattice::compose(const NodeRef& a, const NodeRef& b) const {
  left_->check_node(a);
  right_->check_node(b);
  std::vector<std::uint64_t> w;
  w.reserve(node_words());
  w.insert(w.end(), a.words.begin(), a.words.end());
  w.insert(w.end(), b.words.begin(), b.words.end());
  return mint(std::move(w));
}

std::pair<NodeRef, NodeRef> ProductLattice::split(const NodeRef& n) const {
  check_node(n);
  const std::size_t lw = left_->node_words();
  NodeRef a{left_->id(), std::vector<std::uint64_t>(n.words.begin(), n.words.begin() + lw)};
  NodeRef b{right_->id(), std::vector<std::uint64_t>(n.words.begin() + lw, n.words.end())};
  return {std::move(a), std::move(b)};
}

NodeRef ProductLattice::bottom() const {
  return compose(left_->bottom(), right_->bottom());
}

NodeRef ProductLattice::top() const { return compose(left_->top(), right_->top()); }

bool ProductLattice::order(const NodeRef& a, const NodeRef& b) const {
  auto [a1, a2] = split(a);
  auto [b1, b2] = split(b);
  return left_->order(a1, b1) && right_->order(a2, b2);
}

NodeRef ProductLattice::join(const NodeRef& a, const NodeRef& b) const {
  auto [a1, a2] = split(a);
  auto [b1, b2] = split(b);
  return compose(left_->join(a1, b1), right_->join(a2, b2));
}

NodeRef ProductLattice::meet(const NodeRef& a, const NodeRef& b) const {
  auto [a1, a2] = split(a);
  auto [b1, b2] = split(b);
  return compose(left_->meet(a1, b1), right_->meet(a2, b2));
}

std::vector<NodeRef> ProductLattice::successors(const NodeRef& a) const {
  auto [a1, a2] = split(a);
  std::vector<NodeRef> out;
  for (const NodeRef& s : left_->successors(a1)) out.push_back(compose(s, a2));
  for (const NodeRef& s : right_->successors(a2)) out.push_back(compose(a1, s));
  return out;
}

std::vector<NodeRef> ProductLattice::predecessors(const NodeRef& a) const {
  auto [a1, a2] = split(a);
  std::vector<NodeRef> out;
  for (const NodeRef& p : left_->predecessors(a1)) out.push_back(compose(p, a2));
  for (const NodeRef& p : right_->predecessors(a2)) out.push_back(compose(a1, p));
  return out;
}

Label ProductLattice::label(const NodeRef& a) const {
  auto [a1, a2] = split(a);
  return Label::pair(left_->label(a1), right_->label(a2));
}

Score ProductLattice::default_score(const NodeRef& a) const {
  auto [a1, a2] = split(a);
  return Score::pair(left_->default_score(a1), right_->default_score(a2));
}

BigCount ProductLattice::node_count() const {
  return left_->node_count() * right_->node_count();
}

std::vector<NodeRef> ProductLattice::covering_differences(const NodeRef& base,
                                                          const NodeRef& cap) const {
  if (!order(base, cap)) return {base};
  auto [b1, b2] = split(base);
  auto [c1, c2] = split(cap);
  std::vector<NodeRef> out;
  for (const NodeRef& d : left_->covering_differences(b1, c1)) out.push_back(compose(d, b2));
  for (const NodeRef& d : right_->covering_differences(b2, c2)) out.push_back(compose(b1, d));
  return out;
}

std::vector<NodeRef> ProductLattice::co_covering_differences(const NodeRef& base,
                                                             const NodeRef& cap) const {
  if (!order(cap, base)) return {base};
  auto [b1, b2] = split(base);
  auto [c1, c2] = split(cap);
  std::vector<NodeRef> out;
  for (const NodeRef& d : left_->co_covering_differences(b1, c1)) out.push_back(compose(d, b2));
  for (const NodeRef& d : right_->co_covering_differences(b2, c2)) out.push_back(compose(b1, d));
  return out;
}

NodeRef ProductLattice::random_node(SeededRng& rng) const {
  NodeRef a = left_->random_node(rng);
  NodeRef b = right_->random_node(rng);
  return compose(a, b);
}

std::shared_ptr<const ProductLattice> product(std::shared_ptr<const Lattice> left,
                                              std::shared_ptr<const Lattice> right) {
  return std::make_shared<const ProductLattice>(std::move(left), std::move(right));
}

}  // namespace lattopt
