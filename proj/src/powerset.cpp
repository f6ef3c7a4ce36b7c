#include "lattopt/powerset.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "lattopt/errors.hpp"

namespace lattopt {

namespace {

std::size_t words_for(std::size_t bits) { return bits == 0 ? 1 : (bits + 63) / 64; }

bool subset_words(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

}  // namespace

PowersetLattice::PowersetLattice(std::vector<std::int64_t> elements)
    : Lattice(words_for(elements.size())), elements_(std::move(elements)) {
  std::unordered_set<std::int64_t> seen;
  for (auto e : elements_) {
    if (!seen.insert(e).second) {
      throw ConstructionError("duplicate powerset element: " + std::to_string(e));
    }
  }
}

NodeRef PowersetLattice::of_indices(const std::vector<std::size_t>& indices) const {
  std::vector<std::uint64_t> w(node_words(), 0);
  for (std::size_t i : indices) {
    if (i >= elements_.size()) throw ContractViolation("element index out of range");
    w[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return mint(std::move(w));
}

NodeRef PowersetLattice::of_values(const std::vector<std::int64_t>& values) const {
  std::vector<std::size_t> idx;
  idx.reserve(values.size());
  for (auto v : values) {
    auto it = std::find(elements_.begin(), elements_.end(), v);
    if (it == elements_.end()) {
      throw ContractViolation("value is not a powerset element: " + std::to_string(v));
    }
    idx.push_back(static_cast<std::size_t>(it - elements_.begin()));
  }
  return of_indices(idx);
}

std::vector<std::size_t> PowersetLattice::indices_of(const NodeRef& n) const {
  check_node(n);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (contains_index(n, i)) out.push_back(i);
  }
  return out;
}

bool PowersetLattice::contains_index(const NodeRef& n, std::size_t index) const {
  return (n.words[index / 64] >> (index % 64)) & 1u;
}

std::size_t PowersetLattice::cardinality(const NodeRef& n) const {
  check_node(n);
  std::size_t c = 0;
  for (auto w : n.words) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

NodeRef PowersetLattice::bottom() const {
  return mint(std::vector<std::uint64_t>(node_words(), 0));
}

NodeRef PowersetLattice::top() const {
  std::vector<std::uint64_t> w(node_words(), 0);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    w[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return mint(std::move(w));
}

bool PowersetLattice::order(const NodeRef& a, const NodeRef& b) const {
  check_node(a);
  check_node(b);
  return subset_words(a.words, b.words);
}

NodeRef PowersetLattice::join(const NodeRef& a, const NodeRef& b) const {
  check_node(a);
  check_node(b);
  std::vector<std::uint64_t> w(node_words());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = a.words[i] | b.words[i];
  return mint(std::move(w));
}

NodeRef PowersetLattice::meet(const NodeRef& a, const NodeRef& b) const {
  check_node(a);
  check_node(b);
  std::vector<std::uint64_t> w(node_words());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = a.words[i] & b.words[i];
  return mint(std::move(w));
}

std::vector<NodeRef> PowersetLattice::successors(const NodeRef& a) const {
  check_node(a);
  std::vector<NodeRef> out;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!contains_index(a, i)) {
      std::vector<std::uint64_t> w = a.words;
      w[i / 64] |= std::uint64_t{1} << (i % 64);
      out.push_back(mint(std::move(w)));
    }
  }
  return out;
}

std::vector<NodeRef> PowersetLattice::predecessors(const NodeRef& a) const {
  check_node(a);
  std::vector<NodeRef> out;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (contains_index(a, i)) {
      std::vector<std::uint64_t> w = a.words;
      w[i / 64] &= ~(std::uint64_t{1} << (i % 64));
      out.push_back(mint(std::move(w)));
    }
  }
  return out;
}

Label PowersetLattice::label(const NodeRef& a) const {
  check_node(a);
  std::vector<std::int64_t> values;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (contains_index(a, i)) values.push_back(elements_[i]);
  }
  std::sort(values.begin(), values.end());
  return Label::set(std::move(values));
}

Score PowersetLattice::default_score(const NodeRef& a) const {
  return Score::integer(static_cast<long long>(cardinality(a)));
}

BigCount PowersetLattice::node_count() const {
  BigCount c = 1;
  return c << elements_.size();
}

std::vector<NodeRef> PowersetLattice::covering_differences(const NodeRef& base,
                                                           const NodeRef& cap) const {
  check_node(base);
  check_node(cap);
  if (!order(base, cap)) return {base};
  std::vector<NodeRef> out;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!contains_index(cap, i)) {
      std::vector<std::uint64_t> w = base.words;
      w[i / 64] |= std::uint64_t{1} << (i % 64);
      out.push_back(mint(std::move(w)));
    }
  }
  return out;
}

std::vector<NodeRef> PowersetLattice::co_covering_differences(const NodeRef& base,
                                                              const NodeRef& cap) const {
  check_node(base);
  check_node(cap);
  if (!order(cap, base)) return {base};
  std::vector<NodeRef> out;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (contains_index(cap, i)) {
      std::vector<std::uint64_t> w = base.words;
      w[i / 64] &= ~(std::uint64_t{1} << (i % 64));
      out.push_back(mint(std::move(w)));
    }
  }
  return out;
}

NodeRef PowersetLattice::random_node(SeededRng& rng) const {
  std::vector<std::uint64_t> w(node_words(), 0);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (rng.coin()) w[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return mint(std::move(w));
}

std::shared_ptr<const PowersetLattice> powerset(std::vector<std::int64_t> elements) {
  return std::make_shared<const PowersetLattice>(std::move(elements));
}

}  // namespace lattopt
