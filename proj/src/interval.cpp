#include "lattopt/interval.hpp"

#include <algorithm>

#include "lattopt/errors.hpp"

namespace lattopt {

namespace {
constexpr std::uint64_t kEmptyWord = ~std::uint64_t{0};
}

IntervalLattice::IntervalLattice(std::vector<std::int64_t> points)
    : Lattice(1), points_(std::move(points)) {
  if (points_.empty()) throw ConstructionError("interval lattice needs at least one point");
  std::sort(points_.begin(), points_.end());
  if (std::adjacent_find(points_.begin(), points_.end()) != points_.end()) {
    throw ConstructionError("interval lattice points must be distinct");
  }
}

IntervalLattice::Iv IntervalLattice::decode(const NodeRef& n) const {
  check_node(n);
  std::uint64_t w = n.words[0];
  if (w == kEmptyWord) return Iv{true, 0, 0};
  return Iv{false, static_cast<std::size_t>(w >> 32),
            static_cast<std::size_t>(w & 0xffffffffu)};
}

NodeRef IntervalLattice::encode(const Iv& iv) const {
  if (iv.empty) return mint({kEmptyWord});
  return mint({(static_cast<std::uint64_t>(iv.lo) << 32) | iv.hi});
}

NodeRef IntervalLattice::encode(std::size_t lo, std::size_t hi) const {
  if (lo > hi + 1) return mint({kEmptyWord});
  return encode(Iv{false, lo, hi});
}

NodeRef IntervalLattice::empty_interval() const { return mint({kEmptyWord}); }

NodeRef IntervalLattice::make(std::optional<std::int64_t> lo,
                              std::optional<std::int64_t> hi) const {
  const std::size_t k = points_.size();
  std::size_t li = 0;
  std::size_t hiIdx = k;
  if (lo) {
    auto it = std::find(points_.begin(), points_.end(), *lo);
    if (it == points_.end()) throw ContractViolation("lower bound is not a declared point");
    li = static_cast<std::size_t>(it - points_.begin()) + 1;
  }
  if (hi) {
    auto it = std::find(points_.begin(), points_.end(), *hi);
    if (it == points_.end()) throw ContractViolation("upper bound is not a declared point");
    hiIdx = static_cast<std::size_t>(it - points_.begin());
  }
  if (lo && hi && *lo > *hi) throw ContractViolation("interval bounds are crossed");
  return encode(li, hiIdx);
}

IntervalValue IntervalLattice::value_of(const NodeRef& n) const {
  Iv iv = decode(n);
  if (iv.empty) return IntervalValue::make_empty();
  const std::size_t k = points_.size();
  return IntervalValue::range(iv.lo == 0, iv.lo == 0 ? 0 : points_[iv.lo - 1],
                              iv.hi == k, iv.hi == k ? 0 : points_[iv.hi]);
}

NodeRef IntervalLattice::bottom() const { return encode(0, points_.size()); }

NodeRef IntervalLattice::top() const { return empty_interval(); }

bool IntervalLattice::order(const NodeRef& a, const NodeRef& b) const {
  Iv x = decode(a);
  Iv y = decode(b);
  if (y.empty) return true;
  if (x.empty) return false;
  return x.lo <= y.lo && y.hi <= x.hi;
}

NodeRef IntervalLattice::join(const NodeRef& a, const NodeRef& b) const {
  Iv x = decode(a);
  Iv y = decode(b);
  if (x.empty || y.empty) return empty_interval();
  return encode(std::max(x.lo, y.lo), std::min(x.hi, y.hi));
}

NodeRef IntervalLattice::meet(const NodeRef& a, const NodeRef& b) const {
  Iv x = decode(a);
  Iv y = decode(b);
  if (x.empty) return b;
  if (y.empty) return a;
  return encode(std::min(x.lo, y.lo), std::max(x.hi, y.hi));
}

std::vector<NodeRef> IntervalLattice::successors(const NodeRef& a) const {
  Iv x = decode(a);
  if (x.empty) return {};
  const std::size_t k = points_.size();
  std::vector<NodeRef> out;
  if (x.lo < k && x.lo + 1 <= x.hi + 1) out.push_back(encode(x.lo + 1, x.hi));
  if (x.hi > 0 && x.lo <= x.hi) out.push_back(encode(x.lo, x.hi - 1));
  if (out.empty()) out.push_back(empty_interval());
  return out;
}

std::vector<NodeRef> IntervalLattice::predecessors(const NodeRef& a) const {
  Iv x = decode(a);
  const std::size_t k = points_.size();
  std::vector<NodeRef> out;
  if (x.empty) {
    for (std::size_t i = 0; i < k; ++i) out.push_back(encode(i + 1, i));
    return out;
  }
  if (x.lo > 0) out.push_back(encode(x.lo - 1, x.hi));
  if (x.hi < k) out.push_back(encode(x.lo, x.hi + 1));
  return out;
}

Label IntervalLattice::label(const NodeRef& a) const {
  return Label::interval(value_of(a));
}

Score IntervalLattice::default_score(const NodeRef& a) const {
  // Number of declared points outside the interval; monotone because walking
  // upward shrinks the interval.
  Iv x = decode(a);
  const std::size_t k = points_.size();
  if (x.empty) return Score::integer(static_cast<long long>(k));
  std::size_t first_in = x.lo == 0 ? 0 : x.lo - 1;
  std::size_t last_in = std::min(x.hi, k - 1);
  std::size_t inside = last_in + 1 > first_in ? last_in + 1 - first_in : 0;
  return Score::integer(static_cast<long long>(k - inside));
}

BigCount IntervalLattice::node_count() const {
  const BigCount k = points_.size();
  // lo = -inf contributes k+1 intervals; lo = points[i-1] contributes
  // k - i + 2 for i in [1, k]; plus the empty interval.
  return (k + 1) + ((k + 1) * (k + 2) / 2 - 1) + 1;
}

std::vector<NodeRef> IntervalLattice::covering_differences(const NodeRef& base,
                                                           const NodeRef& cap) const {
  if (!order(base, cap)) return {base};
  Iv c = decode(cap);
  if (c.empty) return {};  // cap is top
  Iv b = decode(base);     // non-empty here: order(empty, cap) forces cap empty
  const std::size_t k = points_.size();
  std::vector<NodeRef> out;
  if (c.lo < k && c.lo + 1 <= b.hi + 1) out.push_back(encode(c.lo + 1, b.hi));
  if (c.hi > 0 && b.lo <= c.hi) out.push_back(encode(b.lo, c.hi - 1));
  if (out.empty()) out.push_back(empty_interval());
  return out;
}

std::vector<NodeRef> IntervalLattice::co_covering_differences(const NodeRef& base,
                                                              const NodeRef& cap) const {
  if (!order(cap, base)) return {base};
  Iv b = decode(base);
  Iv c = decode(cap);
  const std::size_t k = points_.size();
  if (c.empty) {
    // Everything non-empty escapes; the maximal ones are the single points.
    std::vector<NodeRef> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(encode(i + 1, i));
    return out;
  }
  if (c.lo == 0 && c.hi == k) return {};  // cap is bottom; nothing escapes
  std::vector<NodeRef> out;
  if (c.lo > 0) {
    std::size_t lo = c.lo - 1;
    std::size_t hi = b.empty ? (lo == 0 ? 0 : lo - 1) : b.hi;
    out.push_back(encode(Iv{false, lo, hi}));
  }
  if (c.hi < k) {
    std::size_t hi = c.hi + 1;
    std::size_t lo = b.empty ? std::min(hi + 1, k) : b.lo;
    out.push_back(encode(Iv{false, lo, hi}));
  }
  return out;
}

NodeRef IntervalLattice::random_node(SeededRng& rng) const {
  if (rng.below(8) == 0) return empty_interval();
  const std::size_t k = points_.size();
  return encode(static_cast<std::size_t>(rng.below(k + 1)),
                static_cast<std::size_t>(rng.below(k + 1)));
}

std::shared_ptr<const IntervalLattice> interval_lattice(std::vector<std::int64_t> points) {
  return std::make_shared<const IntervalLattice>(std::move(points));
}

}  // namespace lattopt
