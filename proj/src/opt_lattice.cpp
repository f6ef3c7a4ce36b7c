#include "lattopt/opt_lattice.hpp"

#include <utility>

#include "lattopt/errors.hpp"
#include "lattopt/product.hpp"

namespace lattopt {

bool FeasibilityCache::lookup(const NodeRef& n, bool& out) const {
  std::shared_lock lock(mutex_);
  auto it = memo_.find(n);
  if (it == memo_.end()) return false;
  out = it->second;
  hits_.fetch_add(1);
  return true;
}

void FeasibilityCache::store(const NodeRef& n, bool value) {
  std::unique_lock lock(mutex_);
  memo_.emplace(n, value);
}

OptLattice::OptLattice(std::shared_ptr<const Lattice> carrier,
                       std::function<Label(const NodeRef&)> label,
                       std::function<Score(const NodeRef&)> score,
                       std::function<bool(const NodeRef&)> feasible)
    : carrier_(std::move(carrier)),
      label_(std::move(label)),
      score_(std::move(score)),
      feasible_(std::move(feasible)) {}

OptLattice OptLattice::over(std::shared_ptr<const Lattice> carrier) {
  const Lattice* c = carrier.get();
  return OptLattice(
      std::move(carrier), [c](const NodeRef& n) { return c->label(n); },
      [c](const NodeRef& n) { return c->default_score(n); },
      [](const NodeRef&) { return true; });
}

OptLattice OptLattice::with_score(std::function<Score(const Label&)> f) const {
  auto label = label_;
  return OptLattice(carrier_, label_,
                    [label, f = std::move(f)](const NodeRef& n) { return f(label(n)); },
                    feasible_);
}

OptLattice OptLattice::map(std::function<Label(const Label&)> g) const {
  auto label = label_;
  return OptLattice(carrier_,
                    [label, g = std::move(g)](const NodeRef& n) { return g(label(n)); },
                    score_, feasible_);
}

OptLattice OptLattice::filter(std::function<bool(const Label&)> pred) const {
  auto label = label_;
  auto feasible = feasible_;
  return OptLattice(carrier_, label_, score_,
                    [label, feasible, pred = std::move(pred)](const NodeRef& n) {
                      return feasible(n) && pred(label(n));
                    });
}

OptLattice OptLattice::map_score(std::function<Score(const Score&)> f) const {
  auto score = score_;
  return OptLattice(carrier_, label_,
                    [score, f = std::move(f)](const NodeRef& n) { return f(score(n)); },
                    feasible_);
}

OptLattice OptLattice::cached(std::shared_ptr<FeasibilityCache> cache) const {
  auto feasible = feasible_;
  return OptLattice(carrier_, label_, score_,
                    [feasible, cache = std::move(cache)](const NodeRef& n) {
                      cache->count_query();
                      bool value = false;
                      if (cache->lookup(n, value)) return value;
                      cache->count_oracle_call();
                      value = feasible(n);
                      cache->store(n, value);
                      return value;
                    });
}

OptLattice OptLattice::with_node_feasibility(std::function<bool(const NodeRef&)> f) const {
  return OptLattice(carrier_, label_, score_, std::move(f));
}

OptLattice OptLattice::with_node_score(std::function<Score(const NodeRef&)> f) const {
  return OptLattice(carrier_, label_, std::move(f), feasible_);
}

OptLattice flat_map(const OptLattice& outer, const std::function<OptLattice(const Label&)>& h) {
  OptLattice inner0 = h(outer.label(outer.bottom()));
  OptLattice inner1 = h(outer.label(outer.top()));
  if (inner0.carrier().id() != inner1.carrier().id()) {
    throw ConstructionError(
        "flat_map requires a constant inner carrier; the bottom and top labels map to "
        "different lattices");
  }
  auto prod = std::make_shared<const ProductLattice>(outer.carrier_ptr(), inner0.carrier_ptr());
  const ProductLattice* p = prod.get();
  const std::uint32_t inner_id = inner0.carrier().id();

  auto outer_label = outer.label_;
  auto inner_of = [h, outer_label, inner_id](const NodeRef& a) {
    OptLattice inner = h(outer_label(a));
    if (inner.carrier().id() != inner_id) {
      throw ContractViolation("flat_map inner lattice changed its carrier between labels");
    }
    return inner;
  };

  auto label = [p, inner_of](const NodeRef& n) {
    auto [a, b] = p->split(n);
    return inner_of(a).label(b);
  };
  auto outer_score = outer.score_;
  auto score = [p, inner_of, outer_score](const NodeRef& n) {
    auto [a, b] = p->split(n);
    return Score::pair(outer_score(a), inner_of(a).score(b));
  };
  auto outer_feasible = outer.feasible_;
  auto feasible = [p, inner_of, outer_feasible](const NodeRef& n) {
    auto [a, b] = p->split(n);
    return outer_feasible(a) && inner_of(a).feasible(b);
  };
  return OptLattice(std::move(prod), std::move(label), std::move(score), std::move(feasible));
}

OptLattice product(const OptLattice& left, const OptLattice& right) {
  return flat_map(left, [right](const Label& outer_label) {
    return right.map([outer_label](const Label& inner_label) {
      return Label::pair(outer_label, inner_label);
    });
  });
}

namespace {

std::optional<AuditViolation> audit_edges(const OptLattice& l, std::uint64_t seed,
                                          std::size_t samples, std::size_t exhaustive_limit,
                                          bool check_scores) {
  auto violates = [&](const NodeRef& lo, const NodeRef& hi) {
    if (check_scores) return l.score(hi) < l.score(lo);
    return l.feasible(hi) && !l.feasible(lo);
  };
  if (auto nodes = enumerate_nodes(l.carrier(), exhaustive_limit)) {
    // Edge-local checks suffice: both properties propagate along chains.
    for (const NodeRef& n : *nodes) {
      for (const NodeRef& s : l.carrier().successors(n)) {
        if (violates(n, s)) return AuditViolation{n, s};
      }
    }
    return std::nullopt;
  }
  SeededRng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    NodeRef x = l.carrier().random_node(rng);
    NodeRef y = l.carrier().join(x, l.carrier().random_node(rng));
    if (violates(x, y)) return AuditViolation{x, y};
  }
  return std::nullopt;
}

}  // namespace

std::optional<AuditViolation> audit_downward_closure(const OptLattice& l, std::uint64_t seed,
                                                     std::size_t samples,
                                                     std::size_t exhaustive_limit) {
  return audit_edges(l, seed, samples, exhaustive_limit, false);
}

std::optional<AuditViolation> audit_score_monotonicity(const OptLattice& l, std::uint64_t seed,
                                                       std::size_t samples,
                                                       std::size_t exhaustive_limit) {
  return audit_edges(l, seed, samples, exhaustive_limit, true);
}

}  // namespace lattopt
