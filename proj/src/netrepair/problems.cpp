#include "lattopt/netrepair/problems.hpp"

#include <algorithm>

#include "lattopt/errors.hpp"

namespace lattopt::netrepair {

namespace {

using chc::Constraint;
using chc::Substitution;
using chc::Term;
using chc::Value;

// Keep-set substitution: the filter parameter passes exactly the kept
// values, as the disjunction of v(0) = t over the set.
Constraint keep_set_constraint(const std::vector<std::int64_t>& kept) {
  std::vector<Constraint> parts;
  parts.reserve(kept.size());
  for (std::int64_t v : kept) {
    parts.push_back(Constraint::eq(Term::arg(0), Term::lit(static_cast<Value>(v))));
  }
  return Constraint::disj(std::move(parts));
}

// Blocked-interval substitution: the filter passes ports outside [l, u]; the
// empty interval blocks nothing.
Constraint blocked_interval_constraint(const IntervalValue& iv) {
  if (iv.empty) return Constraint::truth(true);
  std::vector<Constraint> parts;
  if (!iv.lo_unbounded) parts.push_back(Constraint::lt(Term::arg(0), Term::lit(iv.lo)));
  if (!iv.hi_unbounded) parts.push_back(Constraint::gt(Term::arg(0), Term::lit(iv.hi)));
  return Constraint::disj(std::move(parts));
}

}  // namespace

std::vector<LinkRef> LinkDisableProblem::enabled(const NodeRef& n) const {
  std::vector<LinkRef> out;
  for (std::size_t i : carrier->indices_of(n)) out.push_back(flag_order[i]);
  return out;
}

std::vector<LinkRef> LinkDisableProblem::disabled(const NodeRef& n) const {
  std::vector<LinkRef> out;
  auto idx = carrier->indices_of(n);
  for (std::size_t i = 0; i < flag_order.size(); ++i) {
    if (std::find(idx.begin(), idx.end(), i) == idx.end()) out.push_back(flag_order[i]);
  }
  return out;
}

LinkDisableProblem link_disable_problem(const Scenario& sc, chc::OracleConfig config) {
  Encoded enc = encode_network(sc, RepairMode::Links);

  LinkDisableProblem p;
  p.flag_order = enc.flagged_links;
  p.oracle = std::make_shared<chc::ClauseOracle>(std::move(enc.clauses), std::move(config));

  std::vector<std::int64_t> elements;
  for (std::size_t i = 0; i < p.flag_order.size(); ++i) {
    elements.push_back(static_cast<std::int64_t>(i));
  }
  p.carrier = powerset(elements);

  const auto flag_params = enc.flag_params;
  // Default powerset score already counts enabled links.
  OptLattice base = OptLattice::over(p.carrier).map([flag_params](const Label& l) {
    Substitution m;
    const auto& enabled = l.as_set();
    for (std::size_t i = 0; i < flag_params.size(); ++i) {
      bool on = std::binary_search(enabled.begin(), enabled.end(),
                                   static_cast<std::int64_t>(i));
      m[flag_params[i]] = Constraint::truth(on);
    }
    return Label::opaque(std::move(m));
  });
  p.lattice = clause_sat_lattice(base, p.oracle);
  return p;
}

std::vector<chc::Value> FilterProblem::kept_destinations(const NodeRef& n) const {
  auto [d, t] = carrier->split(n);
  (void)t;
  Label label = dst_carrier->label(d);
  std::vector<chc::Value> out;
  for (std::int64_t v : label.as_set()) out.push_back(v);
  return out;
}

std::vector<chc::Value> FilterProblem::kept_types(const NodeRef& n) const {
  auto [d, t] = carrier->split(n);
  (void)d;
  Label label = typ_carrier->label(t);
  std::vector<chc::Value> out;
  for (std::int64_t v : label.as_set()) out.push_back(v);
  return out;
}

FilterProblem filter_problem(const Scenario& sc, chc::OracleConfig config) {
  Encoded enc = encode_network(sc, RepairMode::Filters);

  FilterProblem p;
  p.oracle = std::make_shared<chc::ClauseOracle>(std::move(enc.clauses), std::move(config));

  std::vector<std::int64_t> dsts;
  for (Value v = sc.dst_lo(); v <= sc.dst_hi(); ++v) dsts.push_back(v);
  std::vector<std::int64_t> typs;
  for (Value v = sc.typ_lo; v <= sc.typ_hi; ++v) typs.push_back(v);
  p.dst_carrier = powerset(dsts);
  p.typ_carrier = powerset(typs);

  // Default powerset scores are the kept-set cardinalities; the pair is
  // reduced to their sum after the product.
  OptLattice dst_latt = OptLattice::over(p.dst_carrier);
  OptLattice typ_latt = OptLattice::over(p.typ_carrier);
  OptLattice prod = product(dst_latt, typ_latt);
  p.carrier = std::dynamic_pointer_cast<const ProductLattice>(prod.carrier_ptr());

  OptLattice labeled = prod.map([](const Label& l) {
    Substitution m;
    m["dstFilter"] = keep_set_constraint(l.first().as_set());
    m["typFilter"] = keep_set_constraint(l.second().as_set());
    return Label::opaque(std::move(m));
  });
  OptLattice scored =
      labeled.map_score([](const Score& s) { return s.first() + s.second(); });
  p.lattice = clause_sat_lattice(scored, p.oracle);
  return p;
}

IntervalValue PortIntervalProblem::blocked(const NodeRef& n) const {
  return carrier->value_of(n);
}

std::vector<chc::Value> PortIntervalProblem::unblocked_ports(const NodeRef& n) const {
  IntervalValue iv = carrier->value_of(n);
  std::vector<chc::Value> out;
  for (Value v = port_lo; v <= port_hi; ++v) {
    if (!iv.contains(v)) out.push_back(v);
  }
  return out;
}

PortIntervalProblem port_interval_problem(const Scenario& sc, chc::OracleConfig config) {
  Encoded enc = encode_network(sc, RepairMode::Ports);
  const PortRepair& pr = *sc.repair.ports;

  PortIntervalProblem p;
  p.port_lo = pr.port_lo;
  p.port_hi = pr.port_hi;
  p.oracle = std::make_shared<chc::ClauseOracle>(std::move(enc.clauses), std::move(config));

  std::vector<std::int64_t> points(pr.points.begin(), pr.points.end());
  p.carrier = interval_lattice(points);

  const Value lo = pr.port_lo;
  const Value hi = pr.port_hi;
  OptLattice base =
      OptLattice::over(p.carrier)
          .with_score([lo, hi](const Label& l) {
            const IntervalValue& iv = l.as_interval();
            long long unblocked = 0;
            for (Value v = lo; v <= hi; ++v) {
              if (!iv.contains(v)) unblocked++;
            }
            return Score::integer(unblocked);
          })
          .map([](const Label& l) {
            Substitution m;
            m["portFilter"] = blocked_interval_constraint(l.as_interval());
            return Label::opaque(std::move(m));
          });
  p.lattice = clause_sat_lattice(base, p.oracle);
  return p;
}

}  // namespace lattopt::netrepair
