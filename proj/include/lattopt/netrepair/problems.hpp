#pragma once

#include <memory>
#include <vector>

#include "lattopt/chc/adapters.hpp"
#include "lattopt/interval.hpp"
#include "lattopt/netrepair/encode.hpp"
#include "lattopt/netrepair/model.hpp"
#include "lattopt/powerset.hpp"
#include "lattopt/product.hpp"

namespace lattopt::netrepair {

// Powerset over per-link enable flags; maximal feasible nodes are the
// maximal safe link sets, their complements the minimal disable sets. Score
// counts enabled links.
struct LinkDisableProblem {
  OptLattice lattice;
  std::shared_ptr<chc::ClauseOracle> oracle;
  std::shared_ptr<const PowersetLattice> carrier;
  std::vector<LinkRef> flag_order;

  std::vector<LinkRef> enabled(const NodeRef& n) const;
  std::vector<LinkRef> disabled(const NodeRef& n) const;
};

LinkDisableProblem link_disable_problem(const Scenario& sc, chc::OracleConfig config = {});

// Product of kept-destination and kept-type subsets on the repair link,
// labeled with dstFilter/typFilter substitutions; score is the total number
// of unfiltered destinations and types.
struct FilterProblem {
  OptLattice lattice;
  std::shared_ptr<chc::ClauseOracle> oracle;
  std::shared_ptr<const ProductLattice> carrier;
  std::shared_ptr<const PowersetLattice> dst_carrier;
  std::shared_ptr<const PowersetLattice> typ_carrier;

  std::vector<chc::Value> kept_destinations(const NodeRef& n) const;
  std::vector<chc::Value> kept_types(const NodeRef& n) const;
};

FilterProblem filter_problem(const Scenario& sc, chc::OracleConfig config = {});

// Interval lattice over the declared port points; the label [l, u] is the
// blocked range (the empty interval blocks nothing) and the score counts
// unblocked port values.
struct PortIntervalProblem {
  OptLattice lattice;
  std::shared_ptr<chc::ClauseOracle> oracle;
  std::shared_ptr<const IntervalLattice> carrier;
  chc::Value port_lo = 0, port_hi = 0;

  IntervalValue blocked(const NodeRef& n) const;
  std::vector<chc::Value> unblocked_ports(const NodeRef& n) const;
};

PortIntervalProblem port_interval_problem(const Scenario& sc, chc::OracleConfig config = {});

}  // namespace lattopt::netrepair
