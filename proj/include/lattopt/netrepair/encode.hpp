#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lattopt/chc/ast.hpp"
#include "lattopt/netrepair/model.hpp"

namespace lattopt::netrepair {

enum class RepairMode { None, Links, Filters, Ports };

struct Encoded {
  chc::ClauseSet clauses;
  // Links mode: flagged physical links in flag order, and the matching
  // parameter names.
  std::vector<LinkRef> flagged_links;
  std::vector<std::string> flag_params;
  std::size_t ingress_clauses = 0;
  std::size_t network_clauses = 0;
  std::size_t property_clauses = 0;
};

// Encodes the scenario as clauses over phase-qualified reachability
// relations: Xu/Xd per ToR and aggregation switch, one relation per core.
// Packets travel upward (ToR -> aggregation -> core) and back downward, with
// an aggregation turn-around for intra-pod traffic; each enabled directed
// link on such a path yields one forwarding clause. Property clauses derive
// False when a policy entry's atoms are all reachable. Repair parameters are
// injected per mode, in clause bodies only.
Encoded encode_network(const Scenario& sc, RepairMode mode);

// Relation naming scheme (exposed for the tests and the reachability
// oracle).
std::string up_relation(const std::string& node);
std::string down_relation(const std::string& node);
std::string core_relation(const std::string& node);

}  // namespace lattopt::netrepair
