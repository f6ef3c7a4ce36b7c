#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lattopt/chc/ast.hpp"

namespace lattopt::netrepair {

enum class Layer { Host, Tor, Aggregation, Core };

// Physical (undirected) link; equality ignores endpoint order.
struct LinkRef {
  std::string a, b;

  std::string str() const { return a + "-" + b; }
  friend bool operator==(const LinkRef& x, const LinkRef& y) {
    return (x.a == y.a && x.b == y.b) || (x.a == y.b && x.b == y.a);
  }
};

// Per-directed-link packet filter installed in the base configuration, e.g.
// C1 dropping type-0 packets towards A4.
struct StaticFilter {
  std::string from, to;
  std::vector<chc::Value> drop_dst;
  std::vector<chc::Value> drop_typ;
};

// One reachability condition: a packet matching the given fields arriving at
// `node` (a host, or a switch in any phase).
struct PolicyAtom {
  std::string node;
  std::optional<chc::Value> dst;
  std::optional<chc::Value> typ;
  std::optional<chc::Value> port_lo, port_hi;
};

// Violated when all atoms are reachable simultaneously.
struct PolicyEntry {
  std::vector<PolicyAtom> all_of;
};

// Port-interval repair space: the packet space gains a port field over
// [port_lo, port_hi], the lattice is the interval lattice over `points`, and
// `policy` replaces the base policy.
struct PortRepair {
  LinkRef link;
  std::vector<chc::Value> points;
  chc::Value port_lo = 0, port_hi = 0;
  std::vector<PolicyEntry> policy;
};

struct RepairSpace {
  std::vector<LinkRef> disable_candidates;
  std::optional<LinkRef> filter_link;
  std::optional<PortRepair> ports;
};

// Fat-tree style scenario. Host k (0-based) has destination id k+1 and hangs
// off host_links[k]. Ingress convention: host 1 emits exactly type-0 packets
// to every other destination; the remaining hosts emit non-zero types to
// every other destination.
struct Scenario {
  std::vector<std::string> hosts, tors, aggregations, cores;
  std::vector<std::pair<std::string, std::string>> host_links;  // host, tor
  std::vector<LinkRef> links;                                   // switch-switch
  std::vector<LinkRef> disabled_links;
  std::vector<StaticFilter> static_filters;
  chc::Value typ_lo = 0, typ_hi = 0;
  std::vector<PolicyEntry> policy;
  RepairSpace repair;

  Layer layer_of(const std::string& node) const;  // ConstructionError if undeclared
  bool is_host(const std::string& node) const;
  chc::Value host_id(const std::string& host) const;
  const std::string& tor_of(const std::string& host) const;
  chc::Value dst_lo() const { return 1; }
  chc::Value dst_hi() const { return static_cast<chc::Value>(hosts.size()); }
  bool link_enabled(const LinkRef& l) const;

  void validate() const;
};

// Parses and validates a scenario object; ValidationError on schema
// violations (unknown fields are rejected).
Scenario scenario_from_json(const nlohmann::json& j);

}  // namespace lattopt::netrepair
