#pragma once

// Clause-free reachability oracle for the network scenarios: simulates
// packets over the fat-tree phases directly on the graph, mirroring the
// scenario semantics (static filters, repair instantiations, up-then-down
// routing with an aggregation turn-around) without ever building clauses.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "lattopt/netrepair/encode.hpp"
#include "lattopt/netrepair/model.hpp"

namespace lattopt::testing {

struct RepairInstance {
  std::vector<netrepair::LinkRef> disabled;                       // links mode
  std::optional<std::set<chc::Value>> keep_dst, keep_typ;         // filters mode
  std::optional<IntervalValue> blocked_ports;                     // ports mode
};

inline bool oracle_network_safe(const netrepair::Scenario& sc, netrepair::RepairMode mode,
                                const RepairInstance& inst) {
  using chc::Value;
  using netrepair::Layer;
  using netrepair::LinkRef;
  using Packet = std::tuple<Value, Value, Value>;  // dst, typ, port
  std::map<std::string, std::set<Packet>> reach;

  const bool with_ports = mode == netrepair::RepairMode::Ports;
  const Value port_lo = with_ports ? sc.repair.ports->port_lo : 0;
  const Value port_hi = with_ports ? sc.repair.ports->port_hi : 0;

  auto link_off = [&](const std::string& from, const std::string& to) {
    LinkRef hop{from, to};
    if (!sc.link_enabled(hop)) return true;
    if (mode == netrepair::RepairMode::Links) {
      if (std::find(inst.disabled.begin(), inst.disabled.end(), hop) != inst.disabled.end()) {
        return true;
      }
    }
    return false;
  };

  auto passes = [&](const Packet& p, const std::string& from, const std::string& to,
                    bool downward) {
    auto [dst, typ, port] = p;
    for (const netrepair::StaticFilter& f : sc.static_filters) {
      if (f.from != from || f.to != to) continue;
      for (Value v : f.drop_dst) {
        if (dst == v) return false;
      }
      for (Value v : f.drop_typ) {
        if (typ == v) return false;
      }
    }
    if (downward && mode == netrepair::RepairMode::Filters &&
        LinkRef{from, to} == *sc.repair.filter_link) {
      if (!inst.keep_dst->contains(dst) || !inst.keep_typ->contains(typ)) return false;
    }
    if (downward && mode == netrepair::RepairMode::Ports &&
        LinkRef{from, to} == sc.repair.ports->link) {
      if (inst.blocked_ports->contains(port)) return false;
    }
    return true;
  };

  // Ingress: host 1 emits exactly type 0, everyone else non-zero types, all
  // to destinations other than themselves.
  for (std::size_t k = 0; k < sc.hosts.size(); ++k) {
    const Value id = static_cast<Value>(k) + 1;
    auto& tor_up = reach[netrepair::up_relation(sc.tor_of(sc.hosts[k]))];
    for (Value dst = sc.dst_lo(); dst <= sc.dst_hi(); ++dst) {
      if (dst == id) continue;
      for (Value typ = sc.typ_lo; typ <= sc.typ_hi; ++typ) {
        if (id == 1 ? typ != 0 : typ == 0) continue;
        for (Value port = port_lo; port <= port_hi; ++port) {
          tor_up.insert({dst, typ, port});
        }
      }
    }
  }

  auto flow = [&](const std::string& src_rel, const std::string& dst_rel,
                  const std::string& from, const std::string& to, bool downward) {
    bool grew = false;
    for (const Packet& p : reach[src_rel]) {
      if (passes(p, from, to, downward) && reach[dst_rel].insert(p).second) grew = true;
    }
    return grew;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const LinkRef& l : sc.links) {
      Layer la = sc.layer_of(l.a);
      Layer lb = sc.layer_of(l.b);
      if ((la == Layer::Tor && lb == Layer::Aggregation) ||
          (la == Layer::Aggregation && lb == Layer::Tor)) {
        const std::string& tor = la == Layer::Tor ? l.a : l.b;
        const std::string& agg = la == Layer::Tor ? l.b : l.a;
        if (link_off(tor, agg)) continue;
        changed |= flow(netrepair::up_relation(tor), netrepair::up_relation(agg), tor, agg, false);
        changed |= flow(netrepair::down_relation(agg), netrepair::down_relation(tor), agg, tor, true);
        changed |= flow(netrepair::up_relation(agg), netrepair::down_relation(tor), agg, tor, true);
      } else {
        const std::string& agg = la == Layer::Aggregation ? l.a : l.b;
        const std::string& core = la == Layer::Core ? l.a : l.b;
        if (link_off(agg, core)) continue;
        changed |= flow(netrepair::up_relation(agg), netrepair::core_relation(core), agg, core, false);
        changed |= flow(netrepair::core_relation(core), netrepair::down_relation(agg), core, agg, true);
      }
    }
  }

  auto reach_relations = [&](const std::string& node) -> std::vector<std::string> {
    switch (sc.layer_of(node)) {
      case Layer::Host:
        return {netrepair::down_relation(sc.tor_of(node))};
      case Layer::Tor:
      case Layer::Aggregation:
        return {netrepair::up_relation(node), netrepair::down_relation(node)};
      case Layer::Core:
        return {netrepair::core_relation(node)};
    }
    return {};
  };

  const auto& policy = with_ports ? sc.repair.ports->policy : sc.policy;
  for (const netrepair::PolicyEntry& entry : policy) {
    bool all_reachable = true;
    for (const netrepair::PolicyAtom& atom : entry.all_of) {
      bool found = false;
      for (const std::string& rel : reach_relations(atom.node)) {
        for (const Packet& p : reach[rel]) {
          auto [dst, typ, port] = p;
          if (sc.is_host(atom.node) && dst != sc.host_id(atom.node)) continue;
          if (atom.dst && dst != *atom.dst) continue;
          if (atom.typ && typ != *atom.typ) continue;
          if (atom.port_lo && port < *atom.port_lo) continue;
          if (atom.port_hi && port > *atom.port_hi) continue;
          found = true;
          break;
        }
        if (found) break;
      }
      if (!found) {
        all_reachable = false;
        break;
      }
    }
    if (all_reachable) return false;  // violation
  }
  return true;
}

}  // namespace lattopt::testing
