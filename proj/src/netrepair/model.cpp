#include "lattopt/netrepair/model.hpp"

#include <algorithm>
#include <set>

#include "lattopt/errors.hpp"

namespace lattopt::netrepair {

namespace {

using nlohmann::json;

void expect_keys(const json& j, const char* where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ValidationError(std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }) == allowed.end()) {
      throw ValidationError(std::string("unknown field '") + key + "' in " + where);
    }
  }
}

std::vector<std::string> string_list(const json& j, const char* where) {
  if (!j.is_array()) throw ValidationError(std::string(where) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ValidationError(std::string(where) + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

LinkRef link_from_json(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
    throw ValidationError(std::string(where) + " links must be [from, to] string pairs");
  }
  return LinkRef{j[0].get<std::string>(), j[1].get<std::string>()};
}

std::vector<chc::Value> value_list(const json& j, const char* where) {
  if (!j.is_array()) throw ValidationError(std::string(where) + " must be an array");
  std::vector<chc::Value> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) {
      throw ValidationError(std::string(where) + " entries must be integers");
    }
    out.push_back(e.get<chc::Value>());
  }
  return out;
}

PolicyAtom atom_from_json(const json& j) {
  expect_keys(j, "policy atom", {"node", "dst", "typ", "port_lo", "port_hi"});
  if (!j.contains("node")) throw ValidationError("policy atom needs a node");
  PolicyAtom a;
  a.node = j.at("node").get<std::string>();
  if (j.contains("dst")) a.dst = j.at("dst").get<chc::Value>();
  if (j.contains("typ")) a.typ = j.at("typ").get<chc::Value>();
  if (j.contains("port_lo")) a.port_lo = j.at("port_lo").get<chc::Value>();
  if (j.contains("port_hi")) a.port_hi = j.at("port_hi").get<chc::Value>();
  return a;
}

std::vector<PolicyEntry> policy_from_json(const json& j, const char* where) {
  if (!j.is_array()) throw ValidationError(std::string(where) + " must be an array");
  std::vector<PolicyEntry> out;
  for (const auto& e : j) {
    PolicyEntry entry;
    if (e.is_object() && e.contains("all_of")) {
      expect_keys(e, "policy entry", {"all_of"});
      for (const auto& a : e.at("all_of")) entry.all_of.push_back(atom_from_json(a));
    } else {
      entry.all_of.push_back(atom_from_json(e));
    }
    if (entry.all_of.empty()) throw ValidationError("policy entry has no atoms");
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace

Layer Scenario::layer_of(const std::string& node) const {
  auto in = [&](const std::vector<std::string>& v) {
    return std::find(v.begin(), v.end(), node) != v.end();
  };
  if (in(hosts)) return Layer::Host;
  if (in(tors)) return Layer::Tor;
  if (in(aggregations)) return Layer::Aggregation;
  if (in(cores)) return Layer::Core;
  throw ConstructionError("undeclared node: " + node);
}

bool Scenario::is_host(const std::string& node) const {
  return std::find(hosts.begin(), hosts.end(), node) != hosts.end();
}

chc::Value Scenario::host_id(const std::string& host) const {
  auto it = std::find(hosts.begin(), hosts.end(), host);
  if (it == hosts.end()) throw ConstructionError("undeclared host: " + host);
  return static_cast<chc::Value>(it - hosts.begin()) + 1;
}

const std::string& Scenario::tor_of(const std::string& host) const {
  for (const auto& [h, t] : host_links) {
    if (h == host) return t;
  }
  throw ConstructionError("host has no ToR link: " + host);
}

bool Scenario::link_enabled(const LinkRef& l) const {
  return std::find(disabled_links.begin(), disabled_links.end(), l) == disabled_links.end();
}

void Scenario::validate() const {
  std::set<std::string> names;
  for (const auto& group : {hosts, tors, aggregations, cores}) {
    for (const auto& n : group) {
      if (!names.insert(n).second) throw ConstructionError("duplicate node: " + n);
    }
  }
  if (hosts.empty()) throw ConstructionError("scenario needs at least one host");
  if (typ_lo > typ_hi) throw ConstructionError("empty packet-type domain");
  if (host_links.size() != hosts.size()) {
    throw ConstructionError("every host needs exactly one host link");
  }
  for (const auto& [h, t] : host_links) {
    if (layer_of(h) != Layer::Host || layer_of(t) != Layer::Tor) {
      throw ConstructionError("host links must connect a host to a ToR switch");
    }
  }
  for (const LinkRef& l : links) {
    Layer la = layer_of(l.a);
    Layer lb = layer_of(l.b);
    bool tor_agg = (la == Layer::Tor && lb == Layer::Aggregation) ||
                   (la == Layer::Aggregation && lb == Layer::Tor);
    bool agg_core = (la == Layer::Aggregation && lb == Layer::Core) ||
                    (la == Layer::Core && lb == Layer::Aggregation);
    if (!tor_agg && !agg_core) {
      throw ConstructionError("switch links must connect ToR-aggregation or aggregation-core: " +
                              l.str());
    }
  }
  auto known_link = [&](const LinkRef& l) {
    return std::find(links.begin(), links.end(), l) != links.end();
  };
  for (const LinkRef& l : disabled_links) {
    if (!known_link(l)) throw ConstructionError("disabled link is not declared: " + l.str());
  }
  for (const StaticFilter& f : static_filters) {
    if (!known_link(LinkRef{f.from, f.to})) {
      throw ConstructionError("static filter on undeclared link: " + f.from + "-" + f.to);
    }
  }
  auto check_policy = [&](const std::vector<PolicyEntry>& entries) {
    for (const PolicyEntry& e : entries) {
      for (const PolicyAtom& a : e.all_of) {
        layer_of(a.node);  // throws on undeclared nodes
        if (a.typ && (*a.typ < typ_lo || *a.typ > typ_hi)) {
          throw ConstructionError("policy type outside the packet space");
        }
        if (a.dst && (*a.dst < dst_lo() || *a.dst > dst_hi())) {
          throw ConstructionError("policy destination outside the packet space");
        }
      }
    }
  };
  check_policy(policy);
  for (const LinkRef& l : repair.disable_candidates) {
    if (!known_link(l)) throw ConstructionError("repair link is not declared: " + l.str());
    if (!link_enabled(l)) throw ConstructionError("repair link is disabled: " + l.str());
  }
  if (repair.filter_link && !known_link(*repair.filter_link)) {
    throw ConstructionError("filter link is not declared: " + repair.filter_link->str());
  }
  if (repair.ports) {
    const PortRepair& pr = *repair.ports;
    if (!known_link(pr.link)) throw ConstructionError("port link is not declared: " + pr.link.str());
    if (pr.points.empty()) throw ConstructionError("port repair needs lattice points");
    if (pr.port_lo > pr.port_hi) throw ConstructionError("empty port domain");
    check_policy(pr.policy);
    if (pr.policy.empty()) throw ConstructionError("port repair needs a policy");
  }
}

Scenario scenario_from_json(const json& j) {
  expect_keys(j, "scenario",
              {"hosts", "tors", "aggregations", "cores", "host_links", "links",
               "disabled_links", "static_filters", "types", "policy", "repair"});
  Scenario sc;
  sc.hosts = string_list(j.at("hosts"), "hosts");
  sc.tors = string_list(j.at("tors"), "tors");
  sc.aggregations = string_list(j.at("aggregations"), "aggregations");
  sc.cores = string_list(j.at("cores"), "cores");
  for (const auto& e : j.at("host_links")) {
    LinkRef l = link_from_json(e, "host_links");
    sc.host_links.emplace_back(l.a, l.b);
  }
  for (const auto& e : j.at("links")) sc.links.push_back(link_from_json(e, "links"));
  if (j.contains("disabled_links")) {
    for (const auto& e : j.at("disabled_links")) {
      sc.disabled_links.push_back(link_from_json(e, "disabled_links"));
    }
  }
  if (j.contains("static_filters")) {
    for (const auto& e : j.at("static_filters")) {
      expect_keys(e, "static filter", {"from", "to", "drop_dst", "drop_typ"});
      StaticFilter f;
      f.from = e.at("from").get<std::string>();
      f.to = e.at("to").get<std::string>();
      if (e.contains("drop_dst")) f.drop_dst = value_list(e.at("drop_dst"), "drop_dst");
      if (e.contains("drop_typ")) f.drop_typ = value_list(e.at("drop_typ"), "drop_typ");
      sc.static_filters.push_back(std::move(f));
    }
  }
  {
    const auto& t = j.at("types");
    expect_keys(t, "types", {"lo", "hi"});
    sc.typ_lo = t.at("lo").get<chc::Value>();
    sc.typ_hi = t.at("hi").get<chc::Value>();
  }
  sc.policy = policy_from_json(j.at("policy"), "policy");
  {
    const auto& r = j.at("repair");
    expect_keys(r, "repair", {"links", "filter_link", "ports"});
    if (r.contains("links")) {
      for (const auto& e : r.at("links")) {
        sc.repair.disable_candidates.push_back(link_from_json(e, "repair links"));
      }
    }
    if (r.contains("filter_link")) {
      sc.repair.filter_link = link_from_json(r.at("filter_link"), "filter_link");
    }
    if (r.contains("ports")) {
      const auto& p = r.at("ports");
      expect_keys(p, "ports", {"link", "points", "port_lo", "port_hi", "policy"});
      PortRepair pr;
      pr.link = link_from_json(p.at("link"), "port link");
      pr.points = value_list(p.at("points"), "port points");
      pr.port_lo = p.at("port_lo").get<chc::Value>();
      pr.port_hi = p.at("port_hi").get<chc::Value>();
      pr.policy = policy_from_json(p.at("policy"), "port policy");
      sc.repair.ports = std::move(pr);
    }
  }
  try {
    sc.validate();
  } catch (const ConstructionError& e) {
    throw ValidationError(e.what());
  }
  return sc;
}

}  // namespace lattopt::netrepair
