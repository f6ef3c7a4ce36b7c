#include "lattopt/netrepair/encode.hpp"

#include <algorithm>

#include "lattopt/errors.hpp"

namespace lattopt::netrepair {

namespace {

using chc::Atom;
using chc::Clause;
using chc::ClauseVar;
using chc::Constraint;
using chc::Relation;
using chc::RelationKind;
using chc::Term;
using chc::Value;

constexpr const char* kDstSort = "Dst";
constexpr const char* kTypSort = "Typ";
constexpr const char* kPrtSort = "Prt";

struct Builder {
  const Scenario& sc;
  RepairMode mode;
  bool with_ports;
  Encoded out;

  std::vector<ClauseVar> packet_vars(const std::string& suffix = "") const {
    std::vector<ClauseVar> vars{{"d" + suffix, kDstSort}, {"t" + suffix, kTypSort}};
    if (with_ports) vars.push_back({"p" + suffix, kPrtSort});
    return vars;
  }

  std::vector<Term> packet_args(const std::string& suffix = "") const {
    std::vector<Term> args{Term::var("d" + suffix), Term::var("t" + suffix)};
    if (with_ports) args.push_back(Term::var("p" + suffix));
    return args;
  }

  void declare_relations() {
    auto packet_sorts = [&] {
      std::vector<std::string> s{kDstSort, kTypSort};
      if (with_ports) s.push_back(kPrtSort);
      return s;
    }();
    for (const std::string& t : sc.tors) {
      out.clauses.relations.push_back({up_relation(t), packet_sorts, RelationKind::Symbol});
      out.clauses.relations.push_back({down_relation(t), packet_sorts, RelationKind::Symbol});
    }
    for (const std::string& a : sc.aggregations) {
      out.clauses.relations.push_back({up_relation(a), packet_sorts, RelationKind::Symbol});
      out.clauses.relations.push_back({down_relation(a), packet_sorts, RelationKind::Symbol});
    }
    for (const std::string& c : sc.cores) {
      out.clauses.relations.push_back({core_relation(c), packet_sorts, RelationKind::Symbol});
    }
  }

  Constraint static_filter_guard(const std::string& from, const std::string& to) const {
    std::vector<Constraint> parts;
    for (const StaticFilter& f : sc.static_filters) {
      if (f.from != from || f.to != to) continue;
      for (Value v : f.drop_dst) parts.push_back(Constraint::ne(Term::var("d"), Term::lit(v)));
      for (Value v : f.drop_typ) parts.push_back(Constraint::ne(Term::var("t"), Term::lit(v)));
    }
    return Constraint::conj(std::move(parts));
  }

  // Extra parameter atoms on the directed hop from -> to.
  std::vector<Atom> repair_atoms(const std::string& from, const std::string& to,
                                 bool downward) const {
    std::vector<Atom> atoms;
    if (mode == RepairMode::Links) {
      LinkRef hop{from, to};
      for (std::size_t i = 0; i < out.flagged_links.size(); ++i) {
        if (out.flagged_links[i] == hop) {
          atoms.push_back(Atom{out.flag_params[i], {}});
        }
      }
    } else if (mode == RepairMode::Filters && downward) {
      if (sc.repair.filter_link && LinkRef{from, to} == *sc.repair.filter_link) {
        atoms.push_back(Atom{"dstFilter", {Term::var("d")}});
        atoms.push_back(Atom{"typFilter", {Term::var("t")}});
      }
    } else if (mode == RepairMode::Ports && downward) {
      if (sc.repair.ports && LinkRef{from, to} == sc.repair.ports->link) {
        atoms.push_back(Atom{"portFilter", {Term::var("p")}});
      }
    }
    return atoms;
  }

  void forwarding_clause(const std::string& name, const std::string& head_rel,
                         const std::string& body_rel, const std::string& from,
                         const std::string& to, bool downward) {
    Clause c;
    c.name = name;
    c.vars = packet_vars();
    c.head = Atom{head_rel, packet_args()};
    c.body.push_back(Atom{body_rel, packet_args()});
    for (Atom& a : repair_atoms(from, to, downward)) c.body.push_back(std::move(a));
    c.guard = static_filter_guard(from, to);
    out.clauses.clauses.push_back(std::move(c));
    out.network_clauses++;
  }

  void ingress() {
    for (std::size_t k = 0; k < sc.hosts.size(); ++k) {
      const std::string& host = sc.hosts[k];
      const Value id = static_cast<Value>(k) + 1;
      Clause c;
      c.name = "ingress_" + host;
      c.vars = packet_vars();
      c.head = Atom{up_relation(sc.tor_of(host)), packet_args()};
      std::vector<Constraint> guard;
      guard.push_back(Constraint::ne(Term::var("d"), Term::lit(id)));
      if (id == 1) {
        guard.push_back(Constraint::eq(Term::var("t"), Term::lit(0)));
      } else {
        guard.push_back(Constraint::ne(Term::var("t"), Term::lit(0)));
      }
      c.guard = Constraint::conj(std::move(guard));
      out.clauses.clauses.push_back(std::move(c));
      out.ingress_clauses++;
    }
  }

  void forwarding() {
    for (const LinkRef& l : sc.links) {
      if (!sc.link_enabled(l)) continue;
      Layer la = sc.layer_of(l.a);
      const std::string& tor = la == Layer::Tor ? l.a : l.b;
      const std::string& other = la == Layer::Tor ? l.b : l.a;
      if (sc.layer_of(other) == Layer::Aggregation &&
          (la == Layer::Tor || sc.layer_of(l.b) == Layer::Tor)) {
        const std::string& agg = other;
        forwarding_clause("up_" + tor + "_" + agg, up_relation(agg), up_relation(tor), tor, agg,
                          false);
        forwarding_clause("down_" + agg + "_" + tor, down_relation(tor), down_relation(agg),
                          agg, tor, true);
        forwarding_clause("turn_" + agg + "_" + tor, down_relation(tor), up_relation(agg), agg,
                          tor, true);
      } else {
        const std::string& agg = sc.layer_of(l.a) == Layer::Aggregation ? l.a : l.b;
        const std::string& core = sc.layer_of(l.a) == Layer::Core ? l.a : l.b;
        forwarding_clause("up_" + agg + "_" + core, core_relation(core), up_relation(agg), agg,
                          core, false);
        forwarding_clause("down_" + core + "_" + agg, down_relation(agg), core_relation(core),
                          core, agg, true);
      }
    }
  }

  // Relations at which a packet counts as having reached the node.
  std::vector<std::string> reach_relations(const std::string& node) const {
    switch (sc.layer_of(node)) {
      case Layer::Host:
        return {down_relation(sc.tor_of(node))};
      case Layer::Tor:
      case Layer::Aggregation:
        return {up_relation(node), down_relation(node)};
      case Layer::Core:
        return {core_relation(node)};
    }
    return {};
  }

  void properties(const std::vector<PolicyEntry>& policy) {
    for (std::size_t ei = 0; ei < policy.size(); ++ei) {
      const PolicyEntry& entry = policy[ei];
      // One clause per choice of reach relation for every atom.
      std::vector<std::vector<std::string>> choices;
      for (const PolicyAtom& a : entry.all_of) choices.push_back(reach_relations(a.node));
      std::vector<std::size_t> pick(entry.all_of.size(), 0);
      std::size_t variant = 0;
      for (;;) {
        Clause c;
        c.name = "property_" + std::to_string(ei) + "_" + std::to_string(variant++);
        std::vector<Constraint> guard;
        for (std::size_t ai = 0; ai < entry.all_of.size(); ++ai) {
          const PolicyAtom& a = entry.all_of[ai];
          const std::string suffix = std::to_string(ai);
          for (const ClauseVar& v : packet_vars(suffix)) c.vars.push_back(v);
          c.body.push_back(Atom{choices[ai][pick[ai]], packet_args(suffix)});
          if (sc.is_host(a.node)) {
            guard.push_back(
                Constraint::eq(Term::var("d" + suffix), Term::lit(sc.host_id(a.node))));
          }
          if (a.dst) guard.push_back(Constraint::eq(Term::var("d" + suffix), Term::lit(*a.dst)));
          if (a.typ) guard.push_back(Constraint::eq(Term::var("t" + suffix), Term::lit(*a.typ)));
          if (a.port_lo) {
            guard.push_back(Constraint::ge(Term::var("p" + suffix), Term::lit(*a.port_lo)));
          }
          if (a.port_hi) {
            guard.push_back(Constraint::le(Term::var("p" + suffix), Term::lit(*a.port_hi)));
          }
        }
        c.guard = Constraint::conj(std::move(guard));
        c.head = std::nullopt;
        out.clauses.clauses.push_back(std::move(c));
        out.property_clauses++;
        // advance the choice odometer
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == choices[i].size()) {
          pick[i] = 0;
          ++i;
        }
        if (i == pick.size()) break;
      }
    }
  }
};

}  // namespace

std::string up_relation(const std::string& node) { return node + "u"; }
std::string down_relation(const std::string& node) { return node + "d"; }
std::string core_relation(const std::string& node) { return node; }

Encoded encode_network(const Scenario& sc, RepairMode mode) {
  sc.validate();
  const bool with_ports = mode == RepairMode::Ports;
  if (mode == RepairMode::Filters && !sc.repair.filter_link) {
    throw ConstructionError("scenario declares no filter link");
  }
  if (mode == RepairMode::Ports && !sc.repair.ports) {
    throw ConstructionError("scenario declares no port repair space");
  }

  Builder b{sc, mode, with_ports, {}};
  b.out.clauses.sorts.push_back({kDstSort, sc.dst_lo(), sc.dst_hi()});
  b.out.clauses.sorts.push_back({kTypSort, sc.typ_lo, sc.typ_hi});
  if (with_ports) {
    b.out.clauses.sorts.push_back({kPrtSort, sc.repair.ports->port_lo, sc.repair.ports->port_hi});
  }
  b.declare_relations();

  if (mode == RepairMode::Links) {
    if (sc.repair.disable_candidates.empty()) {
      throw ConstructionError("scenario declares no repairable links");
    }
    for (const LinkRef& l : sc.repair.disable_candidates) {
      std::string name = "en_" + l.a + "_" + l.b;
      b.out.clauses.relations.push_back({name, {}, RelationKind::Parameter});
      b.out.flagged_links.push_back(l);
      b.out.flag_params.push_back(std::move(name));
    }
  } else if (mode == RepairMode::Filters) {
    b.out.clauses.relations.push_back({"dstFilter", {kDstSort}, RelationKind::Parameter});
    b.out.clauses.relations.push_back({"typFilter", {kTypSort}, RelationKind::Parameter});
  } else if (mode == RepairMode::Ports) {
    b.out.clauses.relations.push_back({"portFilter", {kPrtSort}, RelationKind::Parameter});
  }

  b.ingress();
  b.forwarding();
  b.properties(with_ports ? sc.repair.ports->policy : sc.policy);

  b.out.clauses.validate();
  return std::move(b.out);
}

}  // namespace lattopt::netrepair
