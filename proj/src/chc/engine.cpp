#include "lattopt/chc/engine.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "lattopt/errors.hpp"

namespace lattopt::chc {

namespace {

struct TupleHash {
  std::size_t operator()(const Tuple& t) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Value v : t) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using FactSet = std::unordered_set<Tuple, TupleHash>;

struct FactRecord {
  std::size_t clause_index;
  Env env;
};

struct VarDomain {
  std::string name;
  Value lo, hi;
};

// Enumerates assignments of the clause variables over their sort domains.
class Odometer {
 public:
  explicit Odometer(const std::vector<VarDomain>& domains) : domains_(domains) {
    for (const VarDomain& d : domains_) env_[d.name] = d.lo;
  }

  const Env& env() const { return env_; }

  bool advance() {
    for (std::size_t i = 0; i < domains_.size(); ++i) {
      auto& slot = env_[domains_[i].name];
      if (slot < domains_[i].hi) {
        ++slot;
        for (std::size_t j = 0; j < i; ++j) env_[domains_[j].name] = domains_[j].lo;
        return true;
      }
    }
    return false;
  }

 private:
  const std::vector<VarDomain>& domains_;
  Env env_;
};

struct Prepared {
  const ClauseSet* cs;
  std::vector<std::vector<VarDomain>> clause_domains;
  std::vector<std::vector<std::pair<Value, Value>>> head_ranges;  // per head arg
};

Prepared prepare(const ClauseSet& ground) {
  ground.validate();
  if (ground.has_parameters()) {
    throw ConstructionError("the fixpoint engine needs a ground clause set");
  }
  Prepared p;
  p.cs = &ground;
  for (const Clause& c : ground.clauses) {
    std::vector<VarDomain> doms;
    for (const ClauseVar& v : c.vars) {
      const Sort* s = ground.find_sort(v.sort);
      doms.push_back(VarDomain{v.name, s->lo, s->hi});
    }
    p.clause_domains.push_back(std::move(doms));
    std::vector<std::pair<Value, Value>> ranges;
    if (c.head) {
      const Relation* r = ground.find_relation(c.head->relation);
      for (const std::string& sn : r->arg_sorts) {
        const Sort* s = ground.find_sort(sn);
        ranges.emplace_back(s->lo, s->hi);
      }
    }
    p.head_ranges.push_back(std::move(ranges));
  }
  return p;
}

Tuple eval_atom(const Atom& a, const Env& env) {
  Tuple t;
  t.reserve(a.args.size());
  for (const Term& arg : a.args) t.push_back(arg.eval(env));
  return t;
}

Derivation build_derivation(const ClauseSet& cs, std::size_t clause_index, const Env& env,
                            std::optional<std::pair<std::string, Tuple>> fact,
                            const std::unordered_map<std::string,
                                                     std::unordered_map<Tuple, FactRecord, TupleHash>>& records) {
  const Clause& c = cs.clauses[clause_index];
  Derivation d;
  d.clause = c;
  d.assignment = env;
  d.fact = std::move(fact);
  for (const Atom& a : c.body) {
    Tuple t = eval_atom(a, env);
    const FactRecord& rec = records.at(a.relation).at(t);
    d.premises.push_back(build_derivation(cs, rec.clause_index, rec.env,
                                          std::make_pair(a.relation, std::move(t)), records));
  }
  return d;
}

}  // namespace

std::size_t Derivation::depth() const {
  std::size_t d = 0;
  for (const Derivation& p : premises) d = std::max(d, p.depth());
  return d + 1;
}

Verdict solve(const ClauseSet& ground, const SolveLimits& limits) {
  Prepared prep = prepare(ground);

  std::unordered_map<std::string, FactSet> facts;
  std::unordered_map<std::string, FactSet> delta;
  std::unordered_map<std::string, std::unordered_map<Tuple, FactRecord, TupleHash>> records;
  for (const Relation& r : ground.relations) {
    facts[r.name];
    delta[r.name];
    records[r.name];
  }

  bool overflow = false;
  std::uint64_t fact_count = 0;

  auto in_facts = [&](const std::string& rel, const Tuple& t) {
    auto it = facts.find(rel);
    return it != facts.end() && it->second.contains(t);
  };
  auto in_delta = [&](const std::string& rel, const Tuple& t) {
    auto it = delta.find(rel);
    return it != delta.end() && it->second.contains(t);
  };

  for (std::size_t round = 0;; ++round) {
    std::unordered_map<std::string, FactSet> additions;
    std::unordered_map<std::string, std::unordered_map<Tuple, FactRecord, TupleHash>> new_records;

    for (std::size_t ci = 0; ci < ground.clauses.size(); ++ci) {
      const Clause& c = ground.clauses[ci];
      // Fact clauses fire once; recursive clauses need a premise from the
      // previous round's delta.
      if (c.body.empty() && round > 0) continue;

      Odometer odo(prep.clause_domains[ci]);
      do {
        const Env& env = odo.env();
        if (!c.guard.eval(env)) continue;
        bool body_ok = true;
        bool fresh = c.body.empty();
        for (const Atom& a : c.body) {
          Tuple t = eval_atom(a, env);
          if (!in_facts(a.relation, t)) {
            body_ok = false;
            break;
          }
          if (in_delta(a.relation, t)) fresh = true;
        }
        if (!body_ok) continue;
        if (round > 0 && !fresh) continue;

        if (!c.head) {
          return Verdict{VerdictKind::Unsat, std::nullopt,
                         build_derivation(ground, ci, env, std::nullopt, records), overflow};
        }
        Tuple t = eval_atom(*c.head, env);
        bool in_domain = true;
        for (std::size_t i = 0; i < t.size(); ++i) {
          if (t[i] < prep.head_ranges[ci][i].first || t[i] > prep.head_ranges[ci][i].second) {
            in_domain = false;
            break;
          }
        }
        if (!in_domain) {
          overflow = true;
          continue;
        }
        const std::string& rel = c.head->relation;
        if (in_facts(rel, t) || additions[rel].contains(t)) continue;
        additions[rel].insert(t);
        new_records[rel].emplace(std::move(t), FactRecord{ci, env});
        if (++fact_count > limits.max_facts) {
          throw BudgetError("fact budget exhausted during saturation");
        }
      } while (odo.advance());
    }

    bool grew = false;
    for (auto& [rel, set] : additions) {
      if (set.empty()) continue;
      grew = true;
      for (const Tuple& t : set) facts[rel].insert(t);
      for (auto& [t, rec] : new_records[rel]) records[rel].emplace(t, std::move(rec));
    }
    delta = std::move(additions);
    if (!grew) break;
  }

  if (overflow) {
    Verdict v;
    v.kind = VerdictKind::Unknown;
    v.overflow = true;
    return v;
  }
  Model model;
  for (const Relation& r : ground.relations) {
    auto& dst = model[r.name];
    for (const Tuple& t : facts[r.name]) dst.insert(t);
  }
  return Verdict{VerdictKind::Sat, std::move(model), std::nullopt, false};
}

namespace {

bool valid_derivation_node(const Derivation& node, const ClauseSet& cs) {
  const Clause* found = nullptr;
  for (const Clause& c : cs.clauses) {
    if (c == node.clause) {
      found = &c;
      break;
    }
  }
  if (found == nullptr) return false;
  for (const ClauseVar& v : found->vars) {
    auto it = node.assignment.find(v.name);
    if (it == node.assignment.end()) return false;
    const Sort* s = cs.find_sort(v.sort);
    if (s == nullptr || it->second < s->lo || it->second > s->hi) return false;
  }
  try {
    if (!found->guard.eval(node.assignment)) return false;
    if (node.premises.size() != found->body.size()) return false;
    for (std::size_t i = 0; i < found->body.size(); ++i) {
      const Atom& a = found->body[i];
      Tuple t = eval_atom(a, node.assignment);
      const auto& premise = node.premises[i];
      if (!premise.fact || premise.fact->first != a.relation || premise.fact->second != t) {
        return false;
      }
      if (!valid_derivation_node(premise, cs)) return false;
    }
    if (found->head) {
      if (!node.fact) return false;
      if (node.fact->first != found->head->relation) return false;
      if (node.fact->second != eval_atom(*found->head, node.assignment)) return false;
    } else {
      if (node.fact) return false;
    }
  } catch (const ContractViolation&) {
    return false;
  }
  return true;
}

}  // namespace

bool check_counterexample(const Derivation& cex, const ClauseSet& ground) {
  if (cex.fact) return false;  // the root must derive False
  return valid_derivation_node(cex, ground);
}

bool check_model(const Model& model, const ClauseSet& ground) {
  Prepared prep = prepare(ground);
  auto present = [&](const std::string& rel, const Tuple& t) {
    auto it = model.find(rel);
    return it != model.end() && it->second.contains(t);
  };
  for (std::size_t ci = 0; ci < ground.clauses.size(); ++ci) {
    const Clause& c = ground.clauses[ci];
    Odometer odo(prep.clause_domains[ci]);
    do {
      const Env& env = odo.env();
      if (!c.guard.eval(env)) continue;
      bool body_ok = true;
      for (const Atom& a : c.body) {
        if (!present(a.relation, eval_atom(a, env))) {
          body_ok = false;
          break;
        }
      }
      if (!body_ok) continue;
      if (!c.head) return false;  // a False clause fires
      Tuple t = eval_atom(*c.head, env);
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < prep.head_ranges[ci][i].first || t[i] > prep.head_ranges[ci][i].second) {
          return false;  // head leaves its domain, so the fact cannot be present
        }
      }
      if (!present(c.head->relation, t)) return false;
    } while (odo.advance());
  }
  return true;
}

}  // namespace lattopt::chc
