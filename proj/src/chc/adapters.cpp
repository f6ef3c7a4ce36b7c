#include "lattopt/chc/adapters.hpp"

#include <algorithm>
#include <utility>

namespace lattopt::chc {

ClauseOracle::ClauseOracle(ClauseSet hc, OracleConfig config)
    : hc_(std::move(hc)), config_(std::move(config)) {
  hc_.validate();
  if (!hc_.parameters_in_bodies_only()) {
    throw ConstructionError("parameters must not occur in clause heads");
  }
}

Verdict ClauseOracle::solve_fresh(const Substitution& m) const {
  return solve(instantiate(hc_, m), config_.limits);
}

VerdictKind ClauseOracle::query(const Substitution& m) {
  queries_.fetch_add(1);
  const std::string key = substitution_key(m);
  {
    std::shared_lock lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      memo_hits_.fetch_add(1);
      return it->second;
    }
  }

  ClauseSet instance = instantiate(hc_, m);
  VerdictKind kind;
  std::shared_ptr<const Certificate> fresh;

  if (config_.external) {
    solver_calls_.fetch_add(1);
    kind = external_solve(instance, *config_.external);
  } else {
    // Replay stored certificates, newest first, before solving.
    std::vector<std::shared_ptr<const Certificate>> certs;
    {
      std::shared_lock lock(mutex_);
      certs.assign(certificates_.begin(), certificates_.end());
    }
    std::optional<VerdictKind> replayed;
    for (const auto& cert : certs) {
      if (const auto* cex = std::get_if<Derivation>(cert.get())) {
        if (check_counterexample(*cex, instance)) {
          replayed = VerdictKind::Unsat;
          cex_reuses_.fetch_add(1);
          break;
        }
      } else if (const auto* model = std::get_if<Model>(cert.get())) {
        if (check_model(*model, instance)) {
          replayed = VerdictKind::Sat;
          model_reuses_.fetch_add(1);
          break;
        }
      }
    }
    if (replayed) {
      kind = *replayed;
    } else {
      solver_calls_.fetch_add(1);
      Verdict v = solve(instance, config_.limits);
      kind = v.kind;
      if (v.kind == VerdictKind::Sat) {
        fresh = std::make_shared<const Certificate>(std::move(*v.model));
      } else if (v.kind == VerdictKind::Unsat) {
        fresh = std::make_shared<const Certificate>(std::move(*v.counterexample));
      }
    }
  }

  if (kind == VerdictKind::Unknown) {
    unknowns_.fetch_add(1);
    bound_limited_.store(true);
    if (config_.unknown_policy == UnknownPolicy::Error) {
      throw BudgetError("bounded engine returned Unknown (domain overflow)");
    }
  }

  std::unique_lock lock(mutex_);
  memo_.emplace(key, kind);
  if (fresh) {
    certificates_.push_front(std::move(fresh));
    while (certificates_.size() > config_.max_certificates) certificates_.pop_back();
  }
  return kind;
}

OracleStats ClauseOracle::stats() const {
  OracleStats s;
  s.queries = queries_.load();
  s.memo_hits = memo_hits_.load();
  s.solver_calls = solver_calls_.load();
  s.model_reuses = model_reuses_.load();
  s.cex_reuses = cex_reuses_.load();
  s.unknowns = unknowns_.load();
  return s;
}

namespace {

OptLattice feasibility_lattice(const OptLattice& base, std::shared_ptr<ClauseOracle> oracle,
                               VerdictKind feasible_kind) {
  // Same effect as base.filter over the oracle, conjoined with base's own
  // feasibility.
  return base.with_node_feasibility(
      [base, oracle = std::move(oracle), feasible_kind](const NodeRef& n) {
        if (!base.feasible(n)) return false;
        Label label = base.label(n);
        return oracle->query(label.as<Substitution>()) == feasible_kind;
      });
}

void check_params(const ClauseSet& hc, const std::vector<std::string>& params) {
  std::vector<std::string> declared = hc.parameter_names();
  std::vector<std::string> given = params;
  std::sort(declared.begin(), declared.end());
  std::sort(given.begin(), given.end());
  if (declared != given) {
    throw ConstructionError("parameter list does not match the declared parameters");
  }
}

std::string fresh_flag_name(const ClauseSet& cs, std::size_t index) {
  std::string name = "flag_" + std::to_string(index);
  while (cs.find_relation(name) != nullptr) name += "_";
  return name;
}

// Adds a 0-ary parameter to the body of every listed clause; substitutions
// then enable or disable those clauses with true/false.
ClauseSet flag_clauses(const ClauseSet& cs, const std::vector<std::size_t>& indices,
                       std::vector<std::string>& flag_names) {
  ClauseSet out = cs;
  for (std::size_t i : indices) {
    std::string name = fresh_flag_name(out, i);
    out.relations.push_back(Relation{name, {}, RelationKind::Parameter});
    out.clauses[i].body.push_back(Atom{name, {}});
    flag_names.push_back(std::move(name));
  }
  return out;
}

Substitution flags_substitution(const std::vector<std::string>& flag_names,
                                const PowersetLattice& flags, const Label& set_label) {
  Substitution m;
  const auto& selected = set_label.as_set();
  for (std::size_t i = 0; i < flag_names.size(); ++i) {
    bool on = std::binary_search(selected.begin(), selected.end(),
                                 static_cast<std::int64_t>(flags.elements()[i]));
    m[flag_names[i]] = Constraint::truth(on);
  }
  return m;
}

}  // namespace

OptLattice clause_sat_lattice(const OptLattice& base, std::shared_ptr<ClauseOracle> oracle) {
  return feasibility_lattice(base, std::move(oracle), VerdictKind::Sat);
}

OptLattice clause_unsat_lattice(const OptLattice& base, std::shared_ptr<ClauseOracle> oracle) {
  return feasibility_lattice(base, std::move(oracle), VerdictKind::Unsat);
}

OptLattice clause_sat_lattice(const OptLattice& base, const ClauseSet& hc,
                              const std::vector<std::string>& params, OracleConfig config) {
  check_params(hc, params);
  return clause_sat_lattice(base, std::make_shared<ClauseOracle>(hc, std::move(config)));
}

OptLattice clause_unsat_lattice(const OptLattice& base, const ClauseSet& hc,
                                const std::vector<std::string>& params, OracleConfig config) {
  check_params(hc, params);
  return clause_unsat_lattice(base, std::make_shared<ClauseOracle>(hc, std::move(config)));
}

std::vector<std::size_t> MaxChcProblem::selected(const NodeRef& n) const {
  std::vector<std::size_t> out;
  for (std::size_t i : flags->indices_of(n)) out.push_back(soft[i]);
  return out;
}

MaxChcProblem maxchc(const ClauseSet& cs, const std::vector<BigInt>& weights,
                     const std::vector<bool>& hard, OracleConfig config) {
  cs.validate();
  if (cs.has_parameters()) {
    throw ConstructionError("maxchc expects an unparameterized clause set");
  }
  if (weights.size() != cs.clauses.size() || hard.size() != cs.clauses.size()) {
    throw ConstructionError("weights and hard mask must cover every clause");
  }
  for (const BigInt& w : weights) {
    if (w < 0) throw ConstructionError("clause weights must be non-negative");
  }

  MaxChcProblem p;
  for (std::size_t i = 0; i < cs.clauses.size(); ++i) {
    if (!hard[i]) p.soft.push_back(i);
  }
  std::vector<std::string> flag_names;
  ClauseSet flagged = flag_clauses(cs, p.soft, flag_names);
  p.oracle = std::make_shared<ClauseOracle>(std::move(flagged), std::move(config));

  std::vector<std::int64_t> elements;
  for (std::size_t i : p.soft) elements.push_back(static_cast<std::int64_t>(i));
  p.flags = powerset(elements);

  std::vector<BigInt> soft_weights;
  for (std::size_t i : p.soft) soft_weights.push_back(weights[i]);

  const auto flags = p.flags;
  OptLattice base =
      OptLattice::over(p.flags)
          .with_score([elements, soft_weights](const Label& l) {
            BigInt total = 0;
            const auto& sel = l.as_set();
            for (std::size_t i = 0; i < elements.size(); ++i) {
              if (std::binary_search(sel.begin(), sel.end(), elements[i])) {
                total += soft_weights[i];
              }
            }
            return Score::integer(total);
          })
          .map([flags, flag_names](const Label& l) {
            return Label::opaque(flags_substitution(flag_names, *flags, l));
          });
  p.lattice = clause_sat_lattice(base, p.oracle);
  return p;
}

MusResult mus(const ClauseSet& cs, const SearchConfig& cfg, OracleConfig config) {
  cs.validate();
  if (cs.has_parameters()) {
    throw ConstructionError("mus expects an unparameterized clause set");
  }
  std::vector<std::size_t> indices(cs.clauses.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;

  std::vector<std::string> flag_names;
  ClauseSet flagged = flag_clauses(cs, indices, flag_names);
  auto oracle = std::make_shared<ClauseOracle>(std::move(flagged), std::move(config));

  std::vector<std::int64_t> elements(indices.begin(), indices.end());
  auto flags = powerset(elements);
  auto carrier = inverted(flags);

  OptLattice base = OptLattice::over(carrier).map([flags, flag_names](const Label& l) {
    return Label::opaque(flags_substitution(flag_names, *flags, l));
  });
  OptLattice latt = clause_unsat_lattice(base, oracle);

  SearchOutcome out = maximal_feasible_objects(latt, latt.bottom(), cfg);
  MusResult result;
  result.stats = out.stats;
  result.oracle_stats = oracle->stats();
  result.complete = out.complete;
  result.bound_limited = oracle->bound_limited();
  for (const NodeRef& n : out.nodes) {
    std::vector<std::size_t> subset;
    for (std::size_t i : flags->indices_of(n)) subset.push_back(i);
    std::sort(subset.begin(), subset.end());
    result.muses.push_back(std::move(subset));
  }
  std::sort(result.muses.begin(), result.muses.end());
  return result;
}

}  // namespace lattopt::chc
