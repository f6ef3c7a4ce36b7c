#include "lattopt/cli/run.hpp"

#include <chrono>
#include <ostream>

#include "lattopt/chc/adapters.hpp"
#include "lattopt/chc/smtlib.hpp"
#include "lattopt/netrepair/problems.hpp"
#include "lattopt/powerset.hpp"
#include "lattopt/search.hpp"

namespace lattopt::cli {

namespace {

using nlohmann::json;

SearchConfig make_search_config(const Problem& p, const RunOptions& opt) {
  SearchConfig cfg;
  cfg.seed = opt.seed.value_or(p.search.seed);
  cfg.max_oracle_calls = opt.budget ? opt.budget : p.search.budget;
  cfg.objective_pruning = opt.pruning.value_or(p.search.pruning);
  cfg.threads = opt.threads;
  return cfg;
}

chc::OracleConfig make_oracle_config(const RunOptions& opt) {
  chc::OracleConfig cfg;
  if (opt.external_solver) {
    cfg.external = chc::ExternalSolver{*opt.external_solver, opt.external_timeout_seconds};
  }
  return cfg;
}

SearchOutcome run_search(const OptLattice& l, const SearchConfig& cfg, Objective objective,
                         bool& complete) {
  try {
    complete = true;
    if (objective == Objective::Optimal) return optimal_feasible_objects(l, l.bottom(), cfg);
    return maximal_feasible_objects(l, l.bottom(), cfg);
  } catch (const BudgetExhausted& e) {
    complete = false;
    return e.partial();
  }
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void fill_search_stats(Report& report, const SearchStats& stats) {
  report.stats.oracle_calls = stats.oracle_calls;
  report.stats.cache_hits = stats.cache_hits;
}

void fill_oracle_stats(Report& report, const chc::ClauseOracle& oracle) {
  chc::OracleStats os = oracle.stats();
  report.stats.certificate_reuses = os.model_reuses + os.cex_reuses;
  report.stats.solver_calls = os.solver_calls;
  report.bound_limited = oracle.bound_limited();
}

int finish(Report& report, const Timer& timer, const RunOptions& opt, std::ostream& out) {
  report.stats.wall_time_ms = timer.elapsed_ms();
  report.sort_solutions();
  if (opt.json) {
    out << report.to_json().dump(2) << "\n";
  } else {
    out << report.to_text();
  }
  return report.exit_code();
}

json link_list(const std::vector<netrepair::LinkRef>& links) {
  std::vector<std::string> names;
  names.reserve(links.size());
  for (const auto& l : links) names.push_back(l.str());
  std::sort(names.begin(), names.end());
  return json(names);
}

}  // namespace

int run_solve(const Problem& p, const RunOptions& opt, std::ostream& out, std::ostream& err) {
  Timer timer;
  SearchConfig cfg = make_search_config(p, opt);
  Report report;

  if (p.kind == ProblemKind::PowersetOpt) {
    const PowersetProblem& ps = *p.powerset;
    auto carrier = powerset(ps.elements);
    OptLattice l = OptLattice::over(carrier).with_score(
        [&ps](const Label& label) { return ps.score.of(label.as_set()); });
    if (ps.feasibility) {
      const SetPredicate& pred = *ps.feasibility;
      l = l.filter([pred](const Label& label) { return pred.eval(label.as_set()); });
    }
    bool complete = true;
    SearchOutcome outcome = run_search(l, cfg, opt.objective, complete);
    report.complete = complete;
    fill_search_stats(report, outcome.stats);
    for (const NodeRef& n : outcome.nodes) {
      report.solutions.push_back(Solution{json{{"set", l.label(n).as_set()}}, l.score(n)});
    }
    return finish(report, timer, opt, out);
  }

  if (p.kind == ProblemKind::ChcMaxsat || p.kind == ProblemKind::ChcMus) {
    const ChcProblem& cp = *p.chc;
    chc::MaxChcProblem problem = chc::maxchc(cp.clauses, cp.weights, cp.hard,
                                             make_oracle_config(opt));
    bool complete = true;
    SearchOutcome outcome = run_search(problem.lattice, cfg, opt.objective, complete);
    report.complete = complete;
    fill_search_stats(report, outcome.stats);
    fill_oracle_stats(report, *problem.oracle);
    for (const NodeRef& n : outcome.nodes) {
      std::vector<std::string> enabled;
      for (std::size_t i : problem.selected(n)) enabled.push_back(cp.clauses.clauses[i].name);
      report.solutions.push_back(
          Solution{json{{"enabled_clauses", enabled}}, problem.lattice.score(n)});
    }
    return finish(report, timer, opt, out);
  }

  err << "error: 'solve' expects a powerset-opt or chc problem file\n";
  return kExitValidation;
}

int run_mus(const Problem& p, const RunOptions& opt, std::ostream& out, std::ostream& err) {
  if (p.kind != ProblemKind::ChcMaxsat && p.kind != ProblemKind::ChcMus) {
    err << "error: 'mus' expects a chc problem file\n";
    return kExitValidation;
  }
  Timer timer;
  SearchConfig cfg = make_search_config(p, opt);
  const ChcProblem& cp = *p.chc;
  Report report;
  try {
    chc::MusResult result = chc::mus(cp.clauses, cfg, make_oracle_config(opt));
    report.complete = result.complete;
    report.bound_limited = result.bound_limited;
    fill_search_stats(report, result.stats);
    report.stats.certificate_reuses = result.oracle_stats.model_reuses + result.oracle_stats.cex_reuses;
    report.stats.solver_calls = result.oracle_stats.solver_calls;
    for (const auto& subset : result.muses) {
      std::vector<std::string> names;
      for (std::size_t i : subset) names.push_back(cp.clauses.clauses[i].name);
      report.solutions.push_back(Solution{
          json{{"clauses", names}}, Score::integer(static_cast<long long>(subset.size()))});
    }
  } catch (const BudgetExhausted& e) {
    report.complete = false;
    fill_search_stats(report, e.partial().stats);
  }
  return finish(report, timer, opt, out);
}

int run_net_repair(const Problem& p, NetMode mode, const RunOptions& opt, std::ostream& out,
                   std::ostream& err) {
  if (p.kind != ProblemKind::NetRepair) {
    err << "error: 'net-repair' expects a net-repair problem file\n";
    return kExitValidation;
  }
  Timer timer;
  SearchConfig cfg = make_search_config(p, opt);
  const netrepair::Scenario& sc = *p.scenario;
  chc::OracleConfig oracle_cfg = make_oracle_config(opt);
  Report report;
  bool complete = true;

  if (mode == NetMode::Links) {
    netrepair::LinkDisableProblem problem = netrepair::link_disable_problem(sc, oracle_cfg);
    SearchOutcome outcome = run_search(problem.lattice, cfg, opt.objective, complete);
    report.complete = complete;
    fill_search_stats(report, outcome.stats);
    fill_oracle_stats(report, *problem.oracle);
    for (const NodeRef& n : outcome.nodes) {
      report.solutions.push_back(Solution{json{{"disabled_links", link_list(problem.disabled(n))},
                                               {"enabled_links", link_list(problem.enabled(n))}},
                                          problem.lattice.score(n)});
    }
  } else if (mode == NetMode::Filters) {
    netrepair::FilterProblem problem = netrepair::filter_problem(sc, oracle_cfg);
    SearchOutcome outcome = run_search(problem.lattice, cfg, opt.objective, complete);
    report.complete = complete;
    fill_search_stats(report, outcome.stats);
    fill_oracle_stats(report, *problem.oracle);
    for (const NodeRef& n : outcome.nodes) {
      report.solutions.push_back(
          Solution{json{{"kept_destinations", problem.kept_destinations(n)},
                        {"kept_types", problem.kept_types(n)}},
                   problem.lattice.score(n)});
    }
  } else {
    netrepair::PortIntervalProblem problem = netrepair::port_interval_problem(sc, oracle_cfg);
    SearchOutcome outcome = run_search(problem.lattice, cfg, opt.objective, complete);
    report.complete = complete;
    fill_search_stats(report, outcome.stats);
    fill_oracle_stats(report, *problem.oracle);
    for (const NodeRef& n : outcome.nodes) {
      report.solutions.push_back(Solution{json{{"blocked", problem.blocked(n).str()},
                                               {"unblocked_ports", problem.unblocked_ports(n)}},
                                          problem.lattice.score(n)});
    }
  }
  (void)err;
  return finish(report, timer, opt, out);
}

int run_emit_horn(const Problem& p, std::ostream& out, std::ostream& err) {
  if (p.kind == ProblemKind::ChcMaxsat || p.kind == ProblemKind::ChcMus) {
    out << chc::emit_smtlib_horn(p.chc->clauses);
    return kExitComplete;
  }
  if (p.kind == ProblemKind::NetRepair) {
    netrepair::Encoded enc = netrepair::encode_network(*p.scenario, netrepair::RepairMode::None);
    out << chc::emit_smtlib_horn(enc.clauses);
    return kExitComplete;
  }
  err << "error: 'emit-horn' expects a chc or net-repair problem file\n";
  return kExitValidation;
}

}  // namespace lattopt::cli
