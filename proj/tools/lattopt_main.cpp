#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lattopt/cli/problem.hpp"
#include "lattopt/cli/run.hpp"
#include "lattopt/errors.hpp"

namespace {

struct CommonFlags {
  std::string file;
  bool json = false;
  bool text = false;
  bool maximal = false;
  bool optimal = false;
  bool no_pruning = false;
  int threads = 1;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::uint64_t budget = 0;
  bool budget_set = false;
  std::string external_solver;
  double external_timeout = 10.0;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_objective) {
  cmd->add_option("file", f.file, "problem file (JSON)")->required();
  cmd->add_flag("--json", f.json, "machine-readable JSON report on stdout");
  cmd->add_flag("--text", f.text, "human-readable report (default)");
  auto* seed = cmd->add_option("--seed", f.seed, "random seed (overrides the file)");
  seed->each([&f](const std::string&) { f.seed_set = true; });
  auto* budget = cmd->add_option("--budget", f.budget, "oracle-call budget");
  budget->each([&f](const std::string&) { f.budget_set = true; });
  cmd->add_flag("--no-pruning", f.no_pruning, "disable objective pruning");
  cmd->add_option("--threads", f.threads, "parallel search threads (default 1, deterministic)");
  cmd->add_option("--external-solver", f.external_solver,
                  "external Horn solver command with a {file} placeholder");
  cmd->add_option("--external-timeout", f.external_timeout,
                  "external solver timeout in seconds");
  if (with_objective) {
    cmd->add_flag("--maximal", f.maximal, "enumerate all maximal feasible solutions");
    cmd->add_flag("--optimal", f.optimal, "report only maximum-score solutions (default)");
  }
}

lattopt::cli::RunOptions to_options(const CommonFlags& f) {
  lattopt::cli::RunOptions opt;
  opt.json = f.json;
  opt.objective = f.maximal ? lattopt::cli::Objective::Maximal : lattopt::cli::Objective::Optimal;
  if (f.seed_set) opt.seed = f.seed;
  if (f.budget_set) opt.budget = f.budget;
  if (f.no_pruning) opt.pruning = false;
  opt.threads = f.threads < 1 ? 1 : f.threads;
  if (!f.external_solver.empty()) opt.external_solver = f.external_solver;
  opt.external_timeout_seconds = f.external_timeout;
  return opt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattopt: lattice-based optimization over Horn constraints"};
  app.require_subcommand(1);

  CommonFlags solve_flags, mus_flags, net_flags;
  std::string net_mode;
  std::string horn_file;

  CLI::App* solve = app.add_subcommand("solve", "enumerate maximal or optimal solutions");
  add_common(solve, solve_flags, true);

  CLI::App* mus = app.add_subcommand("mus", "enumerate all minimal unsatisfiable subsets");
  add_common(mus, mus_flags, false);

  CLI::App* net = app.add_subcommand("net-repair", "solve a network repair scenario");
  add_common(net, net_flags, true);
  net->add_option("--mode", net_mode, "repair space: links | filters | ports")->required();

  CLI::App* horn = app.add_subcommand("emit-horn", "print the clause set as SMT-LIB Horn text");
  horn->add_option("file", horn_file, "problem file (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      auto problem = lattopt::cli::load_problem(solve_flags.file);
      return lattopt::cli::run_solve(problem, to_options(solve_flags), std::cout, std::cerr);
    }
    if (mus->parsed()) {
      auto problem = lattopt::cli::load_problem(mus_flags.file);
      return lattopt::cli::run_mus(problem, to_options(mus_flags), std::cout, std::cerr);
    }
    if (net->parsed()) {
      lattopt::cli::NetMode mode;
      if (net_mode == "links") {
        mode = lattopt::cli::NetMode::Links;
      } else if (net_mode == "filters") {
        mode = lattopt::cli::NetMode::Filters;
      } else if (net_mode == "ports") {
        mode = lattopt::cli::NetMode::Ports;
      } else {
        std::cerr << "error: unknown mode '" << net_mode << "'\n";
        return lattopt::cli::kExitValidation;
      }
      auto problem = lattopt::cli::load_problem(net_flags.file);
      return lattopt::cli::run_net_repair(problem, mode, to_options(net_flags), std::cout,
                                          std::cerr);
    }
    auto problem = lattopt::cli::load_problem(horn_file);
    return lattopt::cli::run_emit_horn(problem, std::cout, std::cerr);
  } catch (const lattopt::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return lattopt::cli::kExitValidation;
  } catch (const lattopt::ConstructionError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return lattopt::cli::kExitValidation;
  } catch (const lattopt::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
