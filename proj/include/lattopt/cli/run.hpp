#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "lattopt/cli/problem.hpp"
#include "lattopt/cli/report.hpp"

namespace lattopt::cli {

enum class Objective { Maximal, Optimal };
enum class NetMode { Links, Filters, Ports };

struct RunOptions {
  bool json = false;
  Objective objective = Objective::Optimal;
  std::optional<std::uint64_t> seed;    // overrides the file's search block
  std::optional<std::uint64_t> budget;
  std::optional<bool> pruning;
  int threads = 1;
  std::optional<std::string> external_solver;
  double external_timeout_seconds = 10.0;
};

// Each returns the process exit code; the report goes to `out`, diagnostics
// to `err`.
int run_solve(const Problem& p, const RunOptions& opt, std::ostream& out, std::ostream& err);
int run_mus(const Problem& p, const RunOptions& opt, std::ostream& out, std::ostream& err);
int run_net_repair(const Problem& p, NetMode mode, const RunOptions& opt, std::ostream& out,
                   std::ostream& err);
int run_emit_horn(const Problem& p, std::ostream& out, std::ostream& err);

}  // namespace lattopt::cli
