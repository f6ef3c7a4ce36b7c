#include "lattopt/cli/report.hpp"

#include <algorithm>
#include <sstream>

namespace lattopt::cli {

void Report::sort_solutions() {
  std::stable_sort(solutions.begin(), solutions.end(), [](const Solution& a, const Solution& b) {
    int c = Score::compare(a.score, b.score);
    if (c != 0) return c > 0;  // best first
    return a.label.dump() < b.label.dump();
  });
}

std::string Report::status() const {
  if (!complete) return "budget-truncated";
  if (bound_limited) return "bound-limited";
  if (solutions.empty()) return "no-solution";
  return "complete";
}

int Report::exit_code() const {
  if (!complete) return kExitBudget;
  if (bound_limited) return kExitBoundLimited;
  if (solutions.empty()) return kExitNoSolution;
  return kExitComplete;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["status"] = status();
  j["solutions"] = nlohmann::json::array();
  for (const Solution& s : solutions) {
    j["solutions"].push_back({{"label", s.label}, {"score", s.score.str()}});
  }
  j["stats"] = {{"oracle_calls", stats.oracle_calls},
                {"cache_hits", stats.cache_hits},
                {"certificate_reuses", stats.certificate_reuses},
                {"solver_calls", stats.solver_calls},
                {"wall_time_ms", stats.wall_time_ms}};
  return j;
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "status: " << status() << "\n";
  out << "solutions: " << solutions.size() << "\n";
  for (const Solution& s : solutions) {
    out << "  score=" << s.score.str() << "  " << s.label.dump() << "\n";
  }
  out << "stats: oracle_calls=" << stats.oracle_calls << " cache_hits=" << stats.cache_hits
      << " certificate_reuses=" << stats.certificate_reuses
      << " solver_calls=" << stats.solver_calls << " wall_time_ms=" << stats.wall_time_ms
      << "\n";
  return out.str();
}

}  // namespace lattopt::cli
