#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "lattopt/score.hpp"

namespace lattopt::cli {

// Process exit codes (also the report status).
inline constexpr int kExitComplete = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitBoundLimited = 4;
inline constexpr int kExitNoSolution = 5;

struct Solution {
  nlohmann::json label;
  Score score;
};

struct ReportStats {
  std::uint64_t oracle_calls = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t certificate_reuses = 0;
  std::uint64_t solver_calls = 0;
  double wall_time_ms = 0.0;
};

// Machine-readable result. Solutions are sorted by score descending, ties by
// canonical label order, so identical inputs render byte-identically (wall
// time aside).
struct Report {
  std::vector<Solution> solutions;
  bool complete = true;
  bool bound_limited = false;
  ReportStats stats;

  void sort_solutions();
  std::string status() const;
  int exit_code() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

}  // namespace lattopt::cli
