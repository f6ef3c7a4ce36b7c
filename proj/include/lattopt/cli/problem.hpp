#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lattopt/chc/ast.hpp"
#include "lattopt/errors.hpp"
#include "lattopt/netrepair/model.hpp"
#include "lattopt/score.hpp"

namespace lattopt::cli {

// Predicate over an integer-set label. The expression grammar covers set
// membership, integer arithmetic, comparisons, boolean connectives, and
// bounded quantification over the elements of the label set; see
// docs/problem-schema.md.
class SetPredicate {
 public:
  struct Node;

  static SetPredicate parse(const nlohmann::json& j);  // ValidationError
  bool eval(const std::vector<std::int64_t>& set) const;

 private:
  std::shared_ptr<const Node> root_;
};

struct ScoreSpec {
  enum class Kind { Sum, Card, Weighted } kind = Kind::Card;
  std::map<std::int64_t, BigInt> weights;  // element value -> weight

  Score of(const std::vector<std::int64_t>& set) const;
};

struct SearchSpec {
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> budget;
  bool pruning = true;
};

struct PowersetProblem {
  std::vector<std::int64_t> elements;
  ScoreSpec score;
  std::optional<SetPredicate> feasibility;
};

struct ChcProblem {
  chc::ClauseSet clauses;
  std::vector<BigInt> weights;  // aligned with clauses
  std::vector<bool> hard;
};

enum class ProblemKind { PowersetOpt, ChcMaxsat, ChcMus, NetRepair };

struct Problem {
  ProblemKind kind;
  SearchSpec search;
  std::optional<PowersetProblem> powerset;
  std::optional<ChcProblem> chc;
  std::optional<netrepair::Scenario> scenario;
};

// Parses a version-1 problem file; unknown fields and schema violations
// raise ValidationError before any solving happens.
Problem parse_problem(const nlohmann::json& j);
Problem load_problem(const std::string& path);

}  // namespace lattopt::cli
