#include "lattopt/cli/problem.hpp"

#include <algorithm>
#include <fstream>

namespace lattopt::cli {

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

}  // namespace

// ---- SetPredicate ----

struct SetPredicate::Node {
  enum class Kind {
    True,
    False,
    And,
    Or,
    Not,
    Compare,
    Member,
    Forall,
    Exists,
    // integer-valued
    IntLit,
    Var,
    Add,
    Sub,
    Mul
  };
  Kind kind;
  std::int64_t value = 0;       // IntLit
  std::string name;             // Var / quantifier variable / comparison op
  std::vector<std::shared_ptr<const Node>> children;
};

namespace {

using PNode = std::shared_ptr<const SetPredicate::Node>;
using NK = SetPredicate::Node::Kind;

PNode parse_int_expr(const json& j);

PNode parse_bool_expr(const json& j) {
  auto node = std::make_shared<SetPredicate::Node>();
  if (j.is_boolean()) {
    node->kind = j.get<bool>() ? NK::True : NK::False;
    return node;
  }
  if (!j.is_object() || j.size() != 1) {
    throw ValidationError("predicate expression must be a boolean or a single-key object");
  }
  const std::string op = j.begin().key();
  const json& arg = j.begin().value();
  if (op == "and" || op == "or") {
    node->kind = op == "and" ? NK::And : NK::Or;
    if (!arg.is_array()) throw ValidationError("'" + op + "' needs an array");
    for (const auto& e : arg) node->children.push_back(parse_bool_expr(e));
    return node;
  }
  if (op == "not") {
    node->kind = NK::Not;
    node->children.push_back(parse_bool_expr(arg));
    return node;
  }
  if (op == "==" || op == "!=" || op == "<" || op == "<=" || op == ">" || op == ">=") {
    if (!arg.is_array() || arg.size() != 2) {
      throw ValidationError("comparison '" + op + "' needs two operands");
    }
    node->kind = NK::Compare;
    node->name = op;
    node->children.push_back(parse_int_expr(arg[0]));
    node->children.push_back(parse_int_expr(arg[1]));
    return node;
  }
  if (op == "member") {
    node->kind = NK::Member;
    node->children.push_back(parse_int_expr(arg));
    return node;
  }
  if (op == "forall" || op == "exists") {
    expect_keys(arg, op.c_str(), {"var", "body"});
    node->kind = op == "forall" ? NK::Forall : NK::Exists;
    node->name = arg.at("var").get<std::string>();
    node->children.push_back(parse_bool_expr(arg.at("body")));
    return node;
  }
  throw ValidationError("unknown predicate operator: " + op);
}

PNode parse_int_expr(const json& j) {
  auto node = std::make_shared<SetPredicate::Node>();
  if (j.is_number_integer()) {
    node->kind = NK::IntLit;
    node->value = j.get<std::int64_t>();
    return node;
  }
  if (!j.is_object() || j.size() != 1) {
    throw ValidationError("integer expression must be a number or a single-key object");
  }
  const std::string op = j.begin().key();
  const json& arg = j.begin().value();
  if (op == "var") {
    node->kind = NK::Var;
    node->name = arg.get<std::string>();
    return node;
  }
  if (op == "+" || op == "*") {
    node->kind = op == "+" ? NK::Add : NK::Mul;
    if (!arg.is_array() || arg.empty()) throw ValidationError("'" + op + "' needs operands");
    for (const auto& e : arg) node->children.push_back(parse_int_expr(e));
    return node;
  }
  if (op == "-") {
    if (!arg.is_array() || arg.size() != 2) throw ValidationError("'-' needs two operands");
    node->kind = NK::Sub;
    node->children.push_back(parse_int_expr(arg[0]));
    node->children.push_back(parse_int_expr(arg[1]));
    return node;
  }
  throw ValidationError("unknown integer operator: " + op);
}

using VarEnv = std::map<std::string, std::int64_t>;

std::int64_t eval_int(const SetPredicate::Node& n, const VarEnv& env) {
  switch (n.kind) {
    case NK::IntLit:
      return n.value;
    case NK::Var: {
      auto it = env.find(n.name);
      if (it == env.end()) throw ValidationError("unbound predicate variable: " + n.name);
      return it->second;
    }
    case NK::Add: {
      std::int64_t v = 0;
      for (const auto& c : n.children) v += eval_int(*c, env);
      return v;
    }
    case NK::Sub:
      return eval_int(*n.children[0], env) - eval_int(*n.children[1], env);
    case NK::Mul: {
      std::int64_t v = 1;
      for (const auto& c : n.children) v *= eval_int(*c, env);
      return v;
    }
    default:
      throw ValidationError("boolean expression used as an integer");
  }
}

bool eval_bool(const SetPredicate::Node& n, const std::vector<std::int64_t>& set,
               VarEnv& env) {
  switch (n.kind) {
    case NK::True:
      return true;
    case NK::False:
      return false;
    case NK::And:
      for (const auto& c : n.children) {
        if (!eval_bool(*c, set, env)) return false;
      }
      return true;
    case NK::Or:
      for (const auto& c : n.children) {
        if (eval_bool(*c, set, env)) return true;
      }
      return false;
    case NK::Not:
      return !eval_bool(*n.children[0], set, env);
    case NK::Compare: {
      std::int64_t a = eval_int(*n.children[0], env);
      std::int64_t b = eval_int(*n.children[1], env);
      if (n.name == "==") return a == b;
      if (n.name == "!=") return a != b;
      if (n.name == "<") return a < b;
      if (n.name == "<=") return a <= b;
      if (n.name == ">") return a > b;
      return a >= b;
    }
    case NK::Member:
      return std::binary_search(set.begin(), set.end(), eval_int(*n.children[0], env));
    case NK::Forall:
    case NK::Exists: {
      for (std::int64_t v : set) {
        auto saved = env.find(n.name) != env.end() ? std::optional(env[n.name]) : std::nullopt;
        env[n.name] = v;
        bool r = eval_bool(*n.children[0], set, env);
        if (saved) {
          env[n.name] = *saved;
        } else {
          env.erase(n.name);
        }
        if (n.kind == NK::Exists && r) return true;
        if (n.kind == NK::Forall && !r) return false;
      }
      return n.kind == NK::Forall;
    }
    default:
      throw ValidationError("integer expression used as a boolean");
  }
}

}  // namespace

SetPredicate SetPredicate::parse(const json& j) {
  SetPredicate p;
  p.root_ = parse_bool_expr(j);
  return p;
}

bool SetPredicate::eval(const std::vector<std::int64_t>& set) const {
  VarEnv env;
  return eval_bool(*root_, set, env);
}

// ---- ScoreSpec ----

Score ScoreSpec::of(const std::vector<std::int64_t>& set) const {
  switch (kind) {
    case Kind::Sum: {
      BigInt total = 0;
      for (std::int64_t v : set) total += v;
      return Score::integer(total);
    }
    case Kind::Card:
      return Score::integer(static_cast<long long>(set.size()));
    case Kind::Weighted: {
      BigInt total = 0;
      for (std::int64_t v : set) {
        auto it = weights.find(v);
        if (it != weights.end()) total += it->second;
      }
      return Score::integer(total);
    }
  }
  return Score::integer(0);
}

// ---- chc expression parsing ----

namespace {

chc::Term parse_term(const json& j) {
  if (j.is_number_integer()) return chc::Term::lit(j.get<chc::Value>());
  if (!j.is_object() || j.size() != 1) {
    throw ValidationError("term must be an integer or a single-key object");
  }
  const std::string op = j.begin().key();
  const json& arg = j.begin().value();
  if (op == "var") return chc::Term::var(arg.get<std::string>());
  if (op == "+" || op == "-") {
    if (!arg.is_array() || arg.size() != 2) throw ValidationError("'" + op + "' needs two terms");
    chc::Term a = parse_term(arg[0]);
    chc::Term b = parse_term(arg[1]);
    return op == "+" ? chc::Term::add(a, b) : chc::Term::sub(a, b);
  }
  if (op == "*") {
    if (!arg.is_array() || arg.size() != 2 || !arg[0].is_number_integer()) {
      throw ValidationError("'*' needs an integer constant and a term");
    }
    return chc::Term::mul(arg[0].get<chc::Value>(), parse_term(arg[1]));
  }
  throw ValidationError("unknown term operator: " + op);
}

chc::Constraint parse_constraint(const json& j) {
  if (j.is_boolean()) return chc::Constraint::truth(j.get<bool>());
  if (!j.is_object() || j.size() != 1) {
    throw ValidationError("constraint must be a boolean or a single-key object");
  }
  const std::string op = j.begin().key();
  const json& arg = j.begin().value();
  if (op == "and" || op == "or") {
    if (!arg.is_array()) throw ValidationError("'" + op + "' needs an array");
    std::vector<chc::Constraint> parts;
    for (const auto& e : arg) parts.push_back(parse_constraint(e));
    return op == "and" ? chc::Constraint::conj(std::move(parts))
                       : chc::Constraint::disj(std::move(parts));
  }
  if (op == "not") return chc::Constraint::negate(parse_constraint(arg));
  static const std::map<std::string, chc::Constraint::Cmp> cmps = {
      {"==", chc::Constraint::Cmp::Eq}, {"!=", chc::Constraint::Cmp::Ne},
      {"<", chc::Constraint::Cmp::Lt},  {"<=", chc::Constraint::Cmp::Le},
      {">", chc::Constraint::Cmp::Gt},  {">=", chc::Constraint::Cmp::Ge}};
  auto it = cmps.find(op);
  if (it == cmps.end()) throw ValidationError("unknown constraint operator: " + op);
  if (!arg.is_array() || arg.size() != 2) {
    throw ValidationError("comparison '" + op + "' needs two operands");
  }
  return chc::Constraint::compare(it->second, parse_term(arg[0]), parse_term(arg[1]));
}

chc::Atom parse_atom(const json& j) {
  expect_keys(j, "atom", {"rel", "args"});
  chc::Atom a;
  a.relation = j.at("rel").get<std::string>();
  if (j.contains("args")) {
    for (const auto& e : j.at("args")) a.args.push_back(parse_term(e));
  }
  return a;
}

ChcProblem parse_chc(const json& j) {
  ChcProblem p;
  for (const auto& s : j.at("sorts")) {
    expect_keys(s, "sort", {"name", "lo", "hi"});
    p.clauses.sorts.push_back(chc::Sort{s.at("name").get<std::string>(),
                                        s.at("lo").get<chc::Value>(),
                                        s.at("hi").get<chc::Value>()});
  }
  for (const auto& r : j.at("relations")) {
    expect_keys(r, "relation", {"name", "args"});
    chc::Relation rel;
    rel.name = r.at("name").get<std::string>();
    for (const auto& a : r.at("args")) rel.arg_sorts.push_back(a.get<std::string>());
    p.clauses.relations.push_back(std::move(rel));
  }
  std::size_t index = 0;
  for (const auto& c : j.at("clauses")) {
    expect_keys(c, "clause", {"name", "vars", "head", "body", "constraint", "weight"});
    chc::Clause clause;
    clause.name = c.contains("name") ? c.at("name").get<std::string>()
                                     : "c" + std::to_string(index);
    if (c.contains("vars")) {
      for (const auto& v : c.at("vars")) {
        expect_keys(v, "variable", {"name", "sort"});
        clause.vars.push_back(
            chc::ClauseVar{v.at("name").get<std::string>(), v.at("sort").get<std::string>()});
      }
    }
    if (c.contains("head") && !c.at("head").is_null()) {
      clause.head = parse_atom(c.at("head"));
    }
    if (c.contains("body")) {
      for (const auto& a : c.at("body")) clause.body.push_back(parse_atom(a));
    }
    if (c.contains("constraint")) clause.guard = parse_constraint(c.at("constraint"));
    if (c.contains("weight")) {
      if (!c.at("weight").is_number_integer() || c.at("weight").get<long long>() < 0) {
        throw ValidationError("clause weights must be non-negative integers");
      }
      p.weights.push_back(BigInt(c.at("weight").get<long long>()));
      p.hard.push_back(false);
    } else {
      p.weights.push_back(BigInt(0));
      p.hard.push_back(true);
    }
    p.clauses.clauses.push_back(std::move(clause));
    ++index;
  }
  try {
    p.clauses.validate();
  } catch (const ConstructionError& e) {
    throw ValidationError(e.what());
  }
  return p;
}

SearchSpec parse_search(const json& j) {
  SearchSpec s;
  expect_keys(j, "search", {"seed", "budget", "pruning"});
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("budget") && !j.at("budget").is_null()) {
    s.budget = j.at("budget").get<std::uint64_t>();
  }
  if (j.contains("pruning")) s.pruning = j.at("pruning").get<bool>();
  return s;
}

}  // namespace

Problem parse_problem(const json& j) {
  if (!j.is_object()) throw ValidationError("problem file must be a JSON object");
  if (!j.contains("version") || !j.at("version").is_number_integer() ||
      j.at("version").get<int>() != 1) {
    throw ValidationError("problem file must declare \"version\": 1");
  }
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw ValidationError("problem file must declare a kind");
  }
  const std::string kind = j.at("kind").get<std::string>();

  Problem p;
  if (j.contains("search")) p.search = parse_search(j.at("search"));

  if (kind == "powerset-opt") {
    expect_keys(j, "problem", {"version", "kind", "search", "lattice", "score", "feasibility"});
    p.kind = ProblemKind::PowersetOpt;
    PowersetProblem ps;
    const auto& latt = j.at("lattice");
    expect_keys(latt, "lattice", {"family", "elements"});
    if (latt.at("family").get<std::string>() != "powerset") {
      throw ValidationError("powerset-opt needs a powerset lattice");
    }
    for (const auto& e : latt.at("elements")) {
      if (!e.is_number_integer()) throw ValidationError("elements must be integers");
      ps.elements.push_back(e.get<std::int64_t>());
    }
    if (j.contains("score")) {
      const auto& s = j.at("score");
      expect_keys(s, "score", {"kind", "weights"});
      const std::string sk = s.at("kind").get<std::string>();
      if (sk == "sum") {
        ps.score.kind = ScoreSpec::Kind::Sum;
      } else if (sk == "card") {
        ps.score.kind = ScoreSpec::Kind::Card;
      } else if (sk == "weighted") {
        ps.score.kind = ScoreSpec::Kind::Weighted;
        const auto& w = s.at("weights");
        if (!w.is_array() || w.size() != ps.elements.size()) {
          throw ValidationError("weights must align with the elements");
        }
        for (std::size_t i = 0; i < ps.elements.size(); ++i) {
          if (!w[i].is_number_integer() || w[i].get<long long>() < 0) {
            throw ValidationError("weights must be non-negative integers");
          }
          ps.score.weights[ps.elements[i]] = BigInt(w[i].get<long long>());
        }
      } else {
        throw ValidationError("unknown score kind: " + sk);
      }
    }
    if (j.contains("feasibility")) {
      ps.feasibility = SetPredicate::parse(j.at("feasibility"));
    }
    p.powerset = std::move(ps);
    return p;
  }

  if (kind == "chc-maxsat" || kind == "chc-mus") {
    expect_keys(j, "problem", {"version", "kind", "search", "sorts", "relations", "clauses"});
    p.kind = kind == "chc-maxsat" ? ProblemKind::ChcMaxsat : ProblemKind::ChcMus;
    p.chc = parse_chc(j);
    return p;
  }

  if (kind == "net-repair") {
    expect_keys(j, "problem", {"version", "kind", "search", "scenario"});
    p.kind = ProblemKind::NetRepair;
    p.scenario = netrepair::scenario_from_json(j.at("scenario"));
    return p;
  }

  throw ValidationError("unknown problem kind: " + kind);
}

Problem load_problem(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open problem file: " + path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  return parse_problem(j);
}

}  // namespace lattopt::cli
