#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lattopt/errors.hpp"

namespace lattopt::chc {

using Value = std::int64_t;
// Clause-variable assignment. Ordered map so rendering is deterministic.
using Env = std::map<std::string, Value>;

// Bounded integer sort with an inclusive domain.
struct Sort {
  std::string name;
  Value lo = 0;
  Value hi = 0;
};

enum class RelationKind { Symbol, Parameter };

struct Relation {
  std::string name;
  std::vector<std::string> arg_sorts;
  RelationKind kind = RelationKind::Symbol;

  std::size_t arity() const { return arg_sorts.size(); }
};

// Integer term over clause variables, placeholder variables v(i) and the
// operations +, -, and multiplication by an integer constant. Immutable and
// cheaply copyable.
class Term {
 public:
  enum class Kind { Literal, Variable, Placeholder, Add, Sub, Mul };

  static Term lit(Value v);
  static Term var(std::string name);
  // Placeholder v(index); only meaningful inside substitution bodies.
  static Term arg(std::size_t index);
  static Term add(Term a, Term b);
  static Term sub(Term a, Term b);
  static Term mul(Value factor, Term t);

  Kind kind() const { return rep_->kind; }
  Value literal() const { return rep_->num; }
  Value factor() const { return rep_->num; }
  const std::string& var_name() const { return rep_->name; }
  std::size_t arg_index() const { return rep_->index; }
  Term lhs() const { return Term(rep_->a); }
  Term rhs() const { return Term(rep_->b); }
  Term operand() const { return Term(rep_->a); }

  Value eval(const Env& env) const;
  Term substitute_args(const std::vector<Term>& args) const;
  void collect_vars(std::set<std::string>& out) const;
  bool placeholders_below(std::size_t n) const;
  bool has_placeholders() const;

  // SMT-LIB style rendering, also the canonical text form.
  std::string str() const;

  friend bool operator==(const Term& a, const Term& b);
  friend Term operator+(const Term& a, const Term& b) { return add(a, b); }
  friend Term operator-(const Term& a, const Term& b) { return sub(a, b); }

 private:
  struct Rep {
    Kind kind;
    Value num = 0;
    std::string name;
    std::size_t index = 0;
    std::shared_ptr<const Rep> a, b;
  };
  explicit Term(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

// Quantifier-free constraint over terms: comparisons, conjunction,
// disjunction, negation, true and false.
class Constraint {
 public:
  enum class Kind { True, False, Compare, And, Or, Not };
  enum class Cmp { Eq, Ne, Lt, Le, Gt, Ge };

  Constraint();  // true

  static Constraint truth(bool b);
  static Constraint compare(Cmp op, Term a, Term b);
  static Constraint eq(Term a, Term b) { return compare(Cmp::Eq, a, b); }
  static Constraint ne(Term a, Term b) { return compare(Cmp::Ne, a, b); }
  static Constraint lt(Term a, Term b) { return compare(Cmp::Lt, a, b); }
  static Constraint le(Term a, Term b) { return compare(Cmp::Le, a, b); }
  static Constraint gt(Term a, Term b) { return compare(Cmp::Gt, a, b); }
  static Constraint ge(Term a, Term b) { return compare(Cmp::Ge, a, b); }
  // Empty conjunction is true, empty disjunction is false; singletons
  // collapse to the element.
  static Constraint conj(std::vector<Constraint> cs);
  static Constraint disj(std::vector<Constraint> cs);
  static Constraint negate(Constraint c);

  Kind kind() const { return rep_->kind; }
  Cmp cmp() const { return rep_->cmp; }
  Term lhs() const;
  Term rhs() const;
  const std::vector<Constraint>& parts() const { return rep_->parts; }
  const Constraint& inner() const { return rep_->parts.front(); }

  bool eval(const Env& env) const;
  Constraint substitute_args(const std::vector<Term>& args) const;
  void collect_vars(std::set<std::string>& out) const;
  bool placeholders_below(std::size_t n) const;
  bool has_placeholders() const;

  std::string str() const;

  friend bool operator==(const Constraint& a, const Constraint& b);

 private:
  struct Rep {
    Kind kind;
    Cmp cmp = Cmp::Eq;
    std::optional<Term> a, b;  // Compare operands
    std::vector<Constraint> parts;
  };
  explicit Constraint(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

struct Atom {
  std::string relation;
  std::vector<Term> args;

  std::string str() const;
  friend bool operator==(const Atom& a, const Atom& b);
};

struct ClauseVar {
  std::string name;
  std::string sort;
  friend bool operator==(const ClauseVar&, const ClauseVar&) = default;
};

// head ← body ∧ guard. A missing head is False. Parameters may appear in
// bodies only; that restriction is enforced where it matters for
// monotonicity (the lattice adapters).
struct Clause {
  std::string name;  // display only; not part of identity
  std::optional<Atom> head;
  std::vector<Atom> body;
  Constraint guard = Constraint::truth(true);
  std::vector<ClauseVar> vars;

  std::string str() const;
  // Structural equality; ignores the display name.
  friend bool operator==(const Clause& a, const Clause& b);
};

// Clause set over symbol and parameter relations. Ground when no parameter
// relations are declared.
struct ClauseSet {
  std::vector<Sort> sorts;
  std::vector<Relation> relations;
  std::vector<Clause> clauses;

  const Sort* find_sort(const std::string& name) const;
  const Relation* find_relation(const std::string& name) const;
  bool has_parameters() const;
  std::vector<std::string> parameter_names() const;  // declaration order
  bool parameters_in_bodies_only() const;

  // ConstructionError on duplicate names, unknown sorts, empty domains,
  // arity mismatches, unbound or undeclared clause variables, or placeholder
  // use outside substitution bodies.
  void validate() const;
};

// Maps every parameter to a constraint over the placeholders
// v(0) … v(arity-1).
using Substitution = std::map<std::string, Constraint>;

// Canonical text form; used as the memoization key.
std::string substitution_key(const Substitution& m);

// Replaces every parameter atom p(t0..tn-1) in a body with m(p)[v(i) := ti],
// conjoined into the clause guard. The result declares symbol relations
// only. ConstructionError when m misses a parameter or a substitution body
// uses a placeholder at or beyond the parameter's arity.
ClauseSet instantiate(const ClauseSet& hc, const Substitution& m);

}  // namespace lattopt::chc
