#pragma once

// Programmatic builders for the four-clause flagged system used across the
// chc tests: Inv over (x, y, n) with an x+1 rule, an x+2 rule and the goal
// x >= 2n, each clause guarded by a 0-ary parameter f0..f3.

#include "lattopt/chc/ast.hpp"

namespace lattopt::testing {

inline chc::ClauseSet four_clause_system(bool with_flags) {
  using chc::Atom;
  using chc::Clause;
  using chc::Constraint;
  using chc::Relation;
  using chc::RelationKind;
  using chc::Term;

  chc::ClauseSet cs;
  cs.sorts.push_back({"Val", 0, 8});
  cs.sorts.push_back({"Lim", 1, 4});
  cs.relations.push_back({"Inv", {"Val", "Val", "Lim"}, RelationKind::Symbol});
  if (with_flags) {
    for (int i = 0; i < 4; ++i) {
      cs.relations.push_back(
          {"f" + std::to_string(i), {}, RelationKind::Parameter});
    }
  }

  Term x = Term::var("x");
  Term y = Term::var("y");
  Term n = Term::var("n");

  Clause c0;
  c0.name = "c0";
  c0.vars = {{"n", "Lim"}};
  c0.head = Atom{"Inv", {Term::lit(0), Term::lit(0), n}};
  c0.guard = Constraint::gt(n, Term::lit(0));

  Clause c1;
  c1.name = "c1";
  c1.vars = {{"x", "Val"}, {"y", "Val"}, {"n", "Lim"}};
  c1.head = Atom{"Inv", {x + Term::lit(1), y + Term::lit(1), n}};
  c1.body = {Atom{"Inv", {x, y, n}}};
  c1.guard = Constraint::lt(y, n);

  Clause c2 = c1;
  c2.name = "c2";
  c2.head = Atom{"Inv", {x + Term::lit(2), y + Term::lit(1), n}};

  Clause c3;
  c3.name = "c3";
  c3.vars = {{"x", "Val"}, {"y", "Val"}, {"n", "Lim"}};
  c3.head = std::nullopt;
  c3.body = {Atom{"Inv", {x, y, n}}};
  c3.guard = Constraint::ge(x, Term::mul(2, n));

  cs.clauses = {c0, c1, c2, c3};
  if (with_flags) {
    for (int i = 0; i < 4; ++i) {
      cs.clauses[i].body.push_back(Atom{"f" + std::to_string(i), {}});
    }
  }
  return cs;
}

inline chc::Substitution flag_substitution(bool f0, bool f1, bool f2, bool f3) {
  chc::Substitution m;
  m["f0"] = chc::Constraint::truth(f0);
  m["f1"] = chc::Constraint::truth(f1);
  m["f2"] = chc::Constraint::truth(f2);
  m["f3"] = chc::Constraint::truth(f3);
  return m;
}

}  // namespace lattopt::testing
