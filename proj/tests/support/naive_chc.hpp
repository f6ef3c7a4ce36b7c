#pragma once

// Independent naive fixpoint oracle for ground clause sets: full
// re-enumeration every pass, recursive assignment construction, no deltas,
// no derivation bookkeeping. Deliberately a different algorithm than the
// engine it cross-checks.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lattopt/chc/ast.hpp"

namespace lattopt::testing {

enum class NaiveVerdict { Sat, Unsat, Unknown };

inline NaiveVerdict naive_solve(const chc::ClauseSet& ground) {
  using chc::Env;
  using chc::Tuple;
  using chc::Value;

  std::map<std::string, std::set<Tuple>> facts;
  bool overflow = false;
  bool unsat = false;

  auto tuple_of = [](const chc::Atom& a, const Env& env) {
    Tuple t;
    for (const chc::Term& arg : a.args) t.push_back(arg.eval(env));
    return t;
  };

  auto for_each_assignment = [&](const chc::Clause& c, const std::function<void(const Env&)>& f) {
    Env env;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == c.vars.size()) {
        f(env);
        return;
      }
      const chc::Sort* s = ground.find_sort(c.vars[i].sort);
      for (Value v = s->lo; v <= s->hi; ++v) {
        env[c.vars[i].name] = v;
        rec(i + 1);
      }
      env.erase(c.vars[i].name);
    };
    rec(0);
  };

  bool changed = true;
  while (changed && !unsat) {
    changed = false;
    for (const chc::Clause& c : ground.clauses) {
      if (unsat) break;
      for_each_assignment(c, [&](const Env& env) {
        if (unsat) return;
        if (!c.guard.eval(env)) return;
        for (const chc::Atom& a : c.body) {
          if (!facts[a.relation].contains(tuple_of(a, env))) return;
        }
        if (!c.head) {
          unsat = true;
          return;
        }
        Tuple t = tuple_of(*c.head, env);
        const chc::Relation* r = ground.find_relation(c.head->relation);
        for (std::size_t i = 0; i < t.size(); ++i) {
          const chc::Sort* s = ground.find_sort(r->arg_sorts[i]);
          if (t[i] < s->lo || t[i] > s->hi) {
            overflow = true;
            return;
          }
        }
        if (facts[c.head->relation].insert(std::move(t)).second) changed = true;
      });
    }
  }
  if (unsat) return NaiveVerdict::Unsat;
  return overflow ? NaiveVerdict::Unknown : NaiveVerdict::Sat;
}

}  // namespace lattopt::testing
