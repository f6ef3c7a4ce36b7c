#include "lattopt/chc/ast.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace lattopt::chc {

// ---- Term ----

Term Term::lit(Value v) {
  auto r = std::make_shared<Rep>();
  r->kind = Kind::Literal;
  r->num = v;
  return Term(std::move(r));
}

Term Term::var(std::string name) {
  auto r = std::make_shared<Rep>();
  r->kind = Kind::Variable;
  r->name = std::move(name);
  return Term(std::move(r));
}

Term Term::arg(std::size_t index) {
  auto r = std::make_shared<Rep>();
  r->kind = Kind::Placeholder;
  r->index = index;
  return Term(std::move(r));
}

Term Term::add(Term a, Term b) {
  auto r = std::make_shared<Rep>();
  r->kind = Kind::Add;
  r->a = a.rep_;
  r->b = b.rep_;
  return Term(std::move(r));
}

Term Term::sub(Term a, Term b) {
  auto r = std::make_shared<Rep>();
  r->kind = Kind::Sub;
  r->a = a.rep_;
  r->b = b.rep_;
  return Term(std::move(r));
}

Term Term::mul(Value factor, Term t) {
  auto r = std::make_shared<Rep>();
  r->kind = Kind::Mul;
  r->num = factor;
  r->a = t.rep_;
  return Term(std::move(r));
}

Value Term::eval(const Env& env) const {
  switch (rep_->kind) {
    case Kind::Literal:
      return rep_->num;
    case Kind::Variable: {
      auto it = env.find(rep_->name);
      if (it == env.end()) throw ContractViolation("unbound variable: " + rep_->name);
      return it->second;
    }
    case Kind::Placeholder:
      throw ContractViolation("placeholder evaluated outside a substitution body");
    case Kind::Add:
      return lhs().eval(env) + rhs().eval(env);
    case Kind::Sub:
      return lhs().eval(env) - rhs().eval(env);
    case Kind::Mul:
      return rep_->num * operand().eval(env);
  }
  throw ContractViolation("corrupt term");
}

Term Term::substitute_args(const std::vector<Term>& args) const {
  switch (rep_->kind) {
    case Kind::Literal:
    case Kind::Variable:
      return *this;
    case Kind::Placeholder:
      if (rep_->index >= args.size()) {
        throw ConstructionError("placeholder index exceeds parameter arity");
      }
      return args[rep_->index];
    case Kind::Add:
      return add(lhs().substitute_args(args), rhs().substitute_args(args));
    case Kind::Sub:
      return sub(lhs().substitute_args(args), rhs().substitute_args(args));
    case Kind::Mul:
      return mul(rep_->num, operand().substitute_args(args));
  }
  throw ContractViolation("corrupt term");
}

void Term::collect_vars(std::set<std::string>& out) const {
  switch (rep_->kind) {
    case Kind::Literal:
    case Kind::Placeholder:
      return;
    case Kind::Variable:
      out.insert(rep_->name);
      return;
    case Kind::Add:
    case Kind::Sub:
      lhs().collect_vars(out);
      rhs().collect_vars(out);
      return;
    case Kind::Mul:
      operand().collect_vars(out);
      return;
  }
}

bool Term::placeholders_below(std::size_t n) const {
  switch (rep_->kind) {
    case Kind::Literal:
    case Kind::Variable:
      return true;
    case Kind::Placeholder:
      return rep_->index < n;
    case Kind::Add:
    case Kind::Sub:
      return lhs().placeholders_below(n) && rhs().placeholders_below(n);
    case Kind::Mul:
      return operand().placeholders_below(n);
  }
  return false;
}

bool Term::has_placeholders() const {
  switch (rep_->kind) {
    case Kind::Literal:
    case Kind::Variable:
      return false;
    case Kind::Placeholder:
      return true;
    case Kind::Add:
    case Kind::Sub:
      return lhs().has_placeholders() || rhs().has_placeholders();
    case Kind::Mul:
      return operand().has_placeholders();
  }
  return false;
}

std::string Term::str() const {
  switch (rep_->kind) {
    case Kind::Literal:
      return rep_->num < 0 ? "(- " + std::to_string(-rep_->num) + ")"
                           : std::to_string(rep_->num);
    case Kind::Variable:
      return rep_->name;
    case Kind::Placeholder:
      return "v!" + std::to_string(rep_->index);
    case Kind::Add:
      return "(+ " + lhs().str() + " " + rhs().str() + ")";
    case Kind::Sub:
      return "(- " + lhs().str() + " " + rhs().str() + ")";
    case Kind::Mul:
      return "(* " + Term::lit(rep_->num).str() + " " + operand().str() + ")";
  }
  return "?";
}

bool operator==(const Term& a, const Term& b) {
  if (a.rep_ == b.rep_) return true;
  if (a.rep_->kind != b.rep_->kind) return false;
  switch (a.rep_->kind) {
    case Term::Kind::Literal:
      return a.rep_->num == b.rep_->num;
    case Term::Kind::Variable:
      return a.rep_->name == b.rep_->name;
    case Term::Kind::Placeholder:
      return a.rep_->index == b.rep_->index;
    case Term::Kind::Add:
    case Term::Kind::Sub:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case Term::Kind::Mul:
      return a.rep_->num == b.rep_->num && a.operand() == b.operand();
  }
  return false;
}

// ---- Constraint ----

Constraint::Constraint() : rep_(truth(true).rep_) {}

Constraint Constraint::truth(bool b) {
  auto r = std::make_shared<Rep>();
  r->kind = b ? Kind::True : Kind::False;
  return Constraint(std::move(r));
}

Constraint Constraint::compare(Cmp op, Term a, Term b) {
  auto r = std::make_shared<Rep>();
  r->kind = Kind::Compare;
  r->cmp = op;
  r->a = std::move(a);
  r->b = std::move(b);
  return Constraint(std::move(r));
}

Constraint Constraint::conj(std::vector<Constraint> cs) {
  if (cs.empty()) return truth(true);
  if (cs.size() == 1) return cs.front();
  auto r = std::make_shared<Rep>();
  r->kind = Kind::And;
  r->parts = std::move(cs);
  return Constraint(std::move(r));
}

Constraint Constraint::disj(std::vector<Constraint> cs) {
  if (cs.empty()) return truth(false);
  if (cs.size() == 1) return cs.front();
  auto r = std::make_shared<Rep>();
  r->kind = Kind::Or;
  r->parts = std::move(cs);
  return Constraint(std::move(r));
}

Constraint Constraint::negate(Constraint inner) {
  auto r = std::make_shared<Rep>();
  r->kind = Kind::Not;
  r->parts.push_back(std::move(inner));
  return Constraint(std::move(r));
}

Term Constraint::lhs() const { return *rep_->a; }
Term Constraint::rhs() const { return *rep_->b; }

bool Constraint::eval(const Env& env) const {
  switch (rep_->kind) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Compare: {
      Value a = lhs().eval(env);
      Value b = rhs().eval(env);
      switch (rep_->cmp) {
        case Cmp::Eq: return a == b;
        case Cmp::Ne: return a != b;
        case Cmp::Lt: return a < b;
        case Cmp::Le: return a <= b;
        case Cmp::Gt: return a > b;
        case Cmp::Ge: return a >= b;
      }
      return false;
    }
    case Kind::And:
      for (const Constraint& p : rep_->parts) {
        if (!p.eval(env)) return false;
      }
      return true;
    case Kind::Or:
      for (const Constraint& p : rep_->parts) {
        if (p.eval(env)) return true;
      }
      return false;
    case Kind::Not:
      return !inner().eval(env);
  }
  return false;
}

Constraint Constraint::substitute_args(const std::vector<Term>& args) const {
  switch (rep_->kind) {
    case Kind::True:
    case Kind::False:
      return *this;
    case Kind::Compare:
      return compare(rep_->cmp, lhs().substitute_args(args), rhs().substitute_args(args));
    case Kind::And:
    case Kind::Or: {
      std::vector<Constraint> parts;
      parts.reserve(rep_->parts.size());
      for (const Constraint& p : rep_->parts) parts.push_back(p.substitute_args(args));
      return rep_->kind == Kind::And ? conj(std::move(parts)) : disj(std::move(parts));
    }
    case Kind::Not:
      return negate(inner().substitute_args(args));
  }
  return *this;
}

void Constraint::collect_vars(std::set<std::string>& out) const {
  switch (rep_->kind) {
    case Kind::True:
    case Kind::False:
      return;
    case Kind::Compare:
      lhs().collect_vars(out);
      rhs().collect_vars(out);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Not:
      for (const Constraint& p : rep_->parts) p.collect_vars(out);
      return;
  }
}

bool Constraint::placeholders_below(std::size_t n) const {
  switch (rep_->kind) {
    case Kind::True:
    case Kind::False:
      return true;
    case Kind::Compare:
      return lhs().placeholders_below(n) && rhs().placeholders_below(n);
    case Kind::And:
    case Kind::Or:
    case Kind::Not:
      return std::all_of(rep_->parts.begin(), rep_->parts.end(),
                         [n](const Constraint& p) { return p.placeholders_below(n); });
  }
  return false;
}

bool Constraint::has_placeholders() const {
  switch (rep_->kind) {
    case Kind::True:
    case Kind::False:
      return false;
    case Kind::Compare:
      return lhs().has_placeholders() || rhs().has_placeholders();
    case Kind::And:
    case Kind::Or:
    case Kind::Not:
      return std::any_of(rep_->parts.begin(), rep_->parts.end(),
                         [](const Constraint& p) { return p.has_placeholders(); });
  }
  return false;
}

std::string Constraint::str() const {
  switch (rep_->kind) {
    case Kind::True:
      return "true";
    case Kind::False:
      return "false";
    case Kind::Compare: {
      const char* op = nullptr;
      switch (rep_->cmp) {
        case Cmp::Eq: op = "="; break;
        case Cmp::Ne: op = "distinct"; break;
        case Cmp::Lt: op = "<"; break;
        case Cmp::Le: op = "<="; break;
        case Cmp::Gt: op = ">"; break;
        case Cmp::Ge: op = ">="; break;
      }
      return std::string("(") + op + " " + lhs().str() + " " + rhs().str() + ")";
    }
    case Kind::And:
    case Kind::Or: {
      std::string s = rep_->kind == Kind::And ? "(and" : "(or";
      for (const Constraint& p : rep_->parts) s += " " + p.str();
      return s + ")";
    }
    case Kind::Not:
      return "(not " + inner().str() + ")";
  }
  return "?";
}

bool operator==(const Constraint& a, const Constraint& b) {
  if (a.rep_ == b.rep_) return true;
  if (a.rep_->kind != b.rep_->kind) return false;
  switch (a.rep_->kind) {
    case Constraint::Kind::True:
    case Constraint::Kind::False:
      return true;
    case Constraint::Kind::Compare:
      return a.rep_->cmp == b.rep_->cmp && a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case Constraint::Kind::And:
    case Constraint::Kind::Or:
    case Constraint::Kind::Not:
      return a.rep_->parts == b.rep_->parts;
  }
  return false;
}

// ---- Atom / Clause ----

std::string Atom::str() const {
  if (args.empty()) return relation;
  std::string s = "(" + relation;
  for (const Term& t : args) s += " " + t.str();
  return s + ")";
}

bool operator==(const Atom& a, const Atom& b) {
  return a.relation == b.relation && a.args == b.args;
}

std::string Clause::str() const {
  std::string s = head ? head->str() : "false";
  s += " <- ";
  for (const Atom& a : body) s += a.str() + " ";
  s += "| " + guard.str();
  return s;
}

bool operator==(const Clause& a, const Clause& b) {
  return a.head == b.head && a.body == b.body && a.guard == b.guard && a.vars == b.vars;
}

// ---- ClauseSet ----

const Sort* ClauseSet::find_sort(const std::string& name) const {
  for (const Sort& s : sorts) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const Relation* ClauseSet::find_relation(const std::string& name) const {
  for (const Relation& r : relations) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

bool ClauseSet::has_parameters() const {
  return std::any_of(relations.begin(), relations.end(), [](const Relation& r) {
    return r.kind == RelationKind::Parameter;
  });
}

std::vector<std::string> ClauseSet::parameter_names() const {
  std::vector<std::string> out;
  for (const Relation& r : relations) {
    if (r.kind == RelationKind::Parameter) out.push_back(r.name);
  }
  return out;
}

bool ClauseSet::parameters_in_bodies_only() const {
  for (const Clause& c : clauses) {
    if (!c.head) continue;
    const Relation* r = find_relation(c.head->relation);
    if (r != nullptr && r->kind == RelationKind::Parameter) return false;
  }
  return true;
}

void ClauseSet::validate() const {
  std::unordered_set<std::string> sort_names;
  for (const Sort& s : sorts) {
    if (!sort_names.insert(s.name).second) {
      throw ConstructionError("duplicate sort: " + s.name);
    }
    if (s.lo > s.hi) throw ConstructionError("empty domain for sort " + s.name);
  }
  std::unordered_set<std::string> rel_names;
  for (const Relation& r : relations) {
    if (!rel_names.insert(r.name).second) {
      throw ConstructionError("duplicate relation: " + r.name);
    }
    for (const std::string& s : r.arg_sorts) {
      if (find_sort(s) == nullptr) {
        throw ConstructionError("relation " + r.name + " uses unknown sort " + s);
      }
    }
  }
  for (const Clause& c : clauses) {
    std::unordered_set<std::string> var_names;
    for (const ClauseVar& v : c.vars) {
      if (!var_names.insert(v.name).second) {
        throw ConstructionError("duplicate variable " + v.name + " in clause " + c.name);
      }
      if (find_sort(v.sort) == nullptr) {
        throw ConstructionError("variable " + v.name + " has unknown sort " + v.sort);
      }
    }
    auto check_atom = [&](const Atom& a, bool is_head) {
      const Relation* r = find_relation(a.relation);
      if (r == nullptr) throw ConstructionError("unknown relation: " + a.relation);
      if (r->arity() != a.args.size()) {
        throw ConstructionError("arity mismatch for " + a.relation + " in clause " + c.name);
      }
      for (const Term& t : a.args) {
        if (t.has_placeholders()) {
          throw ConstructionError("placeholder used outside a substitution body");
        }
        std::set<std::string> vars;
        t.collect_vars(vars);
        for (const std::string& v : vars) {
          if (!var_names.contains(v)) {
            throw ConstructionError("undeclared variable " + v + " in clause " + c.name);
          }
        }
      }
      (void)is_head;
    };
    if (c.head) check_atom(*c.head, true);
    for (const Atom& a : c.body) check_atom(a, false);
    if (c.guard.has_placeholders()) {
      throw ConstructionError("placeholder used outside a substitution body");
    }
    std::set<std::string> guard_vars;
    c.guard.collect_vars(guard_vars);
    for (const std::string& v : guard_vars) {
      if (!var_names.contains(v)) {
        throw ConstructionError("undeclared variable " + v + " in clause " + c.name);
      }
    }
  }
}

std::string substitution_key(const Substitution& m) {
  std::string key;
  for (const auto& [name, constraint] : m) {
    key += name;
    key += "=";
    key += constraint.str();
    key += ";";
  }
  return key;
}

ClauseSet instantiate(const ClauseSet& hc, const Substitution& m) {
  for (const std::string& p : hc.parameter_names()) {
    if (!m.contains(p)) throw ConstructionError("substitution misses parameter " + p);
  }
  ClauseSet out;
  out.sorts = hc.sorts;
  for (const Relation& r : hc.relations) {
    if (r.kind == RelationKind::Symbol) out.relations.push_back(r);
  }
  for (const Clause& c : hc.clauses) {
    Clause nc;
    nc.name = c.name;
    nc.head = c.head;
    nc.vars = c.vars;
    std::vector<Constraint> guard_parts{c.guard};
    for (const Atom& a : c.body) {
      const Relation* r = hc.find_relation(a.relation);
      if (r != nullptr && r->kind == RelationKind::Parameter) {
        const Constraint& body = m.at(a.relation);
        if (!body.placeholders_below(r->arity())) {
          throw ConstructionError("substitution for " + a.relation +
                                  " uses a placeholder beyond its arity");
        }
        guard_parts.push_back(body.substitute_args(a.args));
      } else {
        nc.body.push_back(a);
      }
    }
    nc.guard = Constraint::conj(std::move(guard_parts));
    out.clauses.push_back(std::move(nc));
  }
  return out;
}

}  // namespace lattopt::chc
