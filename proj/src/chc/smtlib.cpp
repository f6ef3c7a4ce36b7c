#include "lattopt/chc/smtlib.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lattopt/errors.hpp"

namespace lattopt::chc {

namespace {

void require_simple_symbol(const std::string& name) {
  if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0]))) {
    throw ConstructionError("relation or variable name is not a simple SMT-LIB symbol: " + name);
  }
  for (char c : name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
          c == '!')) {
      throw ConstructionError("relation or variable name is not a simple SMT-LIB symbol: " +
                              name);
    }
  }
}

}  // namespace

std::string emit_smtlib_horn(const ClauseSet& ground) {
  ground.validate();
  if (ground.has_parameters()) {
    throw ConstructionError("horn emission needs a ground clause set");
  }
  std::ostringstream out;
  out << "(set-logic HORN)\n";
  for (const Relation& r : ground.relations) {
    require_simple_symbol(r.name);
    out << "(declare-fun " << r.name << " (";
    for (std::size_t i = 0; i < r.arity(); ++i) {
      if (i > 0) out << " ";
      out << "Int";
    }
    out << ") Bool)\n";
  }
  for (const Clause& c : ground.clauses) {
    // Implication body: the guard, the domain range of every clause
    // variable, then the body atoms, all conjoined in that order.
    std::vector<std::string> conjuncts;
    conjuncts.push_back(c.guard.str());
    for (const ClauseVar& v : c.vars) {
      require_simple_symbol(v.name);
      const Sort* s = ground.find_sort(v.sort);
      conjuncts.push_back("(>= " + v.name + " " + Term::lit(s->lo).str() + ")");
      conjuncts.push_back("(<= " + v.name + " " + Term::lit(s->hi).str() + ")");
    }
    for (const Atom& a : c.body) conjuncts.push_back(a.str());
    std::string body;
    if (conjuncts.size() == 1) {
      body = conjuncts.front();
    } else {
      body = "(and";
      for (const std::string& s : conjuncts) body += " " + s;
      body += ")";
    }
    std::string head = c.head ? c.head->str() : "false";
    std::string implication = "(=> " + body + " " + head + ")";
    if (c.vars.empty()) {
      out << "(assert " << implication << ")\n";
    } else {
      out << "(assert (forall (";
      for (std::size_t i = 0; i < c.vars.size(); ++i) {
        if (i > 0) out << " ";
        out << "(" << c.vars[i].name << " Int)";
      }
      out << ") " << implication << "))\n";
    }
  }
  out << "(check-sat)\n";
  return out.str();
}

VerdictKind external_solve(const ClauseSet& ground, const ExternalSolver& solver) {
  const std::string placeholder = "{file}";
  auto pos = solver.command.find(placeholder);
  if (pos == std::string::npos) {
    throw SolverError("external solver command must contain the {file} placeholder");
  }

  std::string text = emit_smtlib_horn(ground);

  char path_template[] = "/tmp/lattopt-horn-XXXXXX.smt2";
  int fd = mkstemps(path_template, 5);
  if (fd < 0) throw SolverError("cannot create a temporary problem file");
  std::string path(path_template);
  {
    std::ofstream f(path);
    f << text;
  }
  close(fd);

  std::string command = solver.command;
  command.replace(pos, placeholder.size(), path);
  long timeout = std::max(1L, static_cast<long>(solver.timeout_seconds + 0.999));
  std::string full = "timeout " + std::to_string(timeout) + " " + command + " 2>/dev/null";

  std::string answer;
  FILE* pipe = popen(full.c_str(), "r");
  if (pipe == nullptr) {
    std::filesystem::remove(path);
    throw SolverError("cannot launch external solver");
  }
  std::array<char, 256> buf;
  std::string line;
  bool have_answer = false;
  while (fgets(buf.data(), buf.size(), pipe) != nullptr && !have_answer) {
    line += buf.data();
    if (line.empty() || line.back() != '\n') continue;
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    if (!line.empty() && line[0] != ';') {
      answer = line;
      have_answer = true;
    }
    line.clear();
  }
  int status = pclose(pipe);
  std::filesystem::remove(path);

  if (status != 0) {
    if (WIFEXITED(status) && WEXITSTATUS(status) == 124) {
      throw SolverError("external solver timed out");
    }
    throw SolverError("external solver exited with a failure status");
  }
  if (answer == "sat") return VerdictKind::Sat;
  if (answer == "unsat") return VerdictKind::Unsat;
  if (answer == "unknown") return VerdictKind::Unknown;
  throw SolverError("unparseable external solver output: '" + answer + "'");
}

}  // namespace lattopt::chc
