// Compares the serial reference enumeration against the OpenMP parallel
// candidate-batch mode on a sweep of problems, checking on the way that both
// modes return identical solution sets.
//
//   lattopt_bench [threads] [repeat]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lattopt/powerset.hpp"
#include "lattopt/search.hpp"
#include "support/random_lattices.hpp"

using namespace lattopt;

namespace {

struct Case {
  std::string name;
  OptLattice lattice;
};

double run_ms(const OptLattice& l, const SearchConfig& cfg, std::size_t& solutions) {
  auto start = std::chrono::steady_clock::now();
  SearchOutcome out = maximal_feasible_objects(l, l.bottom(), cfg);
  solutions = out.nodes.size();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

OptLattice squares_case() {
  std::vector<std::int64_t> elements;
  for (int i = 0; i <= 16; ++i) elements.push_back(i);
  auto carrier = powerset(elements);
  return OptLattice::over(carrier)
      .with_score([](const Label& l) {
        BigInt total = 0;
        for (auto v : l.as_set()) total += v;
        return Score::integer(total);
      })
      .filter([](const Label& l) {
        const auto& s = l.as_set();
        for (std::int64_t x : s) {
          for (std::int64_t y : s) {
            if (y == x * x) return false;
          }
        }
        return true;
      });
}

// Wide, flat problem with an artificially slow oracle; this is where the
// parallel mode can win.
OptLattice wide_case(int bits, int spin) {
  std::vector<std::int64_t> elements;
  for (int i = 0; i < bits; ++i) elements.push_back(i);
  auto carrier = powerset(elements);
  const Lattice* c = carrier.get();
  std::vector<NodeRef> blockers;
  SeededRng rng(17);
  for (int i = 0; i < bits; ++i) blockers.push_back(c->random_node(rng));
  return OptLattice::over(std::move(carrier))
      .with_node_feasibility([c, blockers, spin](const NodeRef& n) {
        volatile long long sink = 0;
        for (int i = 0; i < spin; ++i) sink += i;
        (void)sink;
        for (const NodeRef& b : blockers) {
          if (c->order(b, n)) return false;
        }
        return true;
      });
}

}  // namespace

int main(int argc, char** argv) {
  int threads = argc > 1 ? std::atoi(argv[1]) : 4;
#ifdef _OPENMP
  if (threads > omp_get_max_threads()) threads = omp_get_max_threads();
#endif
  int repeat = argc > 2 ? std::atoi(argv[2]) : 3;

  std::vector<Case> cases;
  cases.push_back({"squares-17", squares_case()});
  cases.push_back({"wide-14-spin", wide_case(14, 20000)});
  cases.push_back({"wide-16-spin", wide_case(16, 20000)});
  testing::SeededRng rng(5);
  for (int i = 0; i < 3; ++i) {
    auto carrier = testing::random_carrier(rng);
    cases.push_back({"random-" + std::to_string(i), testing::random_problem(carrier, rng)});
  }

  std::printf("%-16s %10s %12s %12s %8s %10s\n", "case", "solutions", "serial(ms)",
              "parallel(ms)", "speedup", "agree");
  for (const Case& c : cases) {
    SearchConfig serial;
    serial.seed = 42;
    SearchConfig parallel = serial;
    parallel.threads = threads;

    double best_serial = 1e100;
    double best_parallel = 1e100;
    std::size_t n_serial = 0;
    std::size_t n_parallel = 0;
    for (int r = 0; r < repeat; ++r) {
      best_serial = std::min(best_serial, run_ms(c.lattice, serial, n_serial));
      best_parallel = std::min(best_parallel, run_ms(c.lattice, parallel, n_parallel));
    }
    bool agree = maximal_feasible_objects(c.lattice, c.lattice.bottom(), serial).nodes ==
                 maximal_feasible_objects(c.lattice, c.lattice.bottom(), parallel).nodes;
    std::printf("%-16s %10zu %12.2f %12.2f %8.2f %10s\n", c.name.c_str(), n_serial, best_serial,
                best_parallel, best_serial / best_parallel, agree ? "yes" : "NO");
    if (!agree) return 1;
  }
  return 0;
}
