// Serial vs OpenMP kernels: pre, eval_atl, the strategy oracle and the axiom sweep.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include <omp.h>

#include "atlstit/atl_mc.hpp"
#include "atlstit/bridge.hpp"

using namespace atlstit;

namespace {

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s %10.2f ms %10.2f ms %7.2fx  %s\n", name, serial, parallel, serial / parallel,
              same ? "same result" : "RESULTS DIFFER");
}

}  // namespace

int main() {
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %13s %13s %8s\n", "kernel", "serial", "parallel", "speedup");

  const Cgs big = random_cgs({20000, 3, 3, 2, 1});
  const StateSet target = big.valuation("p");
  StateSet a, b;
  row("pre (20000 states, 3 agents)", best_of(5, [&] { a = pre(big, {"a", "b"}, target, Exec::Serial); }),
      best_of(5, [&] { b = pre(big, {"a", "b"}, target, Exec::Parallel); }), a == b);

  const AtlFormula f = parse_atl("<<a>> G (p | <<b,c>> (q U <<a>> X p))");
  row("eval_atl nested G/U", best_of(3, [&] { a = eval_atl(big, f, Exec::Serial); }),
      best_of(3, [&] { b = eval_atl(big, f, Exec::Parallel); }), a == b);

  const Cgs small = random_cgs({6, 2, 3, 2, 2});
  const AtlFormula g = parse_atl("<<a,b>> (p U <<a>> G q)");
  OracleOptions par;
  par.exec = Exec::Parallel;
  row("oracle (6 states)", best_of(1, [&] { a = eval_atl_oracle(small, g); }),
      best_of(1, [&] { b = eval_atl_oracle(small, g, par); }), a == b);

  std::vector<Cgs> models;
  for (std::uint64_t i = 0; i < 64; ++i) models.push_back(random_cgs({3, 2, 2, 2, 100 + i}));
  const auto insts = default_instantiations({"a", "b"});
  SweepOptions so;
  so.lasso_samples = 2;
  std::size_t ca = 0, cb = 0;
  const double ts = best_of(1, [&] { ca = axiom_sweep(models, insts, so).checked; });
  so.exec = Exec::Parallel;
  const double tp = best_of(1, [&] { cb = axiom_sweep(models, insts, so).checked; });
  row("axiom sweep (64 models)", ts, tp, ca == cb);
  return 0;
}
