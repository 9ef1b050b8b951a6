#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <omp.h>

#include "clgrp/analytic.hpp"
#include "clgrp/ideal.hpp"
#include "clgrp/relations.hpp"

using namespace clgrp;

namespace {

template <class F>
double seconds(F&& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

IntPolynomial quadratic(long c0, long c1) {
  IntPolynomial t;
  t.coefficients = {Integer(c0), Integer(c1), Integer(1)};
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  int threads = argc > 1 ? std::atoi(argv[1]) : omp_get_max_threads();
  int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("threads %d (hardware %d), best of %d\n", threads, omp_get_num_procs(), reps);

  auto field = NumberField::parse(quadratic(2499, -1), std::nullopt);
  FactorBase fb = build_factor_base(*field, 1018);
  CollectionConfig cfg;
  cfg.bound_B = fb.bound_B;
  cfg.multiplier_K = 4;
  cfg.threads = threads;

  RelationMatrix par, ser;
  double tp = seconds([&] { par = collect(*field, fb, cfg); }, reps);
  double ts = seconds([&] { ser = collect_serial(*field, fb, cfg); }, reps);
  bool same = par.rows.size() == ser.rows.size();
  for (std::size_t i = 0; same && i < par.rows.size(); ++i) same = par.rows[i].exponents == ser.rows[i].exponents;
  std::printf("relation trials  disc %s  %ld trials  serial %.3f s  parallel %.3f s  speedup %.2f  %s\n",
              to_decimal(field->discriminant()).c_str(), par.stats.trials, ts, tp, ts / tp,
              same ? "identical" : "MISMATCH");

  auto cubic = NumberField::parse([] {
    IntPolynomial t;
    t.coefficients = {Integer(-1), Integer(-1), Integer(0), Integer(1)};
    return t;
  }(), std::nullopt);
  const std::uint64_t bound = 2000000;
  EulerProduct ep, es;
  double ep_t = seconds([&] { ep = euler_residue(*cubic, bound, threads); }, reps);
  double es_t = seconds([&] { es = euler_residue_serial(*cubic, bound); }, reps);
  Interval diff = ep.value - es.value;
  std::printf("euler product    x^3-x-1  primes <= %llu  serial %.3f s  parallel %.3f s  speedup %.2f  |diff| <= %s\n",
              static_cast<unsigned long long>(bound), es_t, ep_t, es_t / ep_t, diff.mag().to_string(3).c_str());
  return same ? 0 : 1;
}
