#include "clgrp/analytic.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <optional>

#include "clgrp/error.hpp"
#include "clgrp/ideal.hpp"
#include "clgrp/lattice.hpp"
#include "clgrp/linalg.hpp"

namespace clgrp {

namespace {

constexpr mpfr_prec_t kResiduePrec = 128;
constexpr std::size_t kChunk = 256;

bool divides_index(const NumberField& field, std::uint64_t p) {
  return mpz_divisible_ui_p(field.index().get_mpz_t(), static_cast<unsigned long>(p)) != 0;
}

Interval chunk_product(const NumberField& field, const std::vector<std::uint64_t>& primes, std::size_t lo,
                       std::size_t hi) {
  Interval acc(Integer(1), kResiduePrec);
  for (std::size_t i = lo; i < hi; ++i)
    if (!divides_index(field, primes[i])) acc *= Interval(euler_factor(field, primes[i]), kResiduePrec);
  return acc;
}

std::vector<std::uint64_t> skipped_primes(const NumberField& field, const std::vector<std::uint64_t>& primes) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : primes)
    if (divides_index(field, p)) out.push_back(p);
  return out;
}

}  // namespace

std::uint64_t default_prime_bound(const NumberField& field) {
  return std::max<std::uint64_t>(10000, bach_bound(field).get_ui());
}

Rational euler_factor(const NumberField& field, std::uint64_t p) {
  if (divides_index(field, p)) throw Error(ErrorCode::IndexDivisor, "prime " + std::to_string(p) + " divides the index");
  ModField F{p};
  Integer P(static_cast<unsigned long>(p));
  Rational f(P - 1, P);
  for (int deg : distinct_factor_degrees(mod_poly(field.poly(), F), F)) {
    Integer q;
    mpz_pow_ui(q.get_mpz_t(), P.get_mpz_t(), static_cast<unsigned long>(deg));
    f *= Rational(q, q - 1);
  }
  f.canonicalize();
  return f;
}

EulerProduct euler_residue(const NumberField& field, std::uint64_t prime_bound, int threads) {
  if (prime_bound < 2) throw Error(ErrorCode::InputError, "prime bound must be at least 2");
  auto primes = primes_up_to(prime_bound);
  const std::size_t chunks = (primes.size() + kChunk - 1) / kChunk;
  std::vector<Interval> partial(chunks, Interval(kResiduePrec));
  int t = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(t)
  for (std::size_t c = 0; c < chunks; ++c)
    partial[c] = chunk_product(field, primes, c * kChunk, std::min(primes.size(), (c + 1) * kChunk));
  Interval acc(Integer(1), kResiduePrec);
  for (const auto& x : partial) acc *= x;
  return {acc, prime_bound, skipped_primes(field, primes)};
}

EulerProduct euler_residue_serial(const NumberField& field, std::uint64_t prime_bound) {
  if (prime_bound < 2) throw Error(ErrorCode::InputError, "prime bound must be at least 2");
  auto primes = primes_up_to(prime_bound);
  return {chunk_product(field, primes, 0, primes.size()), prime_bound, skipped_primes(field, primes)};
}

std::vector<Interval> log_embedding(const NumberField& field, const AlgebraicNumber& x, mpfr_prec_t bits) {
  auto conj = field.conjugates(x, bits);
  const int r1 = field.signature().r1;
  std::vector<Interval> out;
  for (std::size_t i = 0; i < conj.size(); ++i) {
    Interval l = log(norm2(conj[i]));
    if (static_cast<int>(i) < r1) {
      Interval half(Rational(1, 2), l.prec());
      l *= half;
    }
    out.push_back(std::move(l));
  }
  return out;
}

namespace {

using LogVector = std::vector<Interval>;

struct MergeFailure {};

Interval sq_norm(const LogVector& v) {
  Interval acc(v.front().prec());
  for (const auto& x : v) acc += sqr(x);
  return acc;
}

LogVector combine(const std::vector<LogVector>& vs, const IntVector& c) {
  const mpfr_prec_t prec = vs.front().front().prec();
  LogVector w(vs.front().size(), Interval(prec));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (c[i] == 0) continue;
    Interval ci(c[i], prec);
    for (std::size_t t = 0; t < w.size(); ++t) w[t] += ci * vs[i][t];
  }
  return w;
}

// vs is an independent family plus one new vector. An integer dependency is searched
// by LLL on [2^s v_i | e_i]; when one exists (log part below `tiny`) the family is
// rebuilt from the other rows of a unimodular matrix having it as a row.
std::vector<LogVector> merge(std::vector<LogVector> vs, long s, const Real& tiny) {
  const std::size_t m = vs.size();
  const std::size_t r = vs.front().size();
  const mpfr_prec_t prec = vs.front().front().prec();
  IntMatrix basis(r + m, m);
  Real scale = pow2(s, prec);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < r; ++i) basis(i, j) = (vs[j][i].mid() * scale).round();
    basis(r + j, j) = 1;
  }
  GramReduction red = lll_gram(gram_of(basis));
  std::optional<IntVector> dep;
  for (std::size_t j = 0; j < m && !dep; ++j) {
    IntVector c(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = red.U(i, j);
    Interval n2 = sq_norm(combine(vs, c));
    if (n2.upper() < tiny) dep = c;
    else if (!(n2.lower() > tiny)) throw MergeFailure{};
  }
  if (!dep) {
    if (m > r) throw MergeFailure{};
    return vs;
  }
  IntMatrix col(m, 1);
  for (std::size_t i = 0; i < m; ++i) col(i, 0) = (*dep)[i];
  HnfResult h = hnf_with_transform(col);
  if (abs(h.H(0, 0)) != 1) throw MergeFailure{};
  IntMatrix T;
  if (!to_integer(inverse(to_rational(h.U)).transpose(), T)) throw MergeFailure{};
  std::vector<LogVector> out;
  for (std::size_t j = 0; j < m; ++j) {
    IntVector row(m);
    for (std::size_t i = 0; i < m; ++i) row[i] = T(j, i);
    if (row == *dep || row == IntVector(dep->size())) continue;
    bool neg = true;
    for (std::size_t i = 0; i < m; ++i)
      if (row[i] != -(*dep)[i]) neg = false;
    if (neg) continue;
    LogVector w = combine(vs, row);
    if (sq_norm(w).upper() < tiny) continue;
    out.push_back(std::move(w));
  }
  if (out.size() != m - 1) throw MergeFailure{};
  return out;
}

Interval abs_det(std::vector<std::vector<Interval>> a) {
  // Gaussian elimination with the largest-magnitude pivot.
  const std::size_t n = a.size();
  const mpfr_prec_t prec = a[0][0].prec();
  Interval det(Integer(1), prec);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (a[i][k].mig() > a[piv][k].mig()) piv = i;
    if (a[piv][k].contains_zero()) throw Error(ErrorCode::ZeroVolume, "unit log vectors are dependent");
    std::swap(a[piv], a[k]);
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      Interval f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return abs(det);
}

}  // namespace

RegulatorResult regulator_from_kernel(const NumberField& field, const std::vector<IntVector>& kernel,
                                      const std::vector<AlgebraicNumber>& generators) {
  const int r = field.unit_rank();
  RegulatorResult res;
  if (r == 0) {
    res.value = Interval(Integer(1), 64);
    return res;
  }
  std::size_t coeff_bits = 1;
  std::vector<bool> needed(generators.size(), false);
  for (const auto& v : kernel)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) {
        needed[j] = true;
        coeff_bits = std::max(coeff_bits, mpz_sizeinbase(v[j].get_mpz_t(), 2));
      }
  long s = 64;
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(192 + coeff_bits + 2 * std::log2(generators.size() + 2.0));
  for (int attempt = 0; attempt < 6; ++attempt, prec *= 2, s *= 2) {
    std::vector<LogVector> logs(generators.size());
    for (std::size_t j = 0; j < generators.size(); ++j)
      if (needed[j]) {
        LogVector full = log_embedding(field, generators[j], prec);
        logs[j].assign(full.begin(), full.begin() + r);
      }
    const mpfr_prec_t wp = [&] {
      for (std::size_t j = 0; j < logs.size(); ++j)
        if (needed[j]) return logs[j].front().prec();
      return prec;
    }();
    Real tiny = pow2(-20, wp);
    Real slack = pow2(-(s + 16), wp);
    try {
      std::vector<LogVector> basis;
      bool precise = true;
      for (const auto& v : kernel) {
        LogVector u(static_cast<std::size_t>(r), Interval(wp));
        for (std::size_t j = 0; j < v.size(); ++j) {
          if (v[j] == 0) continue;
          Interval c(v[j], wp);
          for (int t = 0; t < r; ++t) u[static_cast<std::size_t>(t)] += c * logs[j][static_cast<std::size_t>(t)];
        }
        for (const auto& x : u)
          if (x.width() > slack) precise = false;
        if (!precise) break;
        if (sq_norm(u).upper() < tiny) continue;
        basis.push_back(std::move(u));
        if (basis.size() >= 2) basis = merge(std::move(basis), s, tiny);
      }
      if (!precise) continue;
      if (basis.size() < static_cast<std::size_t>(r))
        throw Error(ErrorCode::ZeroVolume, "kernel yields " + std::to_string(basis.size()) +
                                               " independent units, need " + std::to_string(r));
      res.value = abs_det(basis);
      res.basis = std::move(basis);
      res.precision = wp;
      return res;
    } catch (const MergeFailure&) {
      continue;
    }
  }
  throw Error(ErrorCode::PrecisionExhausted, "regulator not certified at the maximum working precision");
}

RegulatorResult regulator_from_kernel(const NumberField& field, const std::vector<IntVector>& kernel,
                                      const RelationMatrix& relations) {
  std::vector<AlgebraicNumber> gens;
  for (const auto& row : relations.rows) gens.push_back(row.generator);
  return regulator_from_kernel(field, kernel, gens);
}

int count_roots_of_unity(const NumberField& field) {
  const int n = field.degree();
  if (field.signature().r1 > 0) return 2;
  const long s = 64;
  LatticeBasis lb = ideal_lattice(field, unit_ideal(field), s);
  Integer bound = (Integer(2 * n + 1) << (2 * s)) / 2;
  // Largest k with phi(k) <= n.
  auto phi = [](int k) {
    int r = k;
    for (int p = 2; p * p <= k; ++p)
      if (k % p == 0) {
        while (k % p == 0) k /= p;
        r -= r / p;
      }
    if (k > 1) r -= r / k;
    return r;
  };
  int kmax = 1;
  for (int k = 1; k <= 4 * n * n + 10; ++k)
    if (phi(k) <= n) kmax = k;
  int w = 0;
  for (const auto& c : enumerate_ball(gram_of(lb.basis), bound)) {
    AlgebraicNumber x = field.from_integers(c);
    AlgebraicNumber p = x;
    for (int k = 1; k <= kmax; ++k) {
      if (p.coords == field.one().coords) {
        w += 2;
        break;
      }
      p = field.mul(p, x);
    }
  }
  return w;
}

AnalyticData analytic_data(const NumberField& field, std::uint64_t prime_bound, int threads) {
  EulerProduct e = euler_residue(field, prime_bound, threads);
  AnalyticData a;
  a.residue = e.value;
  a.prime_bound = e.prime_bound;
  a.skipped = e.skipped;
  a.w = count_roots_of_unity(field);
  a.unit_rank = field.unit_rank();
  return a;
}

std::string to_string(Verdict v) { return v == Verdict::Accept ? "ACCEPT" : "REJECT"; }

Verification verify(const Integer& h, const Interval& regulator, const AnalyticData& analytic,
                    const NumberField& field) {
  const mpfr_prec_t p = kResiduePrec;
  const auto sig = field.signature();
  Interval num(Integer(Integer(h) << sig.r1), p);
  Interval two_pi = Interval::pi(p) * Interval(Integer(2), p);
  for (int i = 0; i < sig.r2; ++i) num *= two_pi;
  num *= regulator;
  Interval den(Integer(analytic.w), p);
  den *= sqrt(Interval(Integer(abs(field.discriminant())), p));
  den *= analytic.residue;
  Verification v;
  v.ratio = num / den;
  Interval lo = sqrt(Interval(Rational(1, 2), p));
  Interval hi = sqrt(Interval(Integer(2), p));
  bool inside = v.ratio.lower() > lo.upper() && v.ratio.upper() < hi.lower();
  v.verdict = inside ? Verdict::Accept : Verdict::Reject;
  return v;
}

}  // namespace clgrp
