#include "clgrp/ideal.hpp"

#include <algorithm>
#include <cmath>

#include "clgrp/error.hpp"
#include "clgrp/linalg.hpp"
#include "clgrp/smoothness.hpp"

namespace clgrp {

namespace {

Integer to_int(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

Integer diag_product(const IntMatrix& h) {
  Integer d = 1;
  for (std::size_t i = 0; i < h.rows(); ++i) d *= h(i, i);
  return d;
}

Ideal from_hnf(IntMatrix h) {
  Integer norm = diag_product(h);
  return {std::move(h), norm};
}

IntVector integral_coords(const AlgebraicNumber& x) {
  IntVector out;
  for (const auto& q : x.coords) {
    if (q.get_den() != 1) throw Error(ErrorCode::InputError, "element is not integral");
    out.push_back(q.get_num());
  }
  return out;
}

// Lift a polynomial mod p (coefficients in [0, p)) to an integral element.
IntVector lift_to_element(const NumberField& field, const ModPoly& g) {
  QPoly q;
  for (auto c : g) q.emplace_back(to_int(c));
  trim(q);
  QPoly r = poly_mod(q, field.poly().to_q());
  RatVector pb(field.degree());
  for (std::size_t i = 0; i < r.size(); ++i) pb[i] = r[i];
  return integral_coords(field.from_power_basis(pb));
}

IntMatrix mult_matrix_int(const NumberField& field, const IntVector& x) {
  const int n = field.degree();
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    const IntMatrix& mi = field.mult_matrix(i);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) += x[i] * mi(r, c);
  }
  return m;
}

void append_columns(IntMatrix& gens, const IntMatrix& block) {
  IntMatrix out(block.rows(), gens.cols() + block.cols());
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < gens.cols(); ++j) out(i, j) = gens(i, j);
    for (std::size_t j = 0; j < block.cols(); ++j) out(i, gens.cols() + j) = block(i, j);
  }
  gens = std::move(out);
}

bool all_divisible(const IntMatrix& m, const Integer& p) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!mpz_divisible_p(m(i, j).get_mpz_t(), p.get_mpz_t())) return false;
  return true;
}

}  // namespace

std::vector<PrimeIdeal> factor_prime(std::uint64_t p, const NumberField& field) {
  if (mpz_divisible_ui_p(field.index().get_mpz_t(), static_cast<unsigned long>(p)))
    throw Error(ErrorCode::IndexDivisor, "prime " + std::to_string(p) + " divides the index");
  ModField f{p};
  ModPoly t = mod_poly(field.poly(), f);
  std::vector<PrimeIdeal> out;
  for (const auto& [g, e] : factor_mod_p(t, f)) {
    PrimeIdeal P;
    P.p = p;
    P.gen_poly = g;
    P.ram_e = e;
    P.res_f = degree(g);
    mpz_ui_pow_ui(P.norm.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(P.res_f));
    P.alpha = lift_to_element(field, g);
    P.beta = lift_to_element(field, mod_divmod(t, g, f).first);
    IntVector pe(field.degree());
    pe = integral_coords(field.one());
    for (auto& c : pe) c *= to_int(p);
    Ideal I = ideal_from_generators(field, {pe, P.alpha});
    if (I.norm != P.norm) throw std::logic_error("prime ideal norm mismatch");
    P.hnf_basis = I.hnf;
    out.push_back(std::move(P));
  }
  int total = 0;
  for (const auto& P : out) total += P.ram_e * P.res_f;
  if (total != field.degree()) throw std::logic_error("sum e f != n");
  return out;
}

Integer bach_bound(const NumberField& field) {
  double l = field.log_abs_disc();
  Integer b;
  mpz_set_d(b.get_mpz_t(), std::ceil(12.0 * l * l));
  return b;
}

FactorBase build_factor_base(const NumberField& field, std::uint64_t bound, double landau_band) {
  if (bound < 2) throw Error(ErrorCode::EmptyFactorBase, "no prime ideal has norm <= " + std::to_string(bound));
  FactorBase fb;
  fb.bound_B = bound;
  std::vector<std::uint64_t> bad;
  for (std::uint64_t p : primes_up_to(bound)) {
    if (mpz_divisible_ui_p(field.index().get_mpz_t(), static_cast<unsigned long>(p))) {
      bad.push_back(p);
      continue;
    }
    for (auto& P : factor_prime(p, field))
      if (P.norm <= to_int(bound)) fb.primes.push_back(std::move(P));
  }
  if (!bad.empty()) {
    std::string list;
    for (auto p : bad) list += (list.empty() ? "" : ",") + std::to_string(p);
    throw Error(ErrorCode::IndexDivisor, "index divisors in factor base range: " + list);
  }
  if (fb.primes.empty()) throw Error(ErrorCode::EmptyFactorBase, "no prime ideal has norm <= " + std::to_string(bound));
  std::stable_sort(fb.primes.begin(), fb.primes.end(),
                   [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.norm < b.norm; });
  for (std::size_t i = 0; i < fb.primes.size(); ++i) fb.by_p[fb.primes[i].p].push_back(i);
  fb.bach_bound = bach_bound(field);
  fb.bach_prefix = static_cast<std::size_t>(
      std::count_if(fb.primes.begin(), fb.primes.end(), [&](const PrimeIdeal& P) { return P.norm <= fb.bach_bound; }));
  double expected = static_cast<double>(bound) / std::log(static_cast<double>(bound));
  fb.landau_ratio = static_cast<double>(fb.primes.size()) / expected;
  fb.landau_in_band = std::fabs(fb.landau_ratio - 1.0) <= landau_band;
  return fb;
}

Ideal unit_ideal(const NumberField& field) { return from_hnf(IntMatrix::identity(field.degree())); }

Ideal ideal_from_generators(const NumberField& field, const std::vector<IntVector>& gens) {
  IntMatrix all(field.degree(), 0);
  for (const auto& g : gens) append_columns(all, mult_matrix_int(field, g));
  return from_hnf(column_hnf(all));
}

Ideal principal_ideal(const NumberField& field, const AlgebraicNumber& x) {
  if (x.is_zero()) throw Error(ErrorCode::InputError, "zero ideal");
  return from_hnf(column_hnf(mult_matrix_int(field, integral_coords(x))));
}

Ideal multiply(const NumberField& field, const Ideal& a, const Ideal& b) {
  const int n = field.degree();
  IntMatrix gens(n, 0);
  for (int j = 0; j < n; ++j) append_columns(gens, mult_matrix_int(field, a.hnf.col(j)) * b.hnf);
  Ideal out = from_hnf(column_hnf(gens));
  return out;
}

Ideal multiply_prime(const NumberField& field, const Ideal& a, const PrimeIdeal& P) {
  IntMatrix gens = a.hnf;
  for (std::size_t i = 0; i < gens.rows(); ++i)
    for (std::size_t j = 0; j < gens.cols(); ++j) gens(i, j) *= to_int(P.p);
  append_columns(gens, mult_matrix_int(field, P.alpha) * a.hnf);
  return from_hnf(column_hnf(gens));
}

Ideal ideal_from_power_product(const NumberField& field, const FactorBase& fb, const std::vector<std::size_t>& indices,
                               const std::vector<int>& exponents) {
  if (indices.size() != exponents.size()) throw Error(ErrorCode::InputError, "indices/exponents length mismatch");
  Ideal acc = unit_ideal(field);
  Integer expected = 1;
  for (std::size_t t = 0; t < indices.size(); ++t) {
    if (indices[t] >= fb.size()) throw Error(ErrorCode::InputError, "factor base index out of range");
    if (exponents[t] < 0) throw Error(ErrorCode::InputError, "negative exponent");
    const PrimeIdeal& P = fb.primes[indices[t]];
    for (int k = 0; k < exponents[t]; ++k) {
      acc = multiply_prime(field, acc, P);
      expected *= P.norm;
    }
  }
  if (acc.norm != expected) throw std::logic_error("power product norm mismatch");
  return acc;
}

Ideal cofactor_ideal(const NumberField& field, const AlgebraicNumber& x, const std::vector<const PrimeIdeal*>& primes,
                     const std::vector<int>& exponents) {
  Ideal c = principal_ideal(field, x);
  Integer q = 1;
  for (std::size_t t = 0; t < primes.size(); ++t) {
    const PrimeIdeal& P = *primes[t];
    IntMatrix mb = mult_matrix_int(field, P.beta);
    for (int k = 0; k < exponents[t]; ++k) {
      IntMatrix gens = c.hnf;
      for (std::size_t i = 0; i < gens.rows(); ++i)
        for (std::size_t j = 0; j < gens.cols(); ++j) gens(i, j) *= to_int(P.p);
      append_columns(gens, mb * c.hnf);
      c = from_hnf(column_hnf(gens));
      q *= to_int(P.p);
    }
  }
  if (!all_divisible(c.hnf, q)) throw Error(ErrorCode::InputError, "element is not in the ideal");
  IntMatrix h = c.hnf;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) mpz_divexact(h(i, j).get_mpz_t(), h(i, j).get_mpz_t(), q.get_mpz_t());
  return from_hnf(std::move(h));
}

bool contains(const Ideal& a, const IntVector& x) { return solve_upper(a.hnf, x); }

int valuation(const NumberField& field, const Ideal& a, const PrimeIdeal& P) {
  IntMatrix mb = mult_matrix_int(field, P.beta);
  Integer p = to_int(P.p);
  IntMatrix cur = a.hnf;
  int v = 0;
  // v_P(a) f(P) <= v_p(N(a)); exceeding it means the order is not maximal at p.
  const long cap = static_cast<long>(mpz_remove(Integer().get_mpz_t(), a.norm.get_mpz_t(), p.get_mpz_t())) / P.res_f;
  while (true) {
    IntMatrix next = mb * cur;
    if (!all_divisible(next, p)) return v;
    if (v >= cap)
      throw Error(ErrorCode::IndexDivisor, "equation order is not maximal at " + std::to_string(P.p));
    for (std::size_t i = 0; i < next.rows(); ++i)
      for (std::size_t j = 0; j < next.cols(); ++j)
        mpz_divexact(next(i, j).get_mpz_t(), next(i, j).get_mpz_t(), p.get_mpz_t());
    cur = column_hnf(next);
    ++v;
  }
}

int valuation(const NumberField& field, const AlgebraicNumber& x, const PrimeIdeal& P) {
  if (x.is_zero()) throw Error(ErrorCode::InputError, "valuation of zero");
  Integer den = 1;
  for (const auto& q : x.coords) den = lcm(den, Integer(q.get_den()));
  IntVector num;
  for (const auto& q : x.coords) num.push_back(Integer(q * den));
  IntMatrix mb = mult_matrix_int(field, P.beta);
  Integer p = to_int(P.p);
  auto val_int = [&](IntVector cur) {
    int v = 0;
    while (true) {
      IntVector next = mat_vec(mb, cur);
      bool div = std::all_of(next.begin(), next.end(),
                             [&](const Integer& c) { return mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t()) != 0; });
      if (!div) return v;
      for (auto& c : next) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
      cur = std::move(next);
      ++v;
    }
  };
  int v = val_int(num);
  if (den != 1) {
    int vp_den = 0;
    Integer d = den;
    while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) {
      d /= p;
      ++vp_den;
    }
    v -= vp_den * P.ram_e;
  }
  return v;
}

LatticeBasis ideal_lattice(const NumberField& field, const Ideal& a, long scale_bits) {
  const int n = field.degree();
  std::size_t entry_bits = 1;
  for (std::size_t i = 0; i < a.hnf.rows(); ++i)
    for (std::size_t j = 0; j < a.hnf.cols(); ++j)
      entry_bits = std::max(entry_bits, mpz_sizeinbase(a.hnf(i, j).get_mpz_t(), 2));
  mpfr_prec_t w = static_cast<mpfr_prec_t>(scale_bits) + 64 + static_cast<mpfr_prec_t>(entry_bits) + 4 * n;
  for (int attempt = 0; attempt < 5; ++attempt, w *= 2) {
    std::vector<std::vector<Interval>> emb;
    for (int i = 0; i < n; ++i) {
      IntVector e(n);
      e[i] = 1;
      emb.push_back(field.embedding(field.from_integers(e), w));
    }
    mpfr_prec_t wp = emb[0][0].prec();
    Interval scale(Real(pow2(scale_bits, wp)), Real(pow2(scale_bits, wp)));
    Real quarter(0.25, wp);
    IntMatrix out(n, n);
    bool ok = true;
    for (int j = 0; j < n && ok; ++j)
      for (int t = 0; t < n && ok; ++t) {
        Interval acc(wp);
        for (int i = 0; i < n; ++i)
          if (a.hnf(i, j) != 0) acc += Interval(a.hnf(i, j), wp) * emb[i][t];
        acc *= scale;
        if (acc.width() > quarter) {
          ok = false;
          break;
        }
        out(t, j) = acc.mid().round();
      }
    if (ok) return LatticeBasis{out, scale_bits, std::nullopt};
  }
  throw Error(ErrorCode::PrecisionExhausted, "ideal lattice entries not certified");
}

std::optional<std::vector<int>> is_smooth_ideal(const NumberField& field, const Ideal& a, const FactorBase& fb) {
  std::vector<int> e(fb.size(), 0);
  if (a.norm == 1) return e;
  auto sp = smooth_part(a.norm, fb.bound_B);
  if (!sp.smooth()) return std::nullopt;
  Integer rebuilt = 1;
  for (const auto& [p, mult] : sp.smooth_part) {
    if (mpz_divisible_ui_p(field.index().get_mpz_t(), static_cast<unsigned long>(p)))
      throw Error(ErrorCode::IndexDivisor, "norm prime " + std::to_string(p) + " divides the index");
    auto it = fb.by_p.find(p);
    if (it == fb.by_p.end()) return std::nullopt;
    for (std::size_t idx : it->second) {
      int v = valuation(field, a, fb.primes[idx]);
      e[idx] = v;
      for (int k = 0; k < v; ++k) rebuilt *= fb.primes[idx].norm;
    }
  }
  if (rebuilt != a.norm) return std::nullopt;
  return e;
}

}  // namespace clgrp
