#include "clgrp/poly.hpp"

#include <algorithm>
#include <bitset>

#include "clgrp/error.hpp"

namespace clgrp {

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

QPoly poly_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  trim(r);
  return r;
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] -= b[i];
  }
  trim(r);
  return r;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

QPoly poly_scale(const QPoly& a, const Rational& c) {
  QPoly r(a);
  for (auto& x : r) x *= c;
  trim(r);
  return r;
}

std::pair<QPoly, QPoly> poly_divmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) throw Error(ErrorCode::InputError, "polynomial division by zero");
  QPoly r(a);
  trim(r);
  int db = degree(b);
  if (degree(r) < db) return {{}, r};
  QPoly q(r.size() - b.size() + 1);
  Rational lc_inv = 1 / b.back();
  for (int i = degree(r); i >= db; --i) {
    Rational c = r[i] * lc_inv;
    q[i - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b[j];
  }
  r.resize(db);
  trim(r);
  trim(q);
  return {q, r};
}

QPoly poly_mod(const QPoly& a, const QPoly& b) { return poly_divmod(a, b).second; }

QPoly derivative(const QPoly& a) {
  if (a.size() <= 1) return {};
  QPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<long>(i);
  trim(r);
  return r;
}

Rational evaluate(const QPoly& a, const Rational& x) {
  Rational acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

namespace {

Rational pow_rat(const Rational& base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

Rational resultant(const QPoly& a_in, const QPoly& b_in) {
  QPoly a(a_in), b(b_in);
  trim(a);
  trim(b);
  if (a.empty() || b.empty()) return 0;
  Rational acc = 1;
  while (true) {
    int da = degree(a), db = degree(b);
    if (db == 0) return acc * pow_rat(b[0], da);
    if (da == 0) return acc * pow_rat(a[0], db);
    if (da < db) {
      if ((da * db) % 2 != 0) acc = -acc;
      std::swap(a, b);
      continue;
    }
    QPoly r = poly_mod(a, b);
    if (r.empty()) return 0;
    if ((da * db) % 2 != 0) acc = -acc;
    acc *= pow_rat(b.back(), da - degree(r));
    a = std::move(b);
    b = std::move(r);
  }
}

namespace {

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  std::vector<QPoly> seq{p, derivative(p)};
  while (!seq.back().empty()) {
    QPoly r = poly_mod(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    seq.push_back(poly_scale(r, -1));
  }
  return seq;
}

int sign_of(const Rational& q) { return sgn(q); }

int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int variations_at(const std::vector<QPoly>& seq, const Rational& x) {
  std::vector<int> s;
  for (const auto& q : seq) s.push_back(sign_of(evaluate(q, x)));
  return variations(s);
}

int variations_at_inf(const std::vector<QPoly>& seq, bool positive) {
  std::vector<int> s;
  for (const auto& q : seq) {
    if (q.empty()) {
      s.push_back(0);
      continue;
    }
    int sg = sign_of(q.back());
    if (!positive && degree(q) % 2 != 0) sg = -sg;
    s.push_back(sg);
  }
  return variations(s);
}

}  // namespace

int count_real_roots(const QPoly& a) {
  QPoly p(a);
  trim(p);
  if (degree(p) <= 0) return 0;
  auto seq = sturm_sequence(p);
  return variations_at_inf(seq, false) - variations_at_inf(seq, true);
}

std::vector<Integer> integer_roots(const QPoly& a) {
  QPoly p(a);
  trim(p);
  std::vector<Integer> out;
  if (degree(p) <= 0) return out;
  Rational bound = 0;
  for (int i = 0; i < degree(p); ++i) bound = std::max(bound, Rational(abs(p[i] / p.back())));
  bound += 1;
  auto seq = sturm_sequence(p);
  // Each stack entry is a half-open interval (lo, hi] known to contain roots.
  std::vector<std::pair<Rational, Rational>> stack{{-bound - 1, bound}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    int cnt = variations_at(seq, lo) - variations_at(seq, hi);
    if (cnt <= 0) continue;
    if (hi - lo < 1) {
      Integer k;
      mpz_fdiv_q(k.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
      if (Rational(k) > lo && evaluate(p, Rational(k)) == 0) out.push_back(k);
      continue;
    }
    Rational mid = (lo + hi) / 2;
    stack.emplace_back(lo, mid);
    stack.emplace_back(mid, hi);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Integer IntPolynomial::height() const {
  Integer h = 0;
  for (const auto& c : coefficients) h = std::max(h, Integer(abs(c)));
  return h;
}

QPoly IntPolynomial::to_q() const {
  QPoly q(coefficients.begin(), coefficients.end());
  trim(q);
  return q;
}

Integer discriminant(const IntPolynomial& t) {
  QPoly q = t.to_q();
  Rational r = resultant(q, derivative(q));
  int n = t.degree();
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) r = -r;
  return r.get_num();
}

// --- Z/p ------------------------------------------------------------------

std::uint64_t ModField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t ModField::inv(std::uint64_t a) const {
  if (a % p == 0) throw Error(ErrorCode::InputError, "inverse of zero mod p");
  return pow(a, p - 2);
}

std::uint64_t ModField::reduce(const Integer& a) const {
  return mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(p));
}

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

ModPoly mod_poly(const IntPolynomial& t, const ModField& f) {
  ModPoly r;
  for (const auto& c : t.coefficients) r.push_back(f.reduce(c));
  trim(r);
  return r;
}

ModPoly make_monic(const ModPoly& a, const ModField& f) {
  if (a.empty()) return a;
  std::uint64_t li = f.inv(a.back());
  ModPoly r(a);
  for (auto& c : r) c = f.mul(c, li);
  return r;
}

ModPoly mod_mul(const ModPoly& a, const ModPoly& b, const ModField& f) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

ModPoly mod_sub(const ModPoly& a, const ModPoly& b, const ModField& f) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = i < a.size() ? a[i] : 0;
    std::uint64_t y = i < b.size() ? b[i] : 0;
    r[i] = f.sub(x, y);
  }
  trim(r);
  return r;
}

std::pair<ModPoly, ModPoly> mod_divmod(const ModPoly& a, const ModPoly& b, const ModField& f) {
  if (b.empty()) throw Error(ErrorCode::InputError, "polynomial division by zero mod p");
  ModPoly r(a);
  trim(r);
  int db = degree(b);
  if (degree(r) < db) return {{}, r};
  ModPoly q(r.size() - b.size() + 1, 0);
  std::uint64_t li = f.inv(b.back());
  for (int i = degree(r); i >= db; --i) {
    std::uint64_t c = f.mul(r[i], li);
    q[i - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) r[i - db + j] = f.sub(r[i - db + j], f.mul(c, b[j]));
  }
  r.resize(db);
  trim(r);
  trim(q);
  return {q, r};
}

ModPoly mod_rem(const ModPoly& a, const ModPoly& b, const ModField& f) {
  return mod_divmod(a, b, f).second;
}

ModPoly mod_gcd(ModPoly a, ModPoly b, const ModField& f) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = mod_rem(a, b, f);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, f);
}

ModPoly mod_derivative(const ModPoly& a, const ModField& f) {
  if (a.size() <= 1) return {};
  ModPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = f.mul(a[i], i % f.p);
  trim(r);
  return r;
}

ModPoly mod_powmod(const ModPoly& base, const Integer& e, const ModPoly& m, const ModField& f) {
  ModPoly result{1 % f.p};
  result = mod_rem(result, m, f);
  ModPoly b = mod_rem(base, m, f);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = mod_rem(mod_mul(result, result, f), m, f);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mod_rem(mod_mul(result, b, f), m, f);
  }
  return result;
}

namespace {

ModPoly mod_add(const ModPoly& a, const ModPoly& b, const ModField& f) {
  return mod_sub(a, mod_sub(ModPoly{}, b, f), f);
}

bool is_one(const ModPoly& a) { return a.size() == 1 && a[0] == 1; }

ModPoly pth_root(const ModPoly& a, const ModField& f) {
  ModPoly r;
  for (std::size_t i = 0; i < a.size(); i += f.p) r.push_back(a[i]);
  trim(r);
  return r;
}

// Squarefree decomposition of a monic polynomial: pairs (squarefree factor, multiplicity).
std::vector<std::pair<ModPoly, int>> squarefree(const ModPoly& a, const ModField& f) {
  std::vector<std::pair<ModPoly, int>> out;
  if (degree(a) <= 0) return out;
  ModPoly d = mod_derivative(a, f);
  if (d.empty()) {
    for (auto& [g, m] : squarefree(pth_root(a, f), f)) out.emplace_back(g, m * static_cast<int>(f.p));
    return out;
  }
  ModPoly c = mod_gcd(a, d, f);
  ModPoly w = mod_divmod(a, c, f).first;
  int i = 1;
  while (!is_one(w) && !w.empty()) {
    ModPoly y = mod_gcd(w, c, f);
    ModPoly z = mod_divmod(w, y, f).first;
    if (degree(z) > 0) out.emplace_back(make_monic(z, f), i);
    ++i;
    w = y;
    c = mod_divmod(c, y, f).first;
  }
  if (degree(c) > 0) {
    for (auto& [g, m] : squarefree(pth_root(make_monic(c, f), f), f))
      out.emplace_back(g, m * static_cast<int>(f.p));
  }
  return out;
}

// Distinct-degree split of a squarefree monic polynomial.
std::vector<std::pair<ModPoly, int>> distinct_degree(ModPoly a, const ModField& f) {
  std::vector<std::pair<ModPoly, int>> out;
  ModPoly x{0, 1 % f.p};
  trim(x);
  ModPoly h = mod_rem(x, a, f);
  Integer p(static_cast<unsigned long>(f.p));
  for (int i = 1; 2 * i <= degree(a); ++i) {
    h = mod_powmod(h, p, a, f);
    ModPoly g = mod_gcd(a, mod_sub(h, x, f), f);
    if (degree(g) > 0) {
      out.emplace_back(g, i);
      a = mod_divmod(a, g, f).first;
      h = mod_rem(h, a, f);
    }
  }
  if (degree(a) > 0) out.emplace_back(make_monic(a, f), degree(a));
  return out;
}

void equal_degree(const ModPoly& g, int d, const ModField& f, std::mt19937_64& rng,
                  std::vector<ModPoly>& out) {
  if (degree(g) == d) {
    out.push_back(g);
    return;
  }
  std::uniform_int_distribution<std::uint64_t> coef(0, f.p - 1);
  Integer qd;
  mpz_ui_pow_ui(qd.get_mpz_t(), static_cast<unsigned long>(f.p), static_cast<unsigned long>(d));
  while (true) {
    ModPoly a(degree(g));
    for (auto& c : a) c = coef(rng);
    trim(a);
    if (degree(a) <= 0) continue;
    ModPoly b;
    if (f.p == 2) {
      ModPoly t = a, acc = a;
      for (int j = 1; j < d; ++j) {
        t = mod_rem(mod_mul(t, t, f), g, f);
        acc = mod_add(acc, t, f);
      }
      b = acc;
    } else {
      b = mod_sub(mod_powmod(a, (qd - 1) / 2, g, f), ModPoly{1}, f);
    }
    ModPoly u = mod_gcd(g, b, f);
    if (degree(u) > 0 && degree(u) < degree(g)) {
      equal_degree(u, d, f, rng, out);
      equal_degree(mod_divmod(g, u, f).first, d, f, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<ModFactor> factor_mod_p(const ModPoly& a_in, const ModField& f) {
  ModPoly a(a_in);
  trim(a);
  if (a.empty()) throw Error(ErrorCode::InputError, "factoring the zero polynomial");
  a = make_monic(a, f);
  std::vector<ModFactor> out;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ f.p);
  for (auto& [sq, mult] : squarefree(a, f)) {
    for (auto& [g, d] : distinct_degree(sq, f)) {
      std::vector<ModPoly> pieces;
      equal_degree(g, d, f, rng, pieces);
      for (auto& piece : pieces) out.push_back({make_monic(piece, f), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const ModFactor& x, const ModFactor& y) {
    if (x.factor.size() != y.factor.size()) return x.factor.size() < y.factor.size();
    return std::lexicographical_compare(x.factor.rbegin(), x.factor.rend(), y.factor.rbegin(),
                                        y.factor.rend());
  });
  return out;
}

std::vector<int> distinct_factor_degrees(const ModPoly& a_in, const ModField& f) {
  ModPoly a(a_in);
  trim(a);
  std::vector<int> out;
  if (degree(a) <= 0) return out;
  a = make_monic(a, f);
  for (auto& [sq, mult] : squarefree(a, f)) {
    (void)mult;
    for (auto& [g, d] : distinct_degree(sq, f))
      for (int k = 0; k < degree(g) / d; ++k) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_irreducible(const IntPolynomial& t, bool* certified) {
  if (certified) *certified = true;
  int n = t.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  QPoly q = t.to_q();
  if (!integer_roots(q).empty()) return false;
  Integer disc = discriminant(t);
  if (disc == 0) return false;
  if (n <= 3) return true;

  constexpr int kMaxDeg = 512;
  if (n >= kMaxDeg) {
    if (certified) *certified = false;
    return false;
  }
  std::bitset<kMaxDeg> possible;
  possible.set();
  int used = 0;
  for (std::uint64_t p : primes_up_to(2000)) {
    if (mpz_divisible_ui_p(disc.get_mpz_t(), static_cast<unsigned long>(p))) continue;
    ModField fld{p};
    auto degs = distinct_factor_degrees(mod_poly(t, fld), fld);
    std::bitset<kMaxDeg> sums;
    sums.set(0);
    for (int d : degs) sums |= sums << d;
    possible &= sums;
    ++used;
    bool only_trivial = true;
    for (int k = 1; k < n; ++k)
      if (possible.test(k)) only_trivial = false;
    if (only_trivial) return true;
    if (used >= 60) break;
  }
  if (certified) *certified = false;
  return false;
}

}  // namespace clgrp
