#include "clgrp/real.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace clgrp {

namespace {

mpfr_prec_t max_prec(mpfr_prec_t a, mpfr_prec_t b) { return a > b ? a : b; }

void widen_to(Real& r, mpfr_prec_t prec) {
  if (r.prec() < prec) mpfr_prec_round(r.get(), prec, MPFR_RNDN);
}

}  // namespace

Real::Real(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Real::Real(double v, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_d(value_, v, MPFR_RNDN);
}

Real::Real(const Integer& v, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_z(value_, v.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const Rational& v, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_q(value_, v.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.prec());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.prec());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Integer Real::round() const {
  Integer out;
  mpfr_get_z(out.get_mpz_t(), value_, MPFR_RNDNA);
  return out;
}

std::string Real::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
  return std::string(buf.data());
}

Real& Real::operator+=(const Real& b) {
  widen_to(*this, b.prec());
  mpfr_add(value_, value_, b.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& b) {
  widen_to(*this, b.prec());
  mpfr_sub(value_, value_, b.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& b) {
  widen_to(*this, b.prec());
  mpfr_mul(value_, value_, b.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& b) {
  widen_to(*this, b.prec());
  mpfr_div(value_, value_, b.value_, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real out(*this);
  mpfr_neg(out.value_, out.value_, MPFR_RNDN);
  return out;
}

Real Real::pi(mpfr_prec_t prec) {
  Real out(prec);
  mpfr_const_pi(out.value_, MPFR_RNDN);
  return out;
}

Real abs(const Real& a) {
  Real out(a);
  mpfr_abs(out.get(), out.get(), MPFR_RNDN);
  return out;
}

Real sqrt(const Real& a) {
  Real out(a.prec());
  mpfr_sqrt(out.get(), a.get(), MPFR_RNDN);
  return out;
}

Real log(const Real& a) {
  Real out(a.prec());
  mpfr_log(out.get(), a.get(), MPFR_RNDN);
  return out;
}

Real exp(const Real& a) {
  Real out(a.prec());
  mpfr_exp(out.get(), a.get(), MPFR_RNDN);
  return out;
}

Real pow2(long e, mpfr_prec_t prec) {
  Real out(prec);
  mpfr_set_ui_2exp(out.get(), 1, e, MPFR_RNDN);
  return out;
}

// ---------------------------------------------------------------------------

Interval::Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

Interval::Interval(const Integer& v, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
  mpfr_set_z(lo_.get(), v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_.get(), v.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(const Rational& v, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
  mpfr_set_q(lo_.get(), v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_.get(), v.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(double v, mpfr_prec_t prec) : lo_(v, prec), hi_(v, prec) {}

Interval::Interval(const Real& lo, const Real& hi) : lo_(lo), hi_(hi) {
  if (lo_ > hi_) throw std::invalid_argument("Interval: lower bound exceeds upper bound");
  mpfr_prec_t p = max_prec(lo.prec(), hi.prec());
  if (lo_.prec() < p) mpfr_prec_round(lo_.get(), p, MPFR_RNDD);
  if (hi_.prec() < p) mpfr_prec_round(hi_.get(), p, MPFR_RNDU);
}

Real Interval::mid() const {
  Real out(prec() + 1);
  mpfr_add(out.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(out.get(), out.get(), 1, MPFR_RNDN);
  return out;
}

Real Interval::width() const {
  Real out(prec());
  mpfr_sub(out.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return out;
}

Real Interval::mag() const {
  Real a(prec()), b(prec());
  mpfr_abs(a.get(), lo_.get(), MPFR_RNDU);
  mpfr_abs(b.get(), hi_.get(), MPFR_RNDU);
  return a > b ? a : b;
}

Real Interval::mig() const {
  if (contains_zero()) return Real(prec());
  Real a(prec()), b(prec());
  mpfr_abs(a.get(), lo_.get(), MPFR_RNDD);
  mpfr_abs(b.get(), hi_.get(), MPFR_RNDD);
  return a < b ? a : b;
}

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

Interval Interval::inflate(const Real& r) const {
  Interval out(*this);
  mpfr_sub(out.lo_.get(), lo_.get(), r.get(), MPFR_RNDD);
  mpfr_add(out.hi_.get(), hi_.get(), r.get(), MPFR_RNDU);
  return out;
}

namespace {

void match_prec(Interval& a, const Interval& b, Real& lo, Real& hi) {
  (void)a;
  mpfr_prec_t p = max_prec(lo.prec(), b.prec());
  if (lo.prec() < p) mpfr_prec_round(lo.get(), p, MPFR_RNDD);
  if (hi.prec() < p) mpfr_prec_round(hi.get(), p, MPFR_RNDU);
}

}  // namespace

Interval& Interval::operator+=(const Interval& b) {
  match_prec(*this, b, lo_, hi_);
  mpfr_add(lo_.get(), lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(hi_.get(), hi_.get(), b.hi_.get(), MPFR_RNDU);
  return *this;
}

Interval& Interval::operator-=(const Interval& b) {
  match_prec(*this, b, lo_, hi_);
  Real new_lo(lo_.prec()), new_hi(hi_.prec());
  mpfr_sub(new_lo.get(), lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(new_hi.get(), hi_.get(), b.lo_.get(), MPFR_RNDU);
  lo_ = std::move(new_lo);
  hi_ = std::move(new_hi);
  return *this;
}

Interval& Interval::operator*=(const Interval& b) {
  mpfr_prec_t p = max_prec(prec(), b.prec());
  const mpfr_srcptr xs[2] = {lo_.get(), hi_.get()};
  const mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
  Real lo(p), hi(p), t(p);
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || t < lo) lo = t;
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || t > hi) hi = t;
      first = false;
    }
  }
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

Interval& Interval::operator/=(const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("Interval: division by an interval containing zero");
  mpfr_prec_t p = max_prec(prec(), b.prec());
  const mpfr_srcptr xs[2] = {lo_.get(), hi_.get()};
  const mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
  Real lo(p), hi(p), t(p);
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      if (first || t < lo) lo = t;
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      if (first || t > hi) hi = t;
      first = false;
    }
  }
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  return *this;
}

Interval Interval::operator-() const {
  Interval out(prec());
  mpfr_neg(out.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(out.hi_.get(), lo_.get(), MPFR_RNDU);
  return out;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Real lo(prec), hi(prec);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return Interval(lo, hi);
}

Interval sqr(const Interval& a) {
  mpfr_prec_t p = a.prec();
  Real lo(p), hi(p);
  Real mig = a.mig();
  Real mag = a.mag();
  mpfr_sqr(lo.get(), mig.get(), MPFR_RNDD);
  mpfr_sqr(hi.get(), mag.get(), MPFR_RNDU);
  return Interval(lo, hi);
}

Interval sqrt(const Interval& a) {
  if (a.negative()) throw std::domain_error("Interval: sqrt of negative interval");
  mpfr_prec_t p = a.prec();
  Real lo(p), hi(p);
  if (a.lower().sign() > 0) mpfr_sqrt(lo.get(), a.lower().get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), a.upper().get(), MPFR_RNDU);
  return Interval(lo, hi);
}

Interval log(const Interval& a) {
  if (!a.positive()) throw std::domain_error("Interval: log of non-positive interval");
  mpfr_prec_t p = a.prec();
  Real lo(p), hi(p);
  mpfr_log(lo.get(), a.lower().get(), MPFR_RNDD);
  mpfr_log(hi.get(), a.upper().get(), MPFR_RNDU);
  return Interval(lo, hi);
}

Interval exp(const Interval& a) {
  mpfr_prec_t p = a.prec();
  Real lo(p), hi(p);
  mpfr_exp(lo.get(), a.lower().get(), MPFR_RNDD);
  mpfr_exp(hi.get(), a.upper().get(), MPFR_RNDU);
  return Interval(lo, hi);
}

Interval abs(const Interval& a) { return Interval(a.mig(), a.mag()); }

ComplexInterval& ComplexInterval::operator+=(const ComplexInterval& b) {
  re += b.re;
  im += b.im;
  return *this;
}

ComplexInterval& ComplexInterval::operator-=(const ComplexInterval& b) {
  re -= b.re;
  im -= b.im;
  return *this;
}

ComplexInterval& ComplexInterval::operator*=(const ComplexInterval& b) {
  Interval r = re * b.re - im * b.im;
  Interval i = re * b.im + im * b.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Interval norm2(const ComplexInterval& z) { return sqr(z.re) + sqr(z.im); }

}  // namespace clgrp
