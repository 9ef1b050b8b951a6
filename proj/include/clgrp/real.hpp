#pragma once

#include <mpfr.h>

#include <string>

#include "clgrp/bigint.hpp"

namespace clgrp {

/// Multiple-precision real with round-to-nearest semantics. Results of binary
/// operations carry the larger precision of the two operands.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 128);
  Real(double v, mpfr_prec_t prec);
  Real(const Integer& v, mpfr_prec_t prec);
  Real(const Rational& v, mpfr_prec_t prec);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Nearest integer, ties away from zero.
  Integer round() const;
  std::string to_string(int digits = 20) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  Real& operator+=(const Real& b);
  Real& operator-=(const Real& b);
  Real& operator*=(const Real& b);
  Real& operator/=(const Real& b);

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  Real operator-() const;

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_); }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.value_, b.value_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_); }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.value_, b.value_); }

  static Real pi(mpfr_prec_t prec);

 private:
  mpfr_t value_;
};

Real abs(const Real& a);
Real sqrt(const Real& a);
Real log(const Real& a);
Real exp(const Real& a);
/// 2^e as a Real.
Real pow2(long e, mpfr_prec_t prec);

/// Closed interval [lo, hi] with outward (directed) rounding on every operation.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128);
  Interval(const Integer& v, mpfr_prec_t prec);
  Interval(const Rational& v, mpfr_prec_t prec);
  Interval(double v, mpfr_prec_t prec);
  /// Enclosure of [lo, hi]; lo <= hi is required.
  Interval(const Real& lo, const Real& hi);

  const Real& lower() const { return lo_; }
  const Real& upper() const { return hi_; }
  mpfr_prec_t prec() const { return lo_.prec(); }

  Real mid() const;
  Real width() const;
  /// max(|lo|, |hi|), rounded up.
  Real mag() const;
  /// min |x| over the interval, rounded down (0 if the interval straddles 0).
  Real mig() const;

  bool contains(const Rational& q) const;
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool positive() const { return lo_.sign() > 0; }
  bool negative() const { return hi_.sign() < 0; }

  /// Widen by r >= 0 on both sides.
  Interval inflate(const Real& r) const;

  Interval& operator+=(const Interval& b);
  Interval& operator-=(const Interval& b);
  Interval& operator*=(const Interval& b);
  Interval& operator/=(const Interval& b);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }
  Interval operator-() const;

  static Interval pi(mpfr_prec_t prec);

 private:
  Real lo_;
  Real hi_;
};

Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);
Interval log(const Interval& a);
Interval exp(const Interval& a);
Interval abs(const Interval& a);

/// Rectangular complex interval.
struct ComplexInterval {
  Interval re;
  Interval im;

  ComplexInterval() = default;
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

  ComplexInterval& operator+=(const ComplexInterval& b);
  ComplexInterval& operator-=(const ComplexInterval& b);
  ComplexInterval& operator*=(const ComplexInterval& b);

  friend ComplexInterval operator+(ComplexInterval a, const ComplexInterval& b) { return a += b; }
  friend ComplexInterval operator-(ComplexInterval a, const ComplexInterval& b) { return a -= b; }
  friend ComplexInterval operator*(ComplexInterval a, const ComplexInterval& b) { return a *= b; }
};

/// |z|^2 enclosure.
Interval norm2(const ComplexInterval& z);

}  // namespace clgrp
