#pragma once

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "clgrp/int_matrix.hpp"
#include "clgrp/poly.hpp"
#include "clgrp/real.hpp"

namespace clgrp {

struct Signature {
  int r1 = 0;
  int r2 = 0;
};

/// Certified root enclosures of the defining polynomial, ordered as
/// real roots ascending, then one representative (Im > 0) per complex pair.
struct RootSet {
  mpfr_prec_t prec = 0;
  std::vector<ComplexInterval> roots;
};

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of K written over the integral basis.
struct AlgebraicNumber {
  RatVector coords;
  const NumberField* field = nullptr;

  bool is_integral() const;
  bool is_zero() const;
};

class NumberField {
 public:
  /// Builds a field from a monic irreducible T and an optional integral basis
  /// (row i holds omega_i in power-basis coordinates).
  static FieldPtr parse(const IntPolynomial& poly, const std::optional<RatMatrix>& basis_rows,
                        mpfr_prec_t precision = 128);

  /// Same field, different default embedding precision.
  FieldPtr with_precision(mpfr_prec_t precision) const;

  const IntPolynomial& poly() const { return poly_; }
  int degree() const { return n_; }
  Signature signature() const { return sig_; }
  int unit_rank() const { return sig_.r1 + sig_.r2 - 1; }
  const Integer& discriminant() const { return disc_; }
  const Integer& poly_discriminant() const { return poly_disc_; }
  /// [O_K : Z[theta]].
  const Integer& index() const { return index_; }
  mpfr_prec_t precision() const { return precision_; }
  double log_abs_disc() const { return log_abs(disc_); }

  /// Columns are omega_j in power-basis coordinates.
  const RatMatrix& basis() const { return basis_; }
  const RatMatrix& basis_inverse() const { return basis_inv_; }
  /// Basis rows as supplied (row i = omega_i).
  RatMatrix basis_rows() const { return basis_.transpose(); }

  AlgebraicNumber zero() const;
  AlgebraicNumber one() const;
  AlgebraicNumber from_integers(const IntVector& coords) const;
  AlgebraicNumber from_power_basis(const RatVector& p) const;
  RatVector to_power_basis(const AlgebraicNumber& x) const;

  AlgebraicNumber add(const AlgebraicNumber& a, const AlgebraicNumber& b) const;
  AlgebraicNumber sub(const AlgebraicNumber& a, const AlgebraicNumber& b) const;
  AlgebraicNumber mul(const AlgebraicNumber& a, const AlgebraicNumber& b) const;
  AlgebraicNumber scale(const AlgebraicNumber& a, const Rational& c) const;
  /// Integer matrix of multiplication by omega_i on the integral basis (column j = omega_i*omega_j).
  const IntMatrix& mult_matrix(int i) const { return mult_[i]; }
  /// Matrix of multiplication by x (rational entries when x is not integral).
  RatMatrix multiplication_matrix(const AlgebraicNumber& x) const;

  /// Root enclosures with at least `bits` of working precision.
  const RootSet& roots(mpfr_prec_t bits) const;

  /// Canonical embedding (sigma_1..sigma_r1, sqrt2 Re, sqrt2 Im, ...) as intervals.
  std::vector<Interval> embedding(const AlgebraicNumber& x, mpfr_prec_t bits) const;
  /// Complex conjugate enclosures sigma_1..sigma_{r1+r2}.
  std::vector<ComplexInterval> conjugates(const AlgebraicNumber& x, mpfr_prec_t bits) const;

 private:
  NumberField() = default;

  IntPolynomial poly_;
  int n_ = 0;
  Signature sig_;
  Integer poly_disc_;
  Integer disc_;
  Integer index_;
  mpfr_prec_t precision_ = 128;
  RatMatrix basis_;
  RatMatrix basis_inv_;
  std::vector<IntMatrix> mult_;
  // Power-basis coordinates of theta^k for k < 2n-1 reduced mod T.
  std::vector<RatVector> power_red_;

  struct Cache {
    std::shared_mutex mutex;
    std::map<mpfr_prec_t, std::unique_ptr<RootSet>> roots;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();

  RootSet compute_roots(mpfr_prec_t bits) const;
};

std::vector<Interval> canonical_embedding(const AlgebraicNumber& x);
Rational norm_of(const AlgebraicNumber& x);

}  // namespace clgrp
