#include "clgrp/field.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "clgrp/error.hpp"

namespace clgrp {

bool AlgebraicNumber::is_integral() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return q.get_den() == 1; });
}

bool AlgebraicNumber::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return q == 0; });
}

namespace {

// Reduce a power-basis vector of any length modulo the monic T.
RatVector reduce_power(const QPoly& p, const QPoly& t, int n) {
  QPoly r = poly_mod(p, t);
  RatVector out(n);
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i];
  return out;
}

}  // namespace

FieldPtr NumberField::parse(const IntPolynomial& poly, const std::optional<RatMatrix>& basis_rows,
                            mpfr_prec_t precision) {
  if (poly.coefficients.size() < 2 || !poly.is_monic())
    throw Error(ErrorCode::NonMonic, "defining polynomial must be monic of degree >= 1");
  bool certified = true;
  if (!is_irreducible(poly, &certified)) {
    throw Error(ErrorCode::Reducible, certified ? "defining polynomial is reducible over Q"
                                                : "irreducibility could not be certified");
  }
  std::shared_ptr<NumberField> f(new NumberField());
  f->poly_ = poly;
  f->n_ = poly.degree();
  f->precision_ = precision;
  const int n = f->n_;
  f->poly_disc_ = clgrp::discriminant(poly);

  if (basis_rows) {
    if (basis_rows->rows() != static_cast<std::size_t>(n) || basis_rows->cols() != static_cast<std::size_t>(n))
      throw Error(ErrorCode::InputError, "integral basis must be n x n");
    f->basis_ = basis_rows->transpose();
  } else {
    f->basis_ = RatMatrix::identity(n);
  }
  Rational det_w = determinant(f->basis_);
  if (det_w == 0) throw Error(ErrorCode::BasisNotUnimodularScaling, "basis is singular");
  Rational index = 1 / abs(det_w);
  if (index.get_den() != 1)
    throw Error(ErrorCode::BasisNotUnimodularScaling, "basis determinant is not the inverse of an integer");
  f->index_ = index.get_num();
  f->basis_inv_ = inverse(f->basis_);
  IntMatrix tmp;
  if (!to_integer(f->basis_inv_, tmp))
    throw Error(ErrorCode::BasisNotUnimodularScaling, "basis does not contain Z[theta]");
  Rational disc = Rational(f->poly_disc_) * det_w * det_w;
  if (disc.get_den() != 1)
    throw Error(ErrorCode::BasisNotUnimodularScaling, "discriminant is not integral");
  f->disc_ = disc.get_num();

  QPoly t = poly.to_q();
  std::vector<QPoly> omega(n);
  for (int j = 0; j < n; ++j) {
    RatVector col = f->basis_.col(j);
    omega[j] = QPoly(col.begin(), col.end());
    trim(omega[j]);
  }
  f->mult_.assign(n, IntMatrix(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RatVector c = mat_vec(f->basis_inv_, reduce_power(poly_mul(omega[i], omega[j]), t, n));
      for (int k = 0; k < n; ++k) {
        if (c[k].get_den() != 1)
          throw Error(ErrorCode::BasisNotUnimodularScaling, "basis is not closed under multiplication");
        f->mult_[i](k, j) = c[k].get_num();
      }
    }

  int r1 = count_real_roots(t);
  f->sig_ = {r1, (n - r1) / 2};
  if (sgn(f->disc_) != ((f->sig_.r2 % 2 == 0) ? 1 : -1))
    throw Error(ErrorCode::InputError, "discriminant sign inconsistent with signature");
  return f;
}

FieldPtr NumberField::with_precision(mpfr_prec_t precision) const {
  std::shared_ptr<NumberField> f(new NumberField());
  f->poly_ = poly_;
  f->n_ = n_;
  f->sig_ = sig_;
  f->poly_disc_ = poly_disc_;
  f->disc_ = disc_;
  f->index_ = index_;
  f->precision_ = precision;
  f->basis_ = basis_;
  f->basis_inv_ = basis_inv_;
  f->mult_ = mult_;
  f->cache_ = cache_;
  return f;
}

AlgebraicNumber NumberField::zero() const { return {RatVector(n_), this}; }

AlgebraicNumber NumberField::one() const {
  RatVector pb(n_);
  pb[0] = 1;
  return from_power_basis(pb);
}

AlgebraicNumber NumberField::from_integers(const IntVector& coords) const {
  return {RatVector(coords.begin(), coords.end()), this};
}

AlgebraicNumber NumberField::from_power_basis(const RatVector& p) const {
  return {mat_vec(basis_inv_, p), this};
}

RatVector NumberField::to_power_basis(const AlgebraicNumber& x) const { return mat_vec(basis_, x.coords); }

AlgebraicNumber NumberField::add(const AlgebraicNumber& a, const AlgebraicNumber& b) const {
  AlgebraicNumber r{a.coords, this};
  for (int i = 0; i < n_; ++i) r.coords[i] += b.coords[i];
  return r;
}

AlgebraicNumber NumberField::sub(const AlgebraicNumber& a, const AlgebraicNumber& b) const {
  AlgebraicNumber r{a.coords, this};
  for (int i = 0; i < n_; ++i) r.coords[i] -= b.coords[i];
  return r;
}

AlgebraicNumber NumberField::scale(const AlgebraicNumber& a, const Rational& c) const {
  AlgebraicNumber r{a.coords, this};
  for (auto& x : r.coords) x *= c;
  return r;
}

AlgebraicNumber NumberField::mul(const AlgebraicNumber& a, const AlgebraicNumber& b) const {
  AlgebraicNumber r = zero();
  for (int i = 0; i < n_; ++i) {
    if (a.coords[i] == 0) continue;
    for (int j = 0; j < n_; ++j) {
      if (b.coords[j] == 0) continue;
      Rational ab = a.coords[i] * b.coords[j];
      for (int k = 0; k < n_; ++k)
        if (mult_[i](k, j) != 0) r.coords[k] += ab * mult_[i](k, j);
    }
  }
  return r;
}

RatMatrix NumberField::multiplication_matrix(const AlgebraicNumber& x) const {
  RatMatrix m(n_, n_);
  for (int i = 0; i < n_; ++i) {
    if (x.coords[i] == 0) continue;
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) m(r, c) += x.coords[i] * mult_[i](r, c);
  }
  return m;
}

// --- roots ---------------------------------------------------------------

namespace {

struct Cx {
  Real re, im;
  explicit Cx(mpfr_prec_t p) : re(p), im(p) {}
  Cx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
};

Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx operator*(const Cx& a, const Cx& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Real abs2(const Cx& a) { return a.re * a.re + a.im * a.im; }
Cx operator/(const Cx& a, const Cx& b) {
  Real d = abs2(b);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

void eval_with_derivative(const IntPolynomial& t, const Cx& z, Cx& value, Cx& deriv, mpfr_prec_t p) {
  value = Cx(p);
  deriv = Cx(p);
  for (int i = t.degree(); i >= 0; --i) {
    deriv = deriv * z + value;
    value = value * z + Cx(Real(t.coefficients[i], p), Real(p));
  }
}

ComplexInterval eval_interval(const IntPolynomial& t, const ComplexInterval& z, bool derivative,
                              mpfr_prec_t p) {
  ComplexInterval acc{Interval(p), Interval(p)};
  int top = t.degree();
  for (int i = top; i >= (derivative ? 1 : 0); --i) {
    Integer c = t.coefficients[i];
    if (derivative) c *= i;
    acc = acc * z + ComplexInterval{Interval(c, p), Interval(p)};
  }
  return acc;
}

bool finite(const Real& r) { return mpfr_number_p(r.get()) != 0; }

}  // namespace

RootSet NumberField::compute_roots(mpfr_prec_t bits) const {
  const int n = n_;
  for (mpfr_prec_t w = bits + 32; w <= 16 * (bits + 32); w *= 2) {
    // Fujiwara bound for the starting circle.
    double radius = 0;
    for (int k = 1; k <= n; ++k) {
      double c = std::fabs(mpz_get_d(poly_.coefficients[n - k].get_mpz_t()));
      if (c > 0) radius = std::max(radius, std::pow(c, 1.0 / k));
    }
    radius = std::max(1.0, 2 * radius);
    std::vector<Cx> z;
    for (int k = 0; k < n; ++k) {
      double ang = 2 * M_PI * k / n + 0.4;
      z.emplace_back(Real(radius * std::cos(ang), w), Real(radius * std::sin(ang), w));
    }
    Real tol = pow2(-static_cast<long>(w) + 12, w);
    bool converged = false;
    for (int iter = 0; iter < 2000 && !converged; ++iter) {
      converged = true;
      for (int k = 0; k < n; ++k) {
        Cx v(w), d(w);
        eval_with_derivative(poly_, z[k], v, d, w);
        if (v.re.is_zero() && v.im.is_zero()) continue;
        Cx ratio = v / d;
        Cx sum(w);
        for (int j = 0; j < n; ++j)
          if (j != k) sum = sum + Cx(Real(1.0, w), Real(w)) / (z[k] - z[j]);
        Cx denom = Cx(Real(1.0, w), Real(w)) - ratio * sum;
        Cx corr = ratio / denom;
        z[k] = z[k] - corr;
        Real scale = abs2(z[k]);
        if (scale < Real(1.0, w)) scale = Real(1.0, w);
        if (!finite(corr.re) || !finite(corr.im) || abs2(corr) > tol * tol * scale) converged = false;
      }
    }
    if (!converged) continue;

    std::vector<Real> rad;
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      ComplexInterval zi{Interval(z[k].re, z[k].re), Interval(z[k].im, z[k].im)};
      Interval tv = sqrt(norm2(eval_interval(poly_, zi, false, w)));
      Interval tp = sqrt(norm2(eval_interval(poly_, zi, true, w)));
      if (tp.contains_zero()) {
        ok = false;
        break;
      }
      Interval r = tv / tp * Interval(Integer(n), w);
      rad.push_back(r.upper());
    }
    if (!ok) continue;
    Real target = pow2(-static_cast<long>(bits), w);
    for (int i = 0; i < n && ok; ++i) {
      Real mag = sqrt(abs2(z[i]));
      if (mag < Real(1.0, w)) mag = Real(1.0, w);
      if (rad[i] > target * mag) ok = false;
      for (int j = i + 1; j < n && ok; ++j) {
        Real dist2 = abs2(z[i] - z[j]);
        Real sum = rad[i] + rad[j];
        if (dist2 <= sum * sum * Real(1.0001, w)) ok = false;
      }
    }
    if (!ok) continue;

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return abs(z[a].im) < abs(z[b].im); });
    std::vector<int> real_idx(order.begin(), order.begin() + sig_.r1);
    std::vector<int> cpx_idx;
    for (int i = sig_.r1; i < n; ++i)
      if (z[order[i]].im.sign() > 0) cpx_idx.push_back(order[i]);
    if (static_cast<int>(cpx_idx.size()) != sig_.r2) continue;
    for (int i : real_idx)
      if (abs(z[i].im) > rad[i]) ok = false;
    if (!ok) continue;
    std::sort(real_idx.begin(), real_idx.end(), [&](int a, int b) { return z[a].re < z[b].re; });
    std::sort(cpx_idx.begin(), cpx_idx.end(), [&](int a, int b) {
      if (z[a].re < z[b].re) return true;
      if (z[b].re < z[a].re) return false;
      return z[a].im < z[b].im;
    });
    RootSet out;
    out.prec = w;
    for (int i : real_idx)
      out.roots.push_back({Interval(z[i].re, z[i].re).inflate(rad[i]), Interval(w)});
    for (int i : cpx_idx)
      out.roots.push_back(
          {Interval(z[i].re, z[i].re).inflate(rad[i]), Interval(z[i].im, z[i].im).inflate(rad[i])});
    return out;
  }
  throw Error(ErrorCode::PrecisionExhausted, "root isolation failed to certify");
}

const RootSet& NumberField::roots(mpfr_prec_t bits) const {
  {
    std::shared_lock lock(cache_->mutex);
    auto it = cache_->roots.lower_bound(bits);
    if (it != cache_->roots.end()) return *it->second;
  }
  auto fresh = std::make_unique<RootSet>(compute_roots(bits));
  std::unique_lock lock(cache_->mutex);
  auto [it, inserted] = cache_->roots.emplace(bits, std::move(fresh));
  return *it->second;
}

std::vector<ComplexInterval> NumberField::conjugates(const AlgebraicNumber& x, mpfr_prec_t bits) const {
  const RootSet& rs = roots(bits);
  RatVector pb = to_power_basis(x);
  mpfr_prec_t w = rs.prec;
  std::vector<ComplexInterval> out;
  for (const auto& root : rs.roots) {
    ComplexInterval acc{Interval(w), Interval(w)};
    for (int i = n_ - 1; i >= 0; --i)
      acc = acc * root + ComplexInterval{Interval(pb[i], w), Interval(w)};
    out.push_back(acc);
  }
  return out;
}

std::vector<Interval> NumberField::embedding(const AlgebraicNumber& x, mpfr_prec_t bits) const {
  auto conj = conjugates(x, bits);
  mpfr_prec_t w = roots(bits).prec;
  Interval s2 = sqrt(Interval(Integer(2), w));
  std::vector<Interval> out;
  for (int i = 0; i < sig_.r1; ++i) out.push_back(conj[i].re);
  for (int i = sig_.r1; i < sig_.r1 + sig_.r2; ++i) {
    out.push_back(conj[i].re * s2);
    out.push_back(conj[i].im * s2);
  }
  return out;
}

std::vector<Interval> canonical_embedding(const AlgebraicNumber& x) {
  const NumberField& f = *x.field;
  auto e = f.embedding(x, f.precision());
  Real tol = pow2(-static_cast<long>(f.precision()) / 2, f.precision());
  for (const auto& c : e) {
    Real scale = c.mag();
    if (scale < Real(1.0, f.precision())) scale = Real(1.0, f.precision());
    if (c.width() > tol * scale)
      throw Error(ErrorCode::PrecisionExhausted, "embedding enclosure too wide");
  }
  return e;
}

Rational norm_of(const AlgebraicNumber& x) {
  const NumberField& f = *x.field;
  RatVector pb = f.to_power_basis(x);
  QPoly a(pb.begin(), pb.end());
  trim(a);
  return resultant(f.poly().to_q(), a);
}

}  // namespace clgrp
