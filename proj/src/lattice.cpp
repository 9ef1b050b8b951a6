#include "clgrp/lattice.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "clgrp/error.hpp"
#include "clgrp/linalg.hpp"

namespace clgrp {

IntMatrix gram_of(const IntMatrix& b) { return b.transpose() * b; }

namespace {

// Gram matrix together with the accumulated column transform.
struct GramState {
  IntMatrix G;
  IntMatrix U;

  // b_j += q * b_i
  void col_add(std::size_t j, std::size_t i, const Integer& q) {
    if (q == 0) return;
    const std::size_t n = G.rows();
    for (std::size_t t = 0; t < U.rows(); ++t) U(t, j) += q * U(t, i);
    for (std::size_t t = 0; t < n; ++t) G(j, t) += q * G(i, t);
    for (std::size_t t = 0; t < n; ++t) G(t, j) += q * G(t, i);
  }

  void col_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    U.swap_cols(i, j);
    G.swap_rows(i, j);
    G.swap_cols(i, j);
  }
};

long double to_ld(const Rational& q) {
  mpfr_t t;
  mpfr_init2(t, 80);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
  long double v = mpfr_get_ld(t, MPFR_RNDN);
  mpfr_clear(t);
  return v;
}

void lll_state(GramState& s, const Rational& delta) {
  const std::size_t n = s.G.rows();
  if (n == 0) return;
  const Integer p = delta.get_num(), q = delta.get_den();
  std::vector<Integer> d(n + 1);
  IntMatrix lam(n + 1, n + 1);
  d[0] = 1;
  d[1] = s.G(0, 0);
  if (d[1] == 0) throw Error(ErrorCode::InputError, "LLL input has a zero vector");
  std::size_t k = 2, kmax = 1;

  auto redi = [&](std::size_t kk, std::size_t l) {
    Integer two = 2 * lam(kk, l);
    if (cmpabs(two, d[l]) <= 0) return;
    Integer r = round_div(lam(kk, l), d[l]);
    s.col_add(kk - 1, l - 1, -r);
    lam(kk, l) -= r * d[l];
    for (std::size_t i = 1; i < l; ++i) lam(kk, i) -= r * lam(l, i);
  };

  auto swapi = [&](std::size_t kk) {
    s.col_swap(kk - 1, kk - 2);
    for (std::size_t j = 1; j + 1 < kk; ++j) std::swap(lam(kk, j), lam(kk - 1, j));
    Integer l = lam(kk, kk - 1);
    Integer B = (d[kk - 2] * d[kk] + l * l) / d[kk - 1];
    for (std::size_t i = kk + 1; i <= kmax; ++i) {
      Integer t = lam(i, kk);
      lam(i, kk) = (d[kk] * lam(i, kk - 1) - l * t) / d[kk - 1];
      lam(i, kk - 1) = (B * t + l * lam(i, kk)) / d[kk];
    }
    d[kk - 1] = B;
  };

  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        Integer u = s.G(k - 1, j - 1);
        for (std::size_t i = 1; i < j; ++i) u = (d[i] * u - lam(k, i) * lam(j, i)) / d[i - 1];
        if (j < k) {
          lam(k, j) = u;
        } else {
          if (u == 0) throw Error(ErrorCode::InputError, "LLL input vectors are linearly dependent");
          d[k] = u;
        }
      }
    }
    redi(k, k - 1);
    if (q * d[k] * d[k - 2] < p * d[k - 1] * d[k - 1] - q * lam(k, k - 1) * lam(k, k - 1)) {
      swapi(k);
      k = std::max<std::size_t>(2, k - 1);
    } else {
      for (std::size_t l = k - 1; l-- > 1;) redi(k, l);
      ++k;
    }
  }
}

// Schnorr-Euchner enumeration over a projected block given floating GSO data.
class Enumerator {
 public:
  Enumerator(std::vector<std::vector<long double>> mu, std::vector<long double> r, long double radius)
      : mu_(std::move(mu)), r_(std::move(r)), radius_(radius), x_(r_.size(), 0), center_(r_.size(), 0) {}

  // Visitor receives the coefficient vector and its floating norm; returns the new radius.
  void run(const std::function<long double(const std::vector<long>&, long double)>& visit) {
    visit_ = &visit;
    if (!r_.empty()) recurse(static_cast<int>(r_.size()) - 1, 0.0L, true);
  }

  long nodes() const { return nodes_; }

 private:
  void recurse(int i, long double rho, bool top_zero) {
    long double c = 0;
    for (std::size_t j = i + 1; j < r_.size(); ++j) c -= x_[j] * mu_[j][i];
    center_[i] = c;
    auto try_value = [&](long v) -> bool {
      long double diff = static_cast<long double>(v) - c;
      long double part = rho + diff * diff * r_[i];
      if (part > radius_) return false;
      ++nodes_;
      x_[i] = v;
      if (i == 0) {
        bool nonzero = std::any_of(x_.begin(), x_.end(), [](long t) { return t != 0; });
        if (nonzero) radius_ = (*visit_)(x_, part);
      } else {
        recurse(i - 1, part, top_zero && v == 0);
      }
      return true;
    };
    if (top_zero) {
      // Only one of +-x: the highest nonzero coefficient is positive.
      for (long v = 0;; ++v)
        if (!try_value(v)) break;
    } else {
      long start = std::lround(c);
      bool up_ok = try_value(start);
      long up = start + 1, down = start - 1;
      bool up_alive = true, down_alive = true;
      (void)up_ok;
      while (up_alive || down_alive) {
        long double du = std::fabs(static_cast<long double>(up) - c);
        long double dd = std::fabs(static_cast<long double>(down) - c);
        if (up_alive && (!down_alive || du <= dd)) {
          up_alive = try_value(up++);
        } else {
          down_alive = try_value(down--);
        }
      }
    }
    x_[i] = 0;
  }

  std::vector<std::vector<long double>> mu_;
  std::vector<long double> r_;
  long double radius_;
  std::vector<long> x_;
  std::vector<long double> center_;
  const std::function<long double(const std::vector<long>&, long double)>* visit_ = nullptr;
  long nodes_ = 0;
};

// Floating GSO of the block [k, h) from integral data.
void block_gso(const IntegralGso& g, std::size_t k, std::size_t h, std::vector<std::vector<long double>>& mu,
               std::vector<long double>& r) {
  std::size_t l = h - k;
  mu.assign(l, std::vector<long double>(l, 0));
  r.assign(l, 0);
  for (std::size_t i = 0; i < l; ++i) {
    r[i] = to_ld(Rational(g.d[k + i + 1], g.d[k + i]));
    for (std::size_t j = 0; j < i; ++j) mu[i][j] = to_ld(Rational(g.lambda(k + i, k + j), g.d[k + j + 1]));
  }
}

// Exact squared projected norm of sum x_j b_{k+j} orthogonally to b_0..b_{k-1}.
Rational projected_norm(const IntegralGso& g, std::size_t k, const std::vector<long>& x) {
  Rational total = 0;
  std::size_t l = x.size();
  for (std::size_t i = 0; i < l; ++i) {
    Rational c = x[i];
    for (std::size_t j = i + 1; j < l; ++j)
      if (x[j] != 0) c += Rational(g.lambda(k + j, k + i), g.d[k + i + 1]) * x[j];
    total += c * c * Rational(g.d[k + i + 1], g.d[k + i]);
  }
  return total;
}

Integer quad_form(const IntMatrix& g, const IntVector& x) {
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j] != 0) s += x[i] * g(i, j) * x[j];
  }
  return s;
}

}  // namespace

IntegralGso integral_gso(const IntMatrix& gram) {
  const std::size_t n = gram.rows();
  IntegralGso out{std::vector<Integer>(n + 1), IntMatrix(n, n)};
  out.d[0] = 1;
  for (std::size_t k = 1; k <= n; ++k)
    for (std::size_t j = 1; j <= k; ++j) {
      Integer u = gram(k - 1, j - 1);
      for (std::size_t i = 1; i < j; ++i)
        u = (out.d[i] * u - out.lambda(k - 1, i - 1) * out.lambda(j - 1, i - 1)) / out.d[i - 1];
      if (j < k)
        out.lambda(k - 1, j - 1) = u;
      else
        out.d[k] = u;
    }
  return out;
}

GramReduction lll_gram(const IntMatrix& gram, const Rational& delta) {
  GramState s{gram, IntMatrix::identity(gram.rows())};
  lll_state(s, delta);
  return {s.G, s.U};
}

LatticeBasis lll(const LatticeBasis& b, const Rational& delta) {
  auto r = lll_gram(gram_of(b.basis), delta);
  LatticeBasis out{b.basis * r.U, b.scale_bits, r.gram};
  return out;
}

std::size_t shortest_index(const IntMatrix& gram) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < gram.rows(); ++i)
    if (gram(i, i) < gram(best, best)) best = i;
  return best;
}

double log_block_hermite_bound(int n, int beta, const Integer& gram_det) {
  double lb = std::log(static_cast<double>(beta));
  double expo = beta > 1 ? static_cast<double>(n - 1) / (2.0 * (beta - 1)) : 0.0;
  return expo * lb + log_abs(gram_det) / (2.0 * n);
}

GramReduction bkz_gram(const IntMatrix& gram, int beta, ReductionReport* report) {
  const std::size_t n = gram.rows();
  if (beta < 2) throw Error(ErrorCode::InputError, "BKZ block size must be at least 2");
  beta = std::min<int>(beta, static_cast<int>(std::max<std::size_t>(n, 2)));
  const Rational delta(99, 100);
  GramState s{gram, IntMatrix::identity(n)};
  lll_state(s, delta);
  ReductionReport rep;
  rep.block_size_beta = beta;
  bool changed = n > 1;
  while (changed) {
    changed = false;
    ++rep.tours;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      std::size_t h = std::min<std::size_t>(k + beta, n);
      IntegralGso g = integral_gso(s.G);
      std::vector<std::vector<long double>> mu;
      std::vector<long double> r;
      block_gso(g, k, h, mu, r);
      long double radius = r[0] * 0.99L;
      std::vector<long> best;
      long double best_norm = radius;
      Enumerator e(mu, r, radius * (1 + 1e-12L));
      e.run([&](const std::vector<long>& x, long double norm) {
        if (norm < best_norm) {
          best_norm = norm;
          best = x;
        }
        return norm;
      });
      rep.enumeration_nodes += e.nodes();
      if (best.empty()) continue;
      bool unit_first = best[0] != 0 && std::all_of(best.begin() + 1, best.end(), [](long t) { return t == 0; });
      if (unit_first) continue;
      if (!(projected_norm(g, k, best) < delta * Rational(g.d[k + 1], g.d[k]))) continue;
      // Euclid on the coefficients until a single +-1 remains.
      std::vector<Integer> x(best.begin(), best.end());
      while (true) {
        std::size_t a = x.size();
        for (std::size_t i = 0; i < x.size(); ++i)
          if (x[i] != 0 && (a == x.size() || cmpabs(x[i], x[a]) < 0)) a = i;
        bool single = true;
        for (std::size_t i = 0; i < x.size(); ++i) {
          if (i == a || x[i] == 0) continue;
          single = false;
          Integer q = round_div(x[i], x[a]);
          s.col_add(k + a, k + i, q);
          x[i] -= q * x[a];
        }
        if (single) {
          for (std::size_t t = k + a; t > k; --t) s.col_swap(t, t - 1);
          break;
        }
      }
      lll_state(s, delta);
      changed = true;
    }
  }
  Integer det = determinant(s.G);
  rep.log_first_norm = 0.5 * log_abs(s.G(shortest_index(s.G), shortest_index(s.G)));
  rep.log_hermite_bound = log_block_hermite_bound(static_cast<int>(n), beta, det);
  double log_b1 = n ? 0.5 * log_abs(s.G(0, 0)) : 0.0;
  rep.bound_holds = log_b1 <= rep.log_hermite_bound;
  if (!rep.bound_holds) throw std::logic_error("BKZ output violates the block-Hermite bound");
  if (report) *report = rep;
  return {s.G, s.U};
}

std::pair<LatticeBasis, ReductionReport> bkz(const LatticeBasis& b, int beta) {
  ReductionReport rep;
  auto r = bkz_gram(gram_of(b.basis), beta, &rep);
  return {LatticeBasis{b.basis * r.U, b.scale_bits, r.gram}, rep};
}

LatticeBasis hnf_lattice(const LatticeBasis& b) {
  return LatticeBasis{column_hnf(b.basis), b.scale_bits, std::nullopt};
}

int cheon_dimension(int beta, double log_beta_det, int n) {
  double m = std::sqrt(std::max(0.0, 2.0 * beta * log_beta_det));
  double fl = std::floor(m);
  long r = static_cast<long>(fl);
  double frac = m - fl;
  if (frac > 0.5 + 1e-12 || (std::fabs(frac - 0.5) <= 1e-12 && r % 2 != 0)) ++r;
  return static_cast<int>(std::clamp<long>(r, beta, n));
}

CheonResult cheon_reduce(const LatticeBasis& b, int beta) {
  const std::size_t n = b.basis.rows();
  if (b.basis.cols() != n) throw Error(ErrorCode::InputError, "Cheon reduction needs a square basis");
  Integer det = abs(determinant(b.basis));
  if (det == 0) throw Error(ErrorCode::RankDeficient, "singular basis");
  CheonResult out;
  double lb = std::log(static_cast<double>(beta));
  out.log_beta_det = log_abs(det) / lb;
  if (out.log_beta_det > static_cast<double>(n * n) / (2.0 * beta))
    throw Error(ErrorCode::DeterminantTooLarge, "det L exceeds beta^{n^2/(2 beta)}");
  out.m = cheon_dimension(beta, out.log_beta_det, static_cast<int>(n));
  IntMatrix h = column_hnf(b.basis);
  std::size_t m = static_cast<std::size_t>(out.m);
  for (std::size_t i = 1; i <= n; ++i) {
    Integer prev = 1, cur = 1;
    for (std::size_t t = 0; t + 1 < i; ++t) prev *= h(t, t);
    cur = prev * h(i - 1, i - 1);
    if (cur < prev) throw std::logic_error("HNF prefix determinants are not monotone");
  }
  IntMatrix prefix(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) prefix(i, j) = h(i, j);
  int sub_beta = std::min<int>(beta, static_cast<int>(m));
  IntVector v(n);
  if (m == 1) {
    v[0] = prefix(0, 0);
    out.report.block_size_beta = 1;
  } else {
    auto red = bkz_gram(gram_of(prefix), std::max(2, sub_beta), &out.report);
    std::size_t idx = shortest_index(red.gram);
    IntVector c = red.U.col(idx);
    IntVector pv = mat_vec(prefix, c);
    for (std::size_t i = 0; i < m; ++i) v[i] = pv[i];
  }
  out.vector = v;
  RatVector sol = mat_vec(inverse(to_rational(b.basis)), RatVector(v.begin(), v.end()));
  for (const auto& x : sol) {
    if (x.get_den() != 1) throw std::logic_error("Cheon vector is not in the lattice");
    out.coefficients.push_back(x.get_num());
  }
  out.log_beta_norm = 0.5 * log_abs(dot(v, v)) / lb;
  return out;
}

SvpResult enumerate_svp(const IntMatrix& gram, int cap) {
  const std::size_t n = gram.rows();
  if (static_cast<int>(n) > cap) throw Error(ErrorCode::DimensionCap, "enumeration dimension exceeds cap");
  SvpResult out;
  if (n == 0) return out;
  auto red = lll_gram(gram);
  IntegralGso g = integral_gso(red.gram);
  std::vector<std::vector<long double>> mu;
  std::vector<long double> r;
  block_gso(g, 0, n, mu, r);
  std::size_t s0 = shortest_index(red.gram);
  Integer best = red.gram(s0, s0);
  IntVector best_x(n);
  best_x[s0] = 1;
  Enumerator e(mu, r, to_ld(Rational(best)) * (1 + 1e-9L));
  e.run([&](const std::vector<long>& x, long double norm) {
    IntVector xi(x.begin(), x.end());
    Integer exact = quad_form(red.gram, xi);
    if (exact < best) {
      best = exact;
      best_x = xi;
    }
    (void)norm;
    return to_ld(Rational(best)) * (1 + 1e-9L);
  });
  out.coefficients = mat_vec(red.U, best_x);
  out.norm2 = best;
  out.nodes = e.nodes();
  return out;
}

std::vector<IntVector> enumerate_ball(const IntMatrix& gram, const Integer& bound, std::size_t limit) {
  const std::size_t n = gram.rows();
  std::vector<IntVector> out;
  if (n == 0) return out;
  auto red = lll_gram(gram);
  IntegralGso g = integral_gso(red.gram);
  std::vector<std::vector<long double>> mu;
  std::vector<long double> r;
  block_gso(g, 0, n, mu, r);
  long double radius = to_ld(Rational(bound)) * (1 + 1e-9L);
  Enumerator e(mu, r, radius);
  e.run([&](const std::vector<long>& x, long double) {
    IntVector xi(x.begin(), x.end());
    if (out.size() < limit && quad_form(red.gram, xi) <= bound) out.push_back(mat_vec(red.U, xi));
    return radius;
  });
  return out;
}

}  // namespace clgrp
