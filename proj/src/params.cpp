#include "clgrp/params.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "clgrp/error.hpp"

namespace clgrp {

namespace {

std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t l) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= l; ++p) {
    int k = 0;
    while (l % p == 0) {
      l /= p;
      ++k;
    }
    if (k) out.emplace_back(p, k);
  }
  if (l > 1) out.emplace_back(l, 1);
  return out;
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// The L-notation is only defined from N = 16 on; smaller discriminants use that floor.
double l_domain(double log_disc) { return std::max(log_disc, std::log(16.0)); }

}  // namespace

ClassDParams classify_D(int degree, double log_disc, double log_height, double n0, double d0) {
  if (degree <= 1) throw Error(ErrorCode::DegreeOne, "classification needs degree >= 2");
  if (!(n0 > 1)) throw Error(ErrorCode::InputError, "n0 must exceed 1");
  if (!(d0 > 0)) throw Error(ErrorCode::InputError, "d0 must be positive");
  if (!(log_disc > 1)) throw Error(ErrorCode::InputError, "|disc| must be at least 3");
  ClassDParams out;
  out.n0 = n0;
  out.d0 = d0;
  out.degree = degree;
  out.log_disc = log_disc;
  out.d = log_height;
  double ll = std::log(log_disc);
  double lr = std::log(log_disc / ll);
  double ln = std::log(static_cast<double>(degree));
  out.alpha_raw = ln / lr;
  out.alpha = clamp01(out.alpha_raw);
  out.alpha_lo = clamp01((ln - std::log(n0)) / lr);
  out.alpha_hi = clamp01((ln + std::log(n0)) / lr);
  double floor_gamma = 1 - out.alpha;
  if (log_height > 0) {
    double g = std::log(log_height / (d0 * ll)) / lr;
    out.gamma = std::max(g, floor_gamma);
  } else {
    out.gamma = floor_gamma;
  }
  return out;
}

ClassDParams classify_D(const NumberField& field, double n0, double d0) {
  return classify_D(field.degree(), field.log_abs_disc(), log_abs(field.poly().height()), n0, d0);
}

CyclotomicInvariants cyclotomic_invariants(std::uint64_t l) {
  if (l < 3) throw Error(ErrorCode::InputError, "cyclotomic order must be at least 3");
  auto fac = factor_u64(l);
  std::uint64_t phi = 1;
  for (auto [p, k] : fac) {
    phi *= p - 1;
    for (int i = 1; i < k; ++i) phi *= p;
  }
  double log_disc = static_cast<double>(phi) * std::log(static_cast<double>(l));
  for (auto [p, k] : fac)
    log_disc -= static_cast<double>(phi / (p - 1)) * std::log(static_cast<double>(p));
  return {phi, log_disc};
}

double cyclotomic_sum_ratio(std::uint64_t l) {
  if (l < 3) throw Error(ErrorCode::InputError, "cyclotomic order must be at least 3");
  double num = 0, den = 0;
  for (auto [p, k] : factor_u64(l)) {
    double lp = std::log(static_cast<double>(p));
    num += (k - 1) * lp + std::log(static_cast<double>(p - 1));
    den += (k - 1.0 / static_cast<double>(p - 1)) * lp;
  }
  return num / den;
}

double cyclotomic_prime_factor(std::uint64_t p) {
  if (p < 3 || !is_prime_u64(p)) throw Error(ErrorCode::InputError, "expected an odd prime");
  double q = static_cast<double>(p);
  return (q - 1) / (q - 2) * (std::log(q - 2) + std::log(std::log(q))) / std::log(q);
}

std::string to_string(PlanMode m) {
  switch (m) {
    case PlanMode::Medium: return "medium";
    case PlanMode::Large: return "large";
    case PlanMode::Cheon: return "cheon";
  }
  return "?";
}

PlanMode parse_plan_mode(const std::string& s) {
  if (s == "medium") return PlanMode::Medium;
  if (s == "large") return PlanMode::Large;
  if (s == "cheon") return PlanMode::Cheon;
  throw Error(ErrorCode::InputError, "unknown plan mode '" + s + "'");
}

double medium_second_constant(double omega) { return (omega + 1) / (2 * std::sqrt(omega)); }

PlanReport select_params(const NumberField& field, double omega, std::optional<PlanMode> mode_override,
                         double c_b_large) {
  if (!(omega >= 2 && omega <= 3)) throw Error(ErrorCode::InputError, "omega must lie in [2, 3]");
  PlanReport out;
  out.omega = omega;
  out.classification = classify_D(field);
  double alpha = out.classification.alpha;
  out.mode = mode_override.value_or(alpha <= 0.75 ? PlanMode::Medium : PlanMode::Large);

  double exponent = 0.5;
  switch (out.mode) {
    case PlanMode::Medium:
      exponent = 0.5;
      out.c_b = 1 / (2 * std::sqrt(omega));
      out.second_constant = medium_second_constant(omega);
      break;
    case PlanMode::Large:
      exponent = 2 * alpha / 3;
      out.c_b = c_b_large;
      break;
    case PlanMode::Cheon:
      exponent = (2 * alpha + 1) / 5;
      out.c_b = c_b_large;
      break;
  }
  double log_disc = field.log_abs_disc();
  double log_b = log_eval_L(LExpr{exponent, out.c_b, false}, l_domain(log_disc));
  out.B_formula = std::exp(log_b);
  out.beta_formula = std::pow(log_disc, exponent);

  double b = std::round(out.B_formula);
  if (b > static_cast<double>(kMaxBound)) {
    out.B = kMaxBound;
    out.B_clamped = true;
  } else {
    out.B = static_cast<std::uint64_t>(std::max(b, 2.0));
    out.B_clamped = b < 2;
  }
  int cap = std::max(2, std::min(kMaxBlock, field.degree()));
  long beta = std::lround(out.beta_formula);
  out.beta_block = static_cast<int>(std::clamp<long>(beta, 2, cap));
  out.beta_clamped = out.beta_block != beta;

  try {
    out.predicted = predicted_complexity(out.classification, omega, out.mode, c_b_large);
  } catch (const Error&) {
    // Large and cheon estimates need alpha >= 1/2; a forced mode below that reports the
    // exponent actually used.
    out.predicted = LExpr{exponent, out.c_b, true};
  }
  return out;
}

LExpr predicted_complexity(const ClassDParams& params, double omega, PlanMode mode, double c_b_large) {
  double alpha = params.alpha;
  if (mode == PlanMode::Medium) {
    if (alpha < 0.5) return LExpr{std::max(alpha, params.gamma / 2), 0, true};
    return LExpr{0.5, medium_second_constant(omega), true};
  }
  if (alpha < 0.5 || alpha > 1) throw Error(ErrorCode::InputError, "large and cheon estimates need alpha in [1/2, 1]");
  if (mode == PlanMode::Large) return LExpr{2 * alpha / 3, c_b_large, true};
  return LExpr{(2 * alpha + 1) / 5, c_b_large, true};
}

}  // namespace clgrp
