#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "clgrp/field.hpp"
#include "clgrp/smoothness.hpp"

namespace clgrp {

/// Membership data for the classes D_{n0, d0, alpha, gamma}.
struct ClassDParams {
  double n0 = 2;
  double d0 = 1;
  double alpha = 0;      // band center, clamped to [0, 1]
  double alpha_raw = 0;  // before clamping
  double alpha_lo = 0;   // band of admissible alpha for this n0
  double alpha_hi = 0;
  double gamma = 0;      // floored at 1 - alpha
  double d = 0;          // log H(T)
  int degree = 0;
  double log_disc = 0;
};

ClassDParams classify_D(int degree, double log_disc, double log_height, double n0 = 2, double d0 = 1);
ClassDParams classify_D(const NumberField& field, double n0 = 2, double d0 = 1);

struct CyclotomicInvariants {
  std::uint64_t degree = 0;
  double log_disc = 0;
};

/// phi(l) and log |disc Q(zeta_l)| for l >= 3.
CyclotomicInvariants cyclotomic_invariants(std::uint64_t l);

/// (sum (k_i - 1) log p_i + log(p_i - 1)) / (sum (k_i - 1/(p_i - 1)) log p_i) for l = prod p_i^k_i.
double cyclotomic_sum_ratio(std::uint64_t l);

/// phi(p) loglog|disc| / log|disc| for Q(zeta_p), p prime.
double cyclotomic_prime_factor(std::uint64_t p);

enum class PlanMode { Medium, Large, Cheon };
std::string to_string(PlanMode m);
PlanMode parse_plan_mode(const std::string& s);

constexpr double kLargeCb = 0.05;
constexpr std::uint64_t kMaxBound = 1000000;
constexpr int kMaxBlock = 30;

struct PlanReport {
  PlanMode mode = PlanMode::Medium;
  std::uint64_t B = 0;
  int beta_block = 2;
  double c_b = 0;
  double omega = 0;
  double second_constant = 0;  // medium mode only
  LExpr predicted;
  ClassDParams classification;
  double B_formula = 0;
  double beta_formula = 0;
  bool B_clamped = false;
  bool beta_clamped = false;
};

/// (omega + 1) / (2 sqrt omega).
double medium_second_constant(double omega);

/// Factor-base bound and block size. Without an override the mode follows alpha: medium
/// up to 3/4, large above.
PlanReport select_params(const NumberField& field, double omega, std::optional<PlanMode> mode_override = std::nullopt,
                         double c_b_large = kLargeCb);

LExpr predicted_complexity(const ClassDParams& params, double omega, PlanMode mode, double c_b_large = kLargeCb);

}  // namespace clgrp
