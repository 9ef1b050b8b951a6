#include "clgrp/io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "clgrp/error.hpp"

namespace clgrp {

namespace {

Integer integer_of(const json& v) {
  if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
  if (v.is_string()) return parse_integer(v.get<std::string>());
  throw Error(ErrorCode::InputError, "expected an integer, got " + v.dump());
}

Rational rational_of(const json& v) {
  if (v.is_number_integer()) return Rational(integer_of(v));
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw Error(ErrorCode::InputError, "expected a rational, got " + v.dump());
}

json strings(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_decimal(x));
  return a;
}

json strings(const RatVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_decimal(x));
  return a;
}

}  // namespace

FieldSpec parse_field_spec(const json& j) {
  if (!j.is_object() || !j.contains("poly") || !j["poly"].is_array())
    throw Error(ErrorCode::InputError, "field description needs a \"poly\" array");
  FieldSpec spec;
  for (const auto& c : j["poly"]) spec.poly.coefficients.push_back(integer_of(c));
  if (spec.poly.coefficients.size() < 2) throw Error(ErrorCode::InputError, "polynomial must have degree >= 1");
  std::size_t n = spec.poly.coefficients.size() - 1;
  if (j.contains("basis") && !j["basis"].is_null()) {
    const auto& b = j["basis"];
    if (!b.is_array()) throw Error(ErrorCode::InputError, "\"basis\" must be an array");
    RatMatrix rows(n, n);
    if (b.size() == n && b[0].is_array()) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!b[i].is_array() || b[i].size() != n) throw Error(ErrorCode::InputError, "basis rows must have length n");
        for (std::size_t k = 0; k < n; ++k) rows(i, k) = rational_of(b[i][k]);
      }
    } else if (b.size() == n * n) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) rows(i, k) = rational_of(b[i * n + k]);
    } else {
      throw Error(ErrorCode::InputError, "basis must be n rows or n^2 entries");
    }
    spec.basis_rows = rows;
  }
  if (j.contains("precision")) {
    if (!j["precision"].is_number_integer() || j["precision"].get<long>() < 32)
      throw Error(ErrorCode::InputError, "precision must be an integer >= 32");
    spec.precision = j["precision"].get<long>();
  }
  return spec;
}

FieldSpec read_field_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InputError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InputError, path + ": " + e.what());
  }
  return parse_field_spec(j);
}

FieldPtr build_field(const FieldSpec& spec) { return NumberField::parse(spec.poly, spec.basis_rows, spec.precision); }

FieldPtr load_field(const std::string& path) { return build_field(read_field_spec(path)); }

json field_to_json(const NumberField& field) {
  json j;
  j["poly"] = strings(field.poly().coefficients);
  j["degree"] = field.degree();
  j["signature"] = {field.signature().r1, field.signature().r2};
  j["discriminant"] = to_decimal(field.discriminant());
  j["index"] = to_decimal(field.index());
  json rows = json::array();
  RatMatrix b = field.basis_rows();
  for (std::size_t i = 0; i < b.rows(); ++i) rows.push_back(strings(b.row(i)));
  j["basis"] = rows;
  return j;
}

IntMatrix read_matrix(std::istream& in) {
  long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw Error(ErrorCode::InputError, "matrix header must be \"n m\"");
  IntMatrix out(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
  std::string tok;
  for (long i = 0; i < n; ++i)
    for (long k = 0; k < m; ++k) {
      if (!(in >> tok)) throw Error(ErrorCode::InputError, "matrix ends early");
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = parse_integer(tok);
    }
  return out;
}

void write_matrix(std::ostream& out, const IntMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < m.cols(); ++k) out << (k ? " " : "") << to_decimal(m(i, k));
    out << '\n';
  }
}

std::string decimal_string(const Interval& x, int digits) { return x.mid().to_string(digits); }

json to_json(const GroupStructure& g) {
  json d = json::array();
  for (const auto& x : g.elementary_divisors) d.push_back(to_decimal(x));
  return {{"divisors", d}, {"class_number", to_decimal(g.class_number)}};
}

json to_json(const PrimeIdeal& p) {
  json g = json::array();
  for (auto c : p.gen_poly) g.push_back(c);
  return {{"p", p.p}, {"f", p.res_f}, {"e", p.ram_e}, {"norm", to_decimal(p.norm)}, {"gen_poly", g}};
}

json to_json(const Relation& r) {
  json e = json::object();
  for (const auto& [c, v] : r.exponents) e[std::to_string(c)] = v;
  json prov = {{"trial", r.provenance.trial},
               {"indices", r.provenance.indices},
               {"exponents", r.provenance.exponents},
               {"mode", r.provenance.mode}};
  return {{"exponents", e}, {"generator", strings(r.generator.coords)}, {"provenance", prov}};
}

json to_json(const CollectionStats& s) {
  return {{"trials", s.trials},
          {"hits", s.hits},
          {"hit_rate", s.hit_rate()},
          {"predicted_hit_rate", s.predicted_hit_rate},
          {"eq5_checked", s.eq5_checked},
          {"eq5_violations", s.eq5_violations},
          {"index_divisor_skips", s.index_divisor_skips},
          {"cheon_fallbacks", s.cheon_fallbacks}};
}

json to_json(const ClassDParams& c) {
  return {{"n0", c.n0},
          {"d0", c.d0},
          {"degree", c.degree},
          {"log_disc", c.log_disc},
          {"d", c.d},
          {"alpha", c.alpha},
          {"alpha_raw", c.alpha_raw},
          {"band", {c.alpha_lo, c.alpha_hi}},
          {"gamma", c.gamma}};
}

json to_json(const LExpr& e) {
  return {{"alpha", e.alpha}, {"c", e.c}, {"o1", e.with_o1}, {"text", e.describe()}};
}

json to_json(const PlanReport& p) {
  json j = {{"mode", to_string(p.mode)},
            {"B", p.B},
            {"beta_block", p.beta_block},
            {"c_b", p.c_b},
            {"omega", p.omega},
            {"predicted", to_json(p.predicted)},
            {"classification", to_json(p.classification)},
            {"B_formula", p.B_formula},
            {"beta_formula", p.beta_formula},
            {"B_clamped", p.B_clamped},
            {"beta_clamped", p.beta_clamped}};
  if (p.mode == PlanMode::Medium) j["second_constant"] = p.second_constant;
  return j;
}

json verification_json(const Verification& v, const AnalyticData& a, const Interval& regulator) {
  json skipped = json::array();
  for (auto p : a.skipped) skipped.push_back(p);
  return {{"ratio", v.value()},
          {"ratio_interval", {v.ratio.lower().to_string(20), v.ratio.upper().to_string(20)}},
          {"verdict", to_string(v.verdict)},
          {"residue", decimal_string(a.residue)},
          {"prime_bound", a.prime_bound},
          {"skipped_primes", skipped},
          {"w", a.w},
          {"regulator", decimal_string(regulator)}};
}

void write_factor_base(std::ostream& out, const FactorBase& fb) {
  for (const auto& p : fb.primes) out << to_json(p).dump() << '\n';
}

void write_relations(std::ostream& out, const RelationMatrix& m) {
  json aux = json::array();
  for (const auto& p : m.aux) aux.push_back(to_json(p));
  out << json{{"base_size", m.base_size}, {"aux", aux}, {"rows", m.rows.size()}, {"stats", to_json(m.stats)}}.dump()
      << '\n';
  for (const auto& r : m.rows) out << to_json(r).dump() << '\n';
}

}  // namespace clgrp
