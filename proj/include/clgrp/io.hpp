#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "clgrp/analytic.hpp"
#include "clgrp/field.hpp"
#include "clgrp/ideal.hpp"
#include "clgrp/linalg.hpp"
#include "clgrp/params.hpp"
#include "clgrp/relations.hpp"

namespace clgrp {

using json = nlohmann::json;

/// Field description: {"poly": [c0, ..., 1], "basis": optional, "precision": optional}.
/// Coefficients may be JSON integers or decimal strings; basis entries are rational
/// strings, either as n rows of n or one row-major list of n^2.
struct FieldSpec {
  IntPolynomial poly;
  std::optional<RatMatrix> basis_rows;
  mpfr_prec_t precision = 128;
};

FieldSpec parse_field_spec(const json& j);
FieldSpec read_field_spec(const std::string& path);
FieldPtr build_field(const FieldSpec& spec);
FieldPtr load_field(const std::string& path);
json field_to_json(const NumberField& field);

/// "n m" header, then n rows of m decimal integers.
IntMatrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const IntMatrix& m);

std::string decimal_string(const Interval& x, int digits = 20);

json to_json(const GroupStructure& g);
json to_json(const PrimeIdeal& p);
json to_json(const Relation& r);
json to_json(const CollectionStats& s);
json to_json(const ClassDParams& c);
json to_json(const PlanReport& p);
json to_json(const LExpr& e);
json verification_json(const Verification& v, const AnalyticData& a, const Interval& regulator);

/// One JSON object per line.
void write_factor_base(std::ostream& out, const FactorBase& fb);
void write_relations(std::ostream& out, const RelationMatrix& m);

}  // namespace clgrp
