#pragma once

#include "tropab/monoid.hpp"
#include "tropab/siegel.hpp"
#include "tropab/theta.hpp"

#include "json.hpp"

namespace tropab::io {

using Json = nlohmann::json;

// Thrown for inputs that do not match a schema (missing/unknown keys, wrong shapes).
class SchemaError : public std::invalid_argument {
 public:
  SchemaError(const std::string& msg, std::string field) : std::invalid_argument(msg), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

const Json& require(const Json& obj, const std::string& key);
void reject_unknown_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where = {});

// Rationals and integers are read from strings ("p/q") or JSON integers and written as strings.
Rational rational_from(const Json& j, const std::string& field);
Integer integer_from(const Json& j, const std::string& field);
RationalMatrix rational_matrix_from(const Json& j, const std::string& field);
IntegerMatrix integer_matrix_from(const Json& j, const std::string& field);
RatVector rational_vector_from(const Json& j, const std::string& field);
IntVector integer_vector_from(const Json& j, const std::string& field);
std::vector<std::int64_t> small_ints_from(const Json& j, const std::string& field);
PolarizationType type_from(const Json& j, const std::string& field);

Json to_json(const Rational& x);
Json to_json(const Integer& x);
Json to_json(const RationalMatrix& m);
Json to_json(const IntegerMatrix& m);
Json to_json(const RatVector& v);
Json points_json(const IntVector& v);  // plain JSON integers
Json type_json(const PolarizationType& t);

Json to_json(const RealMatrix& m);
Json to_json(const ComplexMatrix& m);  // entries as [re, im] pairs
ComplexMatrix complex_matrix_from(const Json& j, const std::string& field);

Json to_json(const PeriodicPaving& p);
PeriodicPaving paving_from(const Json& j, const std::string& field);

Json to_json(const PwAffineFunction& f);
// Explicit pieces, {"sigma": {...}} or {"interpolate": {...}}.
PwAffineFunction function_from(const Json& j, const std::string& field, int window);

// [[point, value], …]
LatticeSamples samples_from(const Json& j, const std::string& field);
Json samples_json(const LatticeSamples& s);

ToricMonoid monoid_from(const Json& j, const std::string& field);
Json to_json(const ToricMonoid& p);

TwistedMonoidElement monoid_element_from(const Json& j, const std::string& field);
Json to_json(const TwistedMonoidElement& x);

HeisenbergElement heisenberg_from(const Json& j, const std::string& field);
Json to_json(const HeisenbergElement& x);

// Sparse map x ↦ exponent list; zero components omitted.
Json section_json(const HeisenbergGroup& h, const SchrodingerVector& v);
SchrodingerVector section_from(const HeisenbergGroup& h, const Json& j, const std::string& field);

}  // namespace tropab::io
