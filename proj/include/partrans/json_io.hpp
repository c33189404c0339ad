#pragma once

// JSON documents for weights, classes, transformations and reports.
// Rationals are always exact strings; key order is insertion order.

#include <string>
#include <string_view>

#include "json.hpp"
#include "partrans/classify.hpp"
#include "partrans/expression.hpp"

namespace partrans {

using Json = nlohmann::ordered_json;

/// Throws ParseError naming the document.
Json parse_json(std::string_view text, const std::string& what);
/// Throws Error when the file cannot be read.
std::string read_file(const std::string& path);

/// {"p": ["0", "1/3"], ...}; every model point must be present.
WeightSystem weights_from_json(const Json& doc, const CurveModel& model);
Json weights_to_json(const CurveModel& model, const WeightSystem& w);

/// {"degree": d, "jac": ["a/b", ...]}
LineBundleClass line_from_json(const Json& doc, std::size_t dim, const std::string& where = "");
Json line_to_json(const LineBundleClass& c);
Json jacobian_to_json(const JacobianElement& j);
Json matrix_to_json(const IntMatrix& m);
Json integer_to_json(const Integer& n);
Json divisor_to_json(const CurveModel& model, const Divisor& d);

/// {"rank", "det", "weights", "label"}; rank defaults to the model's.
ParabolicInvariant invariant_from_json(const Json& doc, const CurveModel& model);
Json invariant_to_json(const CurveModel& model, const ParabolicInvariant& v);

Json transformation_to_json(const CurveModel& model, const BasicTransformation& t);
Json element_to_json(const CurveModel& model, const Element& e);

Json genericity_to_json(const CurveModel& model, const GenericityResult& g);
Json fingerprint_to_json(const ChamberFingerprint& f);
Json stabilizer_to_json(const CurveModel& model, const StabilizerReport& report);
Json cosets_to_json(const CurveModel& model, const std::vector<CosetRepresentative>& reps);
Json aut_report_to_json(const CurveModel& model, const AutomorphismReport& report);
Json checks_to_json(const std::vector<CheckRecord>& checks);
Json torelli_to_json(const CurveModel& a, const CurveModel& b, const TorelliDecision& decision);
Json decomposition_to_json(const CurveModel& model, const DecompositionReport& report);

}  // namespace partrans
