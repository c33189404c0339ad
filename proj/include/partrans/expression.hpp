#pragma once

// A small expression language for transformation words:
//
//   expr    := atom ("*" atom)*
//   atom    := primary ("^" int)?
//   primary := "id" | "D-" | "D+" | "S(" name ")" | "T(" line ")" | "H(" divisor ")"
//            | "A(" matrix ")" | "A" matrix | "(" expr ")"
//   line    := "O(" divisor ")" | "(" int "," "[" rationals "]" ")" | int "," "[" rationals "]"
//   divisor := term (("+" | "-") term)*,   term := [int "*"] name
//
// "*" is composition with the left factor outermost. Names are resolved
// against the model while parsing.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "partrans/extended.hpp"

namespace partrans {

struct ExprNode {
  enum class Kind { Identity, Dual, Pullback, Tensor, Hecke, Jacobian, Product, Power };

  Kind kind = Kind::Identity;
  std::size_t position = 0;
  std::size_t automorphism = 0;       // Pullback
  LineBundleClass line;               // Tensor
  Divisor divisor;                    // Hecke, any integer multiplicities
  IntMatrix matrix;                   // Jacobian, the tilde M of rho = I + rM
  long exponent = 1;                  // Power
  std::vector<ExprNode> children;     // Product factors (left = outer), Power base
};

/// Throws SyntaxError, UnknownName, ParseError (malformed rational), DimensionMismatch.
ExprNode parse_expression(std::string_view text, const CurveModel& model);

/// A basic transformation, or A_rho o basic when rho is present (reference class: the model's).
struct Element {
  BasicTransformation basic;
  std::optional<JacobianAutomorphism> rho;

  bool extended() const { return rho.has_value(); }

  friend bool operator==(const Element& a, const Element& b) {
    return a.basic == b.basic && a.rho.has_value() == b.rho.has_value() && (!a.rho || *a.rho == *b.rho);
  }
};

/// Runs of basic factors are merged first; when a product contains A-factors every
/// run must lie in T_d (d the model degree), else DegreeMismatch.
Element evaluate(const ExprNode& node, const CurveModel& model);
Element evaluate(std::string_view text, const CurveModel& model);

ExtendedTransformation as_extended(const CurveModel& model, const Element& e);

/// Canonical text. Line classes that are divisor classes of marked points print as T(O(...)).
std::string format_canonical(const CurveModel& model, const Element& e);
std::string format_canonical(const CurveModel& model, const BasicTransformation& t);

/// Divisor D with O(D) = c, minimal sum |n_x| within a small search bound.
std::optional<Divisor> recognize_divisor_class(const CurveModel& model, const LineBundleClass& c);

}  // namespace partrans
