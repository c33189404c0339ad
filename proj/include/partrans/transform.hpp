#pragma once

// The group of basic transformations T = (sigma, s, L, H), stored in the
// normal form  Sigma_sigma o D^s o T_L o H_H  (H applied first).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "partrans/curve_model.hpp"
#include "partrans/divisor.hpp"
#include "partrans/picard.hpp"
#include "partrans/weights.hpp"

namespace partrans {

struct BasicTransformation {
  std::size_t sigma = 0;  ///< index into the model's automorphism table
  int s = 1;              ///< +1 or -1
  LineBundleClass line;
  Divisor hecke;  ///< 0 <= h_x <= r - 1

  friend bool operator==(const BasicTransformation& a, const BasicTransformation& b) {
    return a.sigma == b.sigma && a.s == b.s && a.line == b.line && a.hecke == b.hecke;
  }
  friend bool operator!=(const BasicTransformation& a, const BasicTransformation& b) { return !(a == b); }
};

/// Discrete shadow (r, det E, alpha) of a parabolic bundle.
struct ParabolicInvariant {
  int rank = 2;
  LineBundleClass det;
  WeightSystem weights;
  std::string label;
};

/// Validated tuple. Throws HeckeOutOfRange, UnknownName, DimensionMismatch.
BasicTransformation make_basic(const CurveModel& model, std::size_t sigma, int s, LineBundleClass line, Divisor hecke);
BasicTransformation make_basic(const CurveModel& model, std::string_view sigma, int s, LineBundleClass line,
                               Divisor hecke);

// Generators.
BasicTransformation identity_transformation(const CurveModel& model);
BasicTransformation dualization(const CurveModel& model);
BasicTransformation tensor_by(const CurveModel& model, LineBundleClass line);
BasicTransformation pullback_by(const CurveModel& model, std::size_t sigma);
/// H_F for an arbitrary divisor F, normalized with H_x^r = T_{O(-x)}:
/// the tuple (id, 1, O(-floor(F/r)), F mod r).
BasicTransformation hecke_by(const CurveModel& model, const Divisor& f);

/// T1 o T2 (T2 applied first), rewritten into normal form.
BasicTransformation compose(const CurveModel& model, const BasicTransformation& outer, const BasicTransformation& inner);
BasicTransformation inverse(const CurveModel& model, const BasicTransformation& t);
/// T^n for any integer n.
BasicTransformation power(const CurveModel& model, const BasicTransformation& t, long n);

/// s * (r deg L + d - |H|).
long act_degree(const CurveModel& model, const BasicTransformation& t, long d);
/// sigma^* (L^r (x) xi(-H))^s.
LineBundleClass act_det(const CurveModel& model, const BasicTransformation& t, const LineBundleClass& xi);
/// Hecke steps, then dual when s = -1, then relocation along sigma.
WeightSystem act_weights(const CurveModel& model, const BasicTransformation& t, const WeightSystem& w);
/// Throws ShapeMismatch on a rank mismatch.
ParabolicInvariant act_invariant(const CurveModel& model, const BasicTransformation& t, const ParabolicInvariant& v);

struct MembershipContext {
  long degree = 0;
  std::optional<LineBundleClass> xi;
  std::optional<WeightSystem> alpha;
};

struct Membership {
  bool in_t_plus = false;
  bool in_t_d = false;
  std::optional<bool> in_t_xi;
  std::optional<bool> in_t_alpha;
};

Membership subgroup_membership(const CurveModel& model, const BasicTransformation& t, const MembershipContext& context,
                               const WallOptions& options = {});

struct StabilizerSector {
  std::size_t sigma;
  int s;
  Divisor hecke;
  long line_degree;
  JacobianElement root;  ///< canonical solution of the forced equation on the Jacobian part of L
  Integer torsor_size;   ///< r^{2g}
};

struct StabilizerReport {
  Integer total;
  std::vector<StabilizerSector> sectors;
};

/// T_xi sector by sector: for each (sigma, s, H) with an integral forced degree of L,
/// the equation L^r = (sigma^{-1})^* xi^s (x) xi^{-1} (x) O(H) has r^{2g} solutions.
/// Throws ResourceLimit when the sector count exceeds cap.
StabilizerReport stabilizer_xi(const CurveModel& model, const LineBundleClass& xi, const Integer& cap = 1'000'000);

struct CosetRepresentative {
  BasicTransformation transformation;
  bool positive;           ///< s = +1
  bool preserves_chamber;  ///< act_weights(T, alpha) in the chamber of alpha
};

/// Representatives (sigma, s, (deg L, 0), H) of T_d modulo degree-0 tensoring.
/// With filter = true only chamber-preserving ones are returned. Throws NotGeneric.
std::vector<CosetRepresentative> stabilizer_d_alpha_quotient(const CurveModel& model, long d, const WeightSystem& alpha,
                                                             bool filter = true, const WallOptions& options = {},
                                                             const Integer& cap = 1'000'000);

/// Plain canonical text: "S(name) * D- * T(deg, [q, ...]) * H(h*p + ...)", or "id".
std::string to_string(const CurveModel& model, const BasicTransformation& t);
/// "p + 2*q - r" style; "0" for the zero divisor.
std::string format_divisor(const CurveModel& model, const Divisor& d);
std::string format_line(const LineBundleClass& c);

}  // namespace partrans
