#pragma once

// Extended basic transformations A_rho o T of a fixed degree d, where
// A_rho tensors a bundle E by rho~(det E (x) xi^{-1}) for a reference class xi.

#include <string>
#include <vector>

#include "partrans/transform.hpp"

namespace partrans {

struct ExtendedTransformation {
  JacobianAutomorphism rho;
  BasicTransformation basic;
  LineBundleClass ref_det;  ///< xi
};

/// Throws DegreeMismatch unless act_degree(basic, deg xi) = deg xi.
ExtendedTransformation make_extended(const CurveModel& model, JacobianAutomorphism rho, BasicTransformation basic,
                                     LineBundleClass ref_det);

/// det -> xi + rho(det - xi); weights unchanged. Throws DegreeMismatch when deg det != deg xi.
ParabolicInvariant act_A(const JacobianAutomorphism& rho, const LineBundleClass& xi, const ParabolicInvariant& v);

/// The class rho~(det - xi) by which A_rho tensors.
LineBundleClass twist_class(const JacobianAutomorphism& rho, const LineBundleClass& xi, const LineBundleClass& det);

/// rho_sigma = sigma^* o rho o (sigma^{-1})^*, using the linear part of the pullback.
JacobianAutomorphism conjugate(const CurveModel& model, const JacobianAutomorphism& rho, std::size_t sigma);

ParabolicInvariant act_extended(const CurveModel& model, const ExtendedTransformation& e, const ParabolicInvariant& v);

/// Normal form of e1 o e2. Throws Error on different reference classes.
ExtendedTransformation compose_ext(const CurveModel& model, const ExtendedTransformation& e1,
                                   const ExtendedTransformation& e2);
ExtendedTransformation inverse_ext(const CurveModel& model, const ExtendedTransformation& e);

/// Lifts a basic transformation of T_d (rho = id).
ExtendedTransformation lift(const CurveModel& model, const BasicTransformation& t, const LineBundleClass& xi);

/// "[[a,b],[c,d]]"
std::string format_matrix(const IntMatrix& m);
/// "A[M] * <basic>"
std::string to_string(const CurveModel& model, const ExtendedTransformation& e);

/// At rank 2: the tuple T_xi o D^-, which acts on degree-deg(xi) invariants as A_{-id}.
BasicTransformation rank2_inversion_tuple(const CurveModel& model, const LineBundleClass& xi);

struct DiscreteEntry {
  BasicTransformation transformation;
  bool preserves_chamber;
  bool redundant_rank2;  ///< s = -1 at r = 2, absorbed by A_inv
};

struct AutomorphismReport {
  int genus;
  int rank;
  long degree;
  EndomorphismSubring subring;
  /// Explicit Aut(J, J[r]) elements for the scalar subring; empty for the full one.
  std::vector<JacobianAutomorphism> aut_j;
  std::vector<DiscreteEntry> discrete_3bir;
  std::vector<DiscreteEntry> discrete_regular;
};

/// Throws NotGeneric.
AutomorphismReport automorphism_group_report(const CurveModel& model, long d, const WeightSystem& alpha,
                                             const WallOptions& options = {}, const Integer& cap = 1'000'000);

}  // namespace partrans
