#include "partrans/extended.hpp"

#include "partrans/errors.hpp"

namespace partrans {

ExtendedTransformation make_extended(const CurveModel& model, JacobianAutomorphism rho, BasicTransformation basic,
                                     LineBundleClass ref_det) {
  if (rho.dim() != model.jac_dim() || rho.modulus() != model.rank()) {
    throw DimensionMismatch("Jacobian automorphism does not match the model");
  }
  if (ref_det.jac.size() != model.jac_dim()) throw DimensionMismatch("reference class has the wrong dimension");
  long d = ref_det.degree;
  long image = act_degree(model, basic, d);
  if (image != d) {
    throw DegreeMismatch("basic part maps degree " + std::to_string(d) + " to " + std::to_string(image) +
                         "; extended transformations need T(d) = d");
  }
  return {std::move(rho), std::move(basic), std::move(ref_det)};
}

LineBundleClass twist_class(const JacobianAutomorphism& rho, const LineBundleClass& xi, const LineBundleClass& det) {
  if (det.degree != xi.degree) {
    throw DegreeMismatch("determinant has degree " + std::to_string(det.degree) + ", reference class has degree " +
                         std::to_string(xi.degree));
  }
  return {0, rho.apply_tilde(det.jac - xi.jac)};
}

ParabolicInvariant act_A(const JacobianAutomorphism& rho, const LineBundleClass& xi, const ParabolicInvariant& v) {
  LineBundleClass twist = twist_class(rho, xi, v.det);
  ParabolicInvariant out = v;
  out.det += static_cast<long>(v.rank) * twist;
  if (!rho.is_identity()) out.label = "A[" + format_matrix(rho.tilde()) + "](" + v.label + ")";
  return out;
}

JacobianAutomorphism conjugate(const CurveModel& model, const JacobianAutomorphism& rho, std::size_t sigma) {
  const IntMatrix& a = model.automorphism(sigma).matrix;
  if (a.is_identity() || rho.is_identity()) return rho;
  return JacobianAutomorphism::make(a * rho.tilde() * a.unimodular_inverse(), rho.modulus());
}

ParabolicInvariant act_extended(const CurveModel& model, const ExtendedTransformation& e, const ParabolicInvariant& v) {
  return act_A(e.rho, e.ref_det, act_invariant(model, e.basic, v));
}

ExtendedTransformation compose_ext(const CurveModel& model, const ExtendedTransformation& e1,
                                   const ExtendedTransformation& e2) {
  if (e1.ref_det != e2.ref_det) throw Error("extended transformations use different reference classes");
  const LineBundleClass& xi = e1.ref_det;
  // T1 o A_{rho2} = A_{rho'} o T_N o T1 with rho' = rho2 conjugated by sigma1 and
  // N = rho'^{-1}~(T1(xi) - xi), so that r N cancels the shift of the fixed fibre.
  JacobianAutomorphism moved = conjugate(model, e2.rho, e1.basic.sigma);
  LineBundleClass shift = act_det(model, e1.basic, xi) - xi;
  LineBundleClass correction{0, moved.inverse().apply_tilde(shift.jac)};
  BasicTransformation basic = compose(model, tensor_by(model, correction), compose(model, e1.basic, e2.basic));
  JacobianAutomorphism rho =
      JacobianAutomorphism::make(tilde_compose(e1.rho.tilde(), moved.tilde(), e1.rho.modulus()), e1.rho.modulus());
  return {std::move(rho), std::move(basic), xi};
}

ExtendedTransformation inverse_ext(const CurveModel& model, const ExtendedTransformation& e) {
  // (A_rho o T)^{-1} = T^{-1} o A_{rho^{-1}}
  ExtendedTransformation outer{JacobianAutomorphism(model.jac_dim(), model.rank()), inverse(model, e.basic), e.ref_det};
  ExtendedTransformation inner{e.rho.inverse(), identity_transformation(model), e.ref_det};
  return compose_ext(model, outer, inner);
}

ExtendedTransformation lift(const CurveModel& model, const BasicTransformation& t, const LineBundleClass& xi) {
  return make_extended(model, JacobianAutomorphism(model.jac_dim(), model.rank()), t, xi);
}

std::string format_matrix(const IntMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i > 0) out += ",";
    out += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ",";
      out += m(i, j).get_str();
    }
    out += "]";
  }
  return out + "]";
}

std::string to_string(const CurveModel& model, const ExtendedTransformation& e) {
  return "A" + format_matrix(e.rho.tilde()) + " * " + to_string(model, e.basic);
}

BasicTransformation rank2_inversion_tuple(const CurveModel& model, const LineBundleClass& xi) {
  return compose(model, tensor_by(model, xi), dualization(model));
}

AutomorphismReport automorphism_group_report(const CurveModel& model, long d, const WeightSystem& alpha,
                                             const WallOptions& options, const Integer& cap) {
  AutomorphismReport report{model.genus(), model.rank(), d, model.subring(), {}, {}, {}};
  if (model.subring() == EndomorphismSubring::Scalar) {
    // (1 + r k) I is invertible over Z only for k = 0, or k = -1 when r = 2
    report.aut_j.emplace_back(model.jac_dim(), model.rank());
    if (model.rank() == 2) {
      report.aut_j.push_back(JacobianAutomorphism::make(IntMatrix::scalar(model.jac_dim(), -1), 2));
    }
  }
  const bool rank2 = model.rank() == 2;
  for (auto& rep : stabilizer_d_alpha_quotient(model, d, alpha, false, options, cap)) {
    DiscreteEntry entry{rep.transformation, rep.preserves_chamber, rank2 && !rep.positive};
    report.discrete_3bir.push_back(entry);
    if (entry.preserves_chamber) report.discrete_regular.push_back(entry);
  }
  return report;
}

}  // namespace partrans
