#pragma once

// Symbolic marked curve (X, D): genus, rank, marked points with their Picard
// classes and a finite table of automorphisms acting on Pic(X) by an affine
// pullback.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "partrans/picard.hpp"

namespace partrans {

struct MarkedPoint {
  std::string name;
  JacobianElement jac_class;  ///< Jacobian coordinate of O_X(x)
};

struct CurveAutomorphism {
  std::string name;
  /// point_perm[i] is the index of sigma(x_i).
  std::vector<std::size_t> point_perm;
  IntMatrix matrix;
  JacobianElement translation;
};

/// Which endomorphisms rho~ the model admits for Aut(J, J[r]).
enum class EndomorphismSubring { Scalar, Full };

class CurveModel {
 public:
  /// Builds the model without validating group axioms (see validate_model).
  /// Only shape errors are raised here: DimensionMismatch, rank < 2, duplicate names.
  CurveModel(int genus, int rank, long degree, std::vector<MarkedPoint> points,
             std::vector<CurveAutomorphism> automorphisms,
             std::optional<LineBundleClass> reference_det = std::nullopt,
             EndomorphismSubring subring = EndomorphismSubring::Scalar);

  int genus() const { return genus_; }
  int rank() const { return rank_; }
  long degree() const { return degree_; }
  std::size_t jac_dim() const { return static_cast<std::size_t>(2 * genus_); }
  std::size_t num_points() const { return points_.size(); }
  const std::vector<MarkedPoint>& points() const { return points_; }
  const MarkedPoint& point(std::size_t i) const { return points_[i]; }
  const std::vector<CurveAutomorphism>& automorphisms() const { return automorphisms_; }
  const CurveAutomorphism& automorphism(std::size_t i) const { return automorphisms_[i]; }
  EndomorphismSubring subring() const { return subring_; }

  /// Throws UnknownName.
  std::size_t point_index(std::string_view name) const;
  std::size_t automorphism_index(std::string_view name) const;

  /// Index of the identity automorphism. Throws Error if absent.
  std::size_t identity_index() const;
  bool has_identity() const { return identity_.has_value(); }

  /// Index of sigma_i o sigma_j (as maps of the curve). Throws Error when the table is not closed.
  std::size_t compose_automorphisms(std::size_t outer, std::size_t inner) const;
  /// Throws Error when the inverse is missing from the table.
  std::size_t inverse_automorphism(std::size_t i) const;

  /// Session reference determinant xi (degree d); defaults to (d, 0).
  const LineBundleClass& reference_det() const { return reference_det_; }

  LineBundleClass trivial_class() const { return LineBundleClass::trivial(jac_dim()); }

 private:
  int genus_;
  int rank_;
  long degree_;
  std::vector<MarkedPoint> points_;
  std::vector<CurveAutomorphism> automorphisms_;
  LineBundleClass reference_det_;
  EndomorphismSubring subring_;
  std::optional<std::size_t> identity_;
  // composition_[i * k + j] = index of sigma_i o sigma_j, or -1 when missing
  std::vector<long> composition_;
  std::vector<long> inverse_;
};

struct ValidationReport {
  struct Finding {
    std::string code;
    std::string message;
  };
  std::vector<Finding> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }
  friend bool operator==(const ValidationReport& a, const ValidationReport& b);
};

/// Parses the JSON configuration document. Does not validate group axioms.
CurveModel load_config(std::string_view text);

ValidationReport validate_model(const CurveModel& model);

/// (1, jac_class of x). Throws UnknownName.
LineBundleClass point_class(const CurveModel& model, std::string_view name);
LineBundleClass point_class(const CurveModel& model, std::size_t index);

/// The composite affine pullback of sigma o tau, i.e. pullback_tau o pullback_sigma.
CurveAutomorphism compose_affine(const CurveAutomorphism& outer, const CurveAutomorphism& inner);

}  // namespace partrans
