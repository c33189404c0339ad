#pragma once

// Statement-level predicates: the 3-birational Torelli criterion, degree
// bridges, and checks of proposed decompositions sigma^* Phi = T o A_rho.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "partrans/extended.hpp"

namespace partrans {

/// The invariants (X, D, r, alpha, d) of a moduli space; the space itself is not modeled.
struct ModuliDescriptor {
  const CurveModel* model = nullptr;
  long degree = 0;
  WeightSystem alpha;

  int rank() const { return model->rank(); }
};

/// Throws ShapeMismatch when alpha does not fit the model, NotGeneric when it is not generic.
ModuliDescriptor make_descriptor(const CurveModel& model, long degree, WeightSystem alpha,
                                 const WallOptions& options = {});

/// Isomorphism of marked curves between two symbolic models:
/// point_map[i] is the index in the target of source point i, and
/// aut_map[k] the index in the target of source automorphism k.
struct CurveIsomorphism {
  std::vector<std::size_t> point_map;
  std::vector<std::size_t> aut_map;
};

/// Checks a point relabeling. Fills aut_map on success; otherwise returns the first failed equation.
std::optional<std::string> check_isomorphism(const CurveModel& source, const CurveModel& target,
                                             CurveIsomorphism& iso);

/// Depth-first search over point relabelings in lexicographic order.
std::optional<CurveIsomorphism> find_isomorphism(const CurveModel& source, const CurveModel& target);

CurveIsomorphism invert(const CurveIsomorphism& iso);
/// outer after inner.
CurveIsomorphism compose(const CurveIsomorphism& outer, const CurveIsomorphism& inner);

struct CheckRecord {
  std::string name;
  bool pass;
  std::string details;
};

struct TorelliDecision {
  bool verdict = false;
  std::vector<CheckRecord> checks;
  std::vector<std::string> warnings;
  std::optional<CurveIsomorphism> witness;
};

/// True iff the ranks agree and the marked curves are isomorphic. Degrees and weights play no role.
/// A supplied witness is checked; otherwise relabelings are searched.
TorelliDecision torelli_3birational(const ModuliDescriptor& a, const ModuliDescriptor& b,
                                    const std::optional<std::vector<std::size_t>>& point_map = std::nullopt);

/// T_{O(m x)} o H_{k x} with d' - d = r m - k and 0 <= k < r.
BasicTransformation bridge_transformation(const CurveModel& model, long d, long d_target, std::size_t point);

enum class Claim { ThreeBirational, Isomorphism };

struct DecompositionReport {
  Claim claim;
  bool verdict = false;
  std::vector<CheckRecord> checks;
  std::vector<std::string> warnings;
  /// At rank 2 with s = -1: a T+ representative T' with T = T' o A_inv on degree-d invariants.
  std::optional<BasicTransformation> suggestion;
};

/// Throws ShapeMismatch on a rank mismatch and DegreeMismatch when deg xi != degree(source).
DecompositionReport verify_decomposition(const ModuliDescriptor& source, const ModuliDescriptor& target,
                                         const std::vector<std::size_t>& point_map, const BasicTransformation& t,
                                         const JacobianAutomorphism& rho, const LineBundleClass& xi, Claim claim,
                                         const WallOptions& options = {});

}  // namespace partrans
