#pragma once

// Full-flag parabolic weight systems and the wall-and-chamber calculus.
//
// A wall datum is a subrank r' in [1, r) together with a subset I(x) of size
// r' at every marked point; its value is
//     W = r' * sum_x sum_i a_i(x) - r * sum_x sum_{i in I(x)} a_i(x).
// A weight system is generic when no wall value is an integer. Chambers are
// identified by the vector of floors of all wall values.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "partrans/rational.hpp"

namespace partrans {

/// Per-point weights 0 = a_1(x) < a_2(x) < ... < a_r(x) < 1, indexed by model point order.
class WeightSystem {
 public:
  WeightSystem() = default;

  /// Shifts each point so that its first weight is 0. Throws InvalidWeights when a point is not
  /// strictly increasing or spans an interval of length >= 1, ShapeMismatch on a wrong length.
  static WeightSystem canonicalize(std::vector<std::vector<Rational>> raw, int rank);

  int rank() const { return rank_; }
  std::size_t num_points() const { return weights_.size(); }
  const std::vector<Rational>& at(std::size_t point) const { return weights_[point]; }
  const std::vector<std::vector<Rational>>& per_point() const { return weights_; }

  friend bool operator==(const WeightSystem& a, const WeightSystem& b) {
    return a.rank_ == b.rank_ && a.weights_ == b.weights_;
  }
  friend bool operator!=(const WeightSystem& a, const WeightSystem& b) { return !(a == b); }

 private:
  WeightSystem(int rank, std::vector<std::vector<Rational>> weights) : rank_(rank), weights_(std::move(weights)) {}

  int rank_ = 2;
  std::vector<std::vector<Rational>> weights_;
};

struct WallDatum {
  int subrank = 1;
  /// subsets[x] holds the 1-based indices of I(x), increasing.
  std::vector<std::vector<int>> subsets;
  Rational value;

  friend bool operator==(const WallDatum& a, const WallDatum& b) {
    return a.subrank == b.subrank && a.subsets == b.subsets && a.value == b.value;
  }
};

struct ChamberFingerprint {
  std::vector<long> floors;

  friend bool operator==(const ChamberFingerprint& a, const ChamberFingerprint& b) { return a.floors == b.floors; }
  friend bool operator!=(const ChamberFingerprint& a, const ChamberFingerprint& b) { return !(a == b); }
};

struct WallOptions {
  /// Above this many subset tuples for one subrank, genericity switches to the residue DP.
  std::uint64_t dp_threshold = 1'000'000;
  /// Maximum number of wall data a fingerprint may enumerate.
  std::uint64_t enum_cap = 1'000'000;
};

struct GenericityResult {
  bool generic = true;
  /// On a non-generic system: the last integral wall datum in enumeration order.
  std::optional<WallDatum> witness;
  /// The integer value m of the witness.
  Integer m;
};

Rational parabolic_degree(long degree, const WeightSystem& w);

/// Number of wall data: sum over r' of C(r, r')^n, saturating at UINT64_MAX.
std::uint64_t wall_count(int rank, std::size_t num_points);

/// Visits every wall datum in lexicographic order of (r', I(x_1), ..., I(x_n)).
/// The callback returns false to stop early.
void for_each_wall(const WeightSystem& w, const std::function<bool(const WallDatum&)>& visit);

GenericityResult is_generic(const WeightSystem& w, const WallOptions& options = {});

/// Brute-force genericity over every wall datum, independent of the residue DP.
GenericityResult is_generic_exhaustive(const WeightSystem& w);
/// Residue DP only, regardless of the threshold.
GenericityResult is_generic_dp(const WeightSystem& w);

/// Throws NotGeneric when a wall value is integral, ResourceLimit above options.enum_cap.
ChamberFingerprint chamber_fingerprint(const WeightSystem& w, const WallOptions& options = {});

/// Throws NotGeneric or ShapeMismatch. Stops at the first differing floor.
bool same_chamber(const WeightSystem& a, const WeightSystem& b, const WallOptions& options = {});

/// One Hecke step at the given point: (0, a_2, ..., a_r) -> (0, a_3 - a_2, ..., a_r - a_2, 1 - a_2).
WeightSystem hecke_weights(const WeightSystem& w, std::size_t point);

/// Per point, canonicalize(1 - a_r, ..., 1 - a_1).
WeightSystem dual_weights(const WeightSystem& w);

}  // namespace partrans
