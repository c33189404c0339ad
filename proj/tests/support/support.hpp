#pragma once

// Model generators, random samplers and brute-force oracles shared by the
// unit tests and the acceptance suite.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "partrans/classify.hpp"
#include "partrans/expression.hpp"

namespace support {

using namespace partrans;
using Rng = std::mt19937_64;

/// Points p0, p1, ... (or the given names) with random torsion classes; identity automorphism only.
CurveModel trivial_model(int genus, int rank, std::size_t n, Rng& rng, long degree = 0,
                         const std::vector<std::string>& names = {});
/// Two points p, q and the involution swapping them: M = -I, t = j_p + j_q.
CurveModel swap_model(int genus, int rank, Rng& rng, long degree = 0);
/// One point p fixed by the involution M = -I, t = 2 j_p.
CurveModel involution_model(int genus, int rank, Rng& rng, long degree = 0);
/// Three points permuted cyclically; the Jacobian matrix is A = [[0,-1],[1,-1]] on each 2x2 block.
CurveModel cyclic3_model(int genus, int rank, Rng& rng, long degree = 0);

/// The suite of generated models used by the property tests.
std::vector<CurveModel> model_family(Rng& rng);

/// The worked configuration g = 6, r = 2 with points p, q and trivial automorphisms.
CurveModel worked_model();

Rational random_rational(Rng& rng, long max_den = 6);
JacobianElement random_jac(std::size_t dim, Rng& rng, long max_den = 6);
LineBundleClass random_class(std::size_t dim, Rng& rng, long degree_bound = 3, long max_den = 6);
Divisor random_divisor(std::size_t n, Rng& rng, long lo, long hi);
BasicTransformation random_transformation(const CurveModel& model, Rng& rng);
/// Random element of T_d for d = deg of the model's reference class.
BasicTransformation random_degree_preserving(const CurveModel& model, Rng& rng);

/// Random canonical weights (not necessarily generic).
WeightSystem random_weights(const CurveModel& model, Rng& rng, long max_den = 12);
WeightSystem random_generic_weights(const CurveModel& model, Rng& rng, long max_den = 12);
ParabolicInvariant random_invariant(const CurveModel& model, Rng& rng, long degree);

/// Product of transvections I + r k e_ij; its tilde (det = 1).
EndomorphismMatrix random_tilde(std::size_t dim, int r, Rng& rng, int steps = 3);

/// Applies the word Sigma_sigma D^s T_L H_H generator by generator to an invariant,
/// using only the elementary action of each generator.
ParabolicInvariant word_action(const CurveModel& model, const BasicTransformation& t, const ParabolicInvariant& v);

/// Counts tuples (sigma, s, L, H) with act_det(T, xi) = xi by enumerating deg L in a window and the
/// Jacobian part of L over the grid (1/(rN)) Z^{2g}, N a common denominator of all model data and xi.
Integer brute_force_stabilizer_count(const CurveModel& model, const LineBundleClass& xi);

/// Smallest common denominator of all point classes, translations and the given class.
long common_denominator(const CurveModel& model, const LineBundleClass& xi);

bool same_invariant(const ParabolicInvariant& a, const ParabolicInvariant& b);

}  // namespace support
