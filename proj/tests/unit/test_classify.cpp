#include "doctest.h"
#include "partrans/errors.hpp"
#include "support.hpp"

using namespace partrans;

namespace {

Rational q(long a, long b) { return Rational(a, b); }

WeightSystem two_points(Rational a, Rational b) { return WeightSystem::canonicalize({{0, a}, {0, b}}, 2); }

/// Copy of the model with point i renamed and moved to position map[i].
CurveModel relabeled(const CurveModel& m, const std::vector<std::size_t>& map, const std::string& prefix) {
  const std::size_t n = m.num_points();
  std::vector<MarkedPoint> points(n);
  for (std::size_t i = 0; i < n; ++i) points[map[i]] = {prefix + std::to_string(i), m.point(i).jac_class};
  std::vector<CurveAutomorphism> auts;
  for (const auto& a : m.automorphisms()) {
    CurveAutomorphism b = a;
    for (std::size_t i = 0; i < n; ++i) b.point_perm[map[i]] = map[a.point_perm[i]];
    auts.push_back(std::move(b));
  }
  return CurveModel(m.genus(), m.rank(), m.degree(), std::move(points), std::move(auts));
}

}  // namespace

TEST_CASE("bridges between degrees") {
  support::Rng rng(61);
  for (int r = 2; r <= 5; ++r) {
    CurveModel m = support::trivial_model(1, r, 1, rng);
    for (long d = -20; d <= 20; ++d) {
      for (long e = -20; e <= 20; ++e) {
        auto t = bridge_transformation(m, d, e, 0);
        CHECK(act_degree(m, t, d) == e);
        CHECK(t.hecke[0] >= 0);
        CHECK(t.hecke[0] < r);
        CHECK(t.line == t.line.degree * point_class(m, 0));
        CHECK(t.s == 1);
      }
    }
  }
  CurveModel m = support::worked_model();
  auto t = bridge_transformation(m, 0, 1, 0);
  CHECK(t.line == point_class(m, "p"));
  CHECK(t.hecke == Divisor::point(2, 0));
  CHECK_THROWS(bridge_transformation(m, 0, 1, 5));
}

TEST_CASE("descriptors") {
  CurveModel m = support::worked_model();
  CHECK_THROWS_AS(make_descriptor(m, 0, two_points(q(1, 2), q(1, 2))), NotGeneric);
  CHECK_THROWS_AS(make_descriptor(m, 0, WeightSystem::canonicalize({{0, q(1, 3)}}, 2)), ShapeMismatch);
  auto a = make_descriptor(m, 3, two_points(q(1, 3), q(1, 5)));
  CHECK(a.rank() == 2);
  CHECK(a.degree == 3);
}

TEST_CASE("Torelli decisions") {
  support::Rng rng(67);
  CurveModel x = support::swap_model(6, 2, rng);
  CurveModel y = relabeled(x, {1, 0}, "y");
  auto a = make_descriptor(x, 0, two_points(q(1, 3), q(1, 5)));
  auto b = make_descriptor(y, 7, two_points(q(1, 4), q(1, 7)));

  auto yes = torelli_3birational(a, b);
  CHECK(yes.verdict);
  CHECK(yes.warnings.empty());
  REQUIRE(yes.witness);

  auto witnessed = torelli_3birational(a, b, std::vector<std::size_t>{1, 0});
  CHECK(witnessed.verdict);

  auto bad = torelli_3birational(a, b, std::vector<std::size_t>{0, 0});
  CHECK_FALSE(bad.verdict);
  CHECK_FALSE(bad.checks.back().pass);
  CHECK(bad.checks.back().name == "curve");

  CurveModel other = support::swap_model(6, 2, rng);
  auto c = make_descriptor(other, 0, two_points(q(1, 3), q(1, 5)));
  CHECK_FALSE(torelli_3birational(a, c).verdict);

  CurveModel three = support::swap_model(6, 3, rng);
  auto d = make_descriptor(three, 0, support::random_generic_weights(three, rng));
  auto rank_mismatch = torelli_3birational(a, d);
  CHECK_FALSE(rank_mismatch.verdict);
  CHECK_FALSE(rank_mismatch.checks.front().pass);

  CurveModel small = support::swap_model(2, 2, rng);
  auto s = make_descriptor(small, 0, two_points(q(1, 3), q(1, 5)));
  auto low = torelli_3birational(s, s);
  CHECK(low.verdict);
  CHECK(low.warnings.size() == 1);

  CurveModel g5 = support::trivial_model(5, 2, 2, rng);
  auto e = make_descriptor(g5, 0, two_points(q(1, 3), q(1, 5)));
  CHECK_FALSE(torelli_3birational(a, e).verdict);
}

TEST_CASE("Torelli is an equivalence on relabeled copies") {
  support::Rng rng(71);
  for (int k = 0; k < 10; ++k) {
    CurveModel x = support::cyclic3_model(4, 2, rng);
    std::vector<std::size_t> m1{2, 0, 1}, m2{1, 2, 0};
    CurveModel y = relabeled(x, m1, "y");
    CurveModel z = relabeled(y, m2, "z");
    auto w = support::random_generic_weights(x, rng);
    auto a = make_descriptor(x, 0, w);
    auto b = make_descriptor(y, 1, support::random_generic_weights(y, rng));
    auto c = make_descriptor(z, -1, support::random_generic_weights(z, rng));
    CHECK(torelli_3birational(a, a).verdict);
    auto ab = torelli_3birational(a, b);
    auto ba = torelli_3birational(b, a);
    auto bc = torelli_3birational(b, c);
    CHECK(ab.verdict);
    CHECK(ba.verdict);
    CHECK(bc.verdict);
    REQUIRE(ab.witness);
    REQUIRE(bc.witness);
    auto ac = compose(*bc.witness, *ab.witness);
    CurveIsomorphism check{ac.point_map, {}};
    CHECK_FALSE(check_isomorphism(x, z, check));
    CurveIsomorphism back = invert(*ab.witness);
    CHECK_FALSE(check_isomorphism(y, x, back));
    CHECK(torelli_3birational(a, c, ac.point_map).verdict);
  }
}

TEST_CASE("decomposition checks") {
  CurveModel m = support::worked_model();
  auto alpha = two_points(q(1, 3), q(1, 5));
  auto src = make_descriptor(m, 0, alpha);
  auto id_rho = JacobianAutomorphism(12, 2);
  const std::vector<std::size_t> same{0, 1};
  auto xi = m.trivial_class();

  auto ok = verify_decomposition(src, src, same, identity_transformation(m), id_rho, xi, Claim::Isomorphism);
  CHECK(ok.verdict);
  CHECK(ok.checks.size() == 4);
  CHECK_FALSE(ok.suggestion);

  auto dual = verify_decomposition(src, src, same, dualization(m), id_rho, xi, Claim::Isomorphism);
  CHECK(dual.verdict);
  REQUIRE(dual.suggestion);
  CHECK(dual.suggestion->s == 1);
  CHECK(dual.warnings.size() == 1);
  support::Rng rng(73);
  auto r = rank2_inversion_tuple(m, xi);
  for (int k = 0; k < 10; ++k) {
    auto v = support::random_invariant(m, rng, 0);
    CHECK(support::same_invariant(act_invariant(m, dualization(m), v),
                                  act_invariant(m, *dual.suggestion, act_invariant(m, r, v))));
  }

  auto degree = verify_decomposition(src, src, same, hecke_by(m, Divisor::point(2, 0)), id_rho, xi,
                                     Claim::ThreeBirational);
  CHECK_FALSE(degree.verdict);
  CHECK_FALSE(degree.checks[0].pass);

  auto target1 = make_descriptor(m, -1, alpha);
  auto shifted = verify_decomposition(src, target1, same, hecke_by(m, Divisor::point(2, 0)), id_rho, xi,
                                      Claim::ThreeBirational);
  CHECK(shifted.verdict);

  auto swapped = verify_decomposition(src, src, {1, 0}, identity_transformation(m), id_rho, xi, Claim::Isomorphism);
  CHECK_FALSE(swapped.verdict);
  CHECK_FALSE(swapped.checks[1].pass);
  CHECK(swapped.checks[3].details.find("skipped") != std::string::npos);

  BasicTransformation sector{0, 1, {1, JacobianElement::zero(12)}, Divisor(std::vector<long>{1, 1})};
  auto chamber = verify_decomposition(src, src, same, sector, id_rho, xi, Claim::Isomorphism);
  CHECK_FALSE(chamber.verdict);
  CHECK(chamber.checks[0].pass);
  CHECK_FALSE(chamber.checks[3].pass);
  CHECK(verify_decomposition(src, src, same, sector, id_rho, xi, Claim::ThreeBirational).verdict);

  IntMatrix bumped = IntMatrix(12, 12);
  bumped(0, 1) = 1;
  auto nonscalar = verify_decomposition(src, src, same, identity_transformation(m), make_jac_aut(bumped, 2), xi,
                                        Claim::ThreeBirational);
  CHECK_FALSE(nonscalar.verdict);
  CHECK_FALSE(nonscalar.checks[2].pass);

  CHECK_THROWS_AS(verify_decomposition(src, src, same, identity_transformation(m), id_rho, {1, xi.jac},
                                       Claim::Isomorphism),
                  DegreeMismatch);
  support::Rng rng3(5);
  CurveModel three = support::trivial_model(6, 3, 2, rng3);
  auto other = make_descriptor(three, 0, support::random_generic_weights(three, rng3));
  CHECK_THROWS_AS(verify_decomposition(src, other, same, identity_transformation(m), id_rho, xi, Claim::Isomorphism),
                  ShapeMismatch);
}
