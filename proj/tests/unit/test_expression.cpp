#include "doctest.h"
#include "partrans/errors.hpp"
#include "support.hpp"

using namespace partrans;

namespace {

std::size_t syntax_position(const std::string& text, const CurveModel& m) {
  try {
    parse_expression(text, m);
  } catch (const SyntaxError& e) {
    return e.position();
  }
  return std::string::npos;
}

CurveModel full_model(support::Rng& rng) {
  CurveModel base = support::trivial_model(1, 3, 2, rng, 3, {"p", "q"});
  std::vector<MarkedPoint> points = base.points();
  return CurveModel(1, 3, 3, std::move(points), base.automorphisms(), std::nullopt, EndomorphismSubring::Full);
}

}  // namespace

TEST_CASE("parsing generators") {
  CurveModel m = support::worked_model();
  CHECK(evaluate("id", m).basic == identity_transformation(m));
  CHECK(evaluate("D+", m).basic == identity_transformation(m));
  CHECK(evaluate("D-", m).basic == dualization(m));
  CHECK(evaluate("S(id)", m).basic == identity_transformation(m));
  CHECK(evaluate("H(p)", m).basic == hecke_by(m, Divisor::point(2, 0)));
  CHECK(evaluate("H(p)^2", m).basic == tensor_by(m, -point_class(m, "p")));
  CHECK(evaluate("H(2*p)", m).basic == tensor_by(m, -point_class(m, "p")));
  CHECK(evaluate("H(p)^-1", m).basic == inverse(m, hecke_by(m, Divisor::point(2, 0))));
  CHECK(evaluate("T(O(p - q))", m).basic == tensor_by(m, point_class(m, "p") - point_class(m, "q")));
  CHECK(evaluate("T(O(0))", m).basic == identity_transformation(m));
  CHECK(evaluate("H(0)", m).basic == identity_transformation(m));
  CHECK(evaluate("D- * D-", m).basic == identity_transformation(m));
  CHECK(evaluate("(D- * H(p)) * H(q)", m) == evaluate("D- * (H(p) * H(q))", m));
  CHECK(evaluate("H(p + q)", m) == evaluate("H(p) * H(q)", m));
  auto t = evaluate("T(1, [1/2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0])", m).basic;
  CHECK(t.line.degree == 1);
  CHECK(t.line.jac[0] == Rational(1, 2));
  CHECK(evaluate("T((1, [1/2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]))", m).basic == t);

  auto a = evaluate("A[[-1,0,0,0,0,0,0,0,0,0,0,0],[0,-1,0,0,0,0,0,0,0,0,0,0],[0,0,-1,0,0,0,0,0,0,0,0,0],"
                    "[0,0,0,-1,0,0,0,0,0,0,0,0],[0,0,0,0,-1,0,0,0,0,0,0,0],[0,0,0,0,0,-1,0,0,0,0,0,0],"
                    "[0,0,0,0,0,0,-1,0,0,0,0,0],[0,0,0,0,0,0,0,-1,0,0,0,0],[0,0,0,0,0,0,0,0,-1,0,0,0],"
                    "[0,0,0,0,0,0,0,0,0,-1,0,0],[0,0,0,0,0,0,0,0,0,0,-1,0],[0,0,0,0,0,0,0,0,0,0,0,-1]] * D-",
                    m);
  REQUIRE(a.extended());
  CHECK(a.rho->matrix() == IntMatrix::scalar(12, -1));
  CHECK(a.basic == dualization(m));
}

TEST_CASE("parse errors") {
  CurveModel m = support::worked_model();
  CHECK(syntax_position("H(p", m) == 3);
  CHECK(syntax_position("X(p)", m) == 0);
  CHECK(syntax_position("D- * ", m) == 5);
  CHECK(syntax_position("H(p) )", m) == 5);
  CHECK(syntax_position("H(2 p)", m) == 4);
  CHECK(syntax_position("H(p)^x", m) == 5);
  CHECK(syntax_position("", m) == 0);
  CHECK_THROWS_AS(parse_expression("H(z)", m), UnknownName);
  CHECK_THROWS_AS(parse_expression("S(nope)", m), UnknownName);
  CHECK_THROWS_AS(parse_expression("T(0, [0, 0])", m), DimensionMismatch);
  CHECK_THROWS_AS(parse_expression("T(0, [1/0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0])", m), ParseError);
  CHECK_THROWS_AS(parse_expression("A[[1]]", m), DimensionMismatch);
  support::Rng rng(1);
  CurveModel small = support::trivial_model(1, 2, 1, rng);
  CHECK_THROWS_AS(parse_expression("A[[0,1],[0,0]]", small), Error);
  CHECK_NOTHROW(parse_expression("A[[-1,0],[0,-1]]", small));
}

TEST_CASE("extended products must preserve the degree") {
  support::Rng rng(79);
  CurveModel m = full_model(rng);
  CHECK_THROWS_AS(evaluate("A[[0,3],[0,0]] * H(p)", m), DegreeMismatch);
  auto e = evaluate("A[[0,3],[0,0]] * H(p) * H(p) * H(p) * T(O(p))", m);
  REQUIRE(e.extended());
  CHECK(e.basic == identity_transformation(m));
  CHECK(format_canonical(m, e) == "A[[0,3],[0,0]] * id");
  auto sq = evaluate("A[[0,3],[0,0]]^2", m);
  CHECK(sq.rho->tilde() == tilde_compose(e.rho->tilde(), e.rho->tilde(), 3));
  auto inv = evaluate("A[[0,3],[0,0]]^-1", m);
  CHECK(evaluate("A[[0,3],[0,0]]^-1 * A[[0,3],[0,0]]", m).rho->is_identity());
  CHECK_FALSE(inv.rho->is_identity());
}

TEST_CASE("canonical text") {
  CurveModel m = support::worked_model();
  CHECK(format_canonical(m, hecke_by(m, Divisor::point(2, 0, 2))) == "T(O(-1*p))");
  CHECK(format_canonical(m, bridge_transformation(m, 0, 1, 0)) == "T(O(p)) * H(p)");
  CHECK(format_canonical(m, dualization(m)) == "D-");
  BasicTransformation odd{0, 1, {0, JacobianElement::zero(12)}, Divisor(2)};
  odd.line.jac = JacobianElement(std::vector<Rational>(12, Rational(1, 7)));
  CHECK(format_canonical(m, odd) == "T(0, [1/7, 1/7, 1/7, 1/7, 1/7, 1/7, 1/7, 1/7, 1/7, 1/7, 1/7, 1/7])");
  auto c = recognize_divisor_class(m, point_class(m, "p") - point_class(m, "q"));
  REQUIRE(c);
  CHECK(*c == Divisor(std::vector<long>{1, -1}));
  CHECK_FALSE(recognize_divisor_class(m, odd.line));
}

TEST_CASE("round trip through the canonical text") {
  support::Rng rng(83);
  for (const auto& m : support::model_family(rng)) {
    for (int k = 0; k < 40; ++k) {
      auto t = support::random_transformation(m, rng);
      std::string text = format_canonical(m, t);
      CAPTURE(text);
      CHECK(evaluate(text, m).basic == t);
      CHECK(evaluate(to_string(m, t), m).basic == t);
    }
  }
  CurveModel f = full_model(rng);
  for (int k = 0; k < 40; ++k) {
    auto rho = make_jac_aut(support::random_tilde(2, 3, rng), 3);
    Element e{support::random_degree_preserving(f, rng), rho};
    std::string text = format_canonical(f, e);
    CAPTURE(text);
    CHECK(evaluate(text, f) == e);
  }
}
