#include "partrans/classify.hpp"

#include <algorithm>

#include "partrans/errors.hpp"

namespace partrans {

ModuliDescriptor make_descriptor(const CurveModel& model, long degree, WeightSystem alpha, const WallOptions& options) {
  if (alpha.rank() != model.rank() || alpha.num_points() != model.num_points()) {
    throw ShapeMismatch("weight system does not match the model's rank and marked points");
  }
  auto g = is_generic(alpha, options);
  if (!g.generic) throw NotGeneric("weight system lies on a wall (value " + g.m.get_str() + ")");
  return {&model, degree, std::move(alpha)};
}

namespace {

bool same_action(const CurveAutomorphism& a, const CurveAutomorphism& b, const std::vector<std::size_t>& point_map) {
  if (a.matrix != b.matrix || a.translation != b.translation) return false;
  for (std::size_t i = 0; i < point_map.size(); ++i) {
    if (b.point_perm[point_map[i]] != point_map[a.point_perm[i]]) return false;
  }
  return true;
}

}  // namespace

std::optional<std::string> check_isomorphism(const CurveModel& source, const CurveModel& target,
                                             CurveIsomorphism& iso) {
  if (source.genus() != target.genus()) {
    return "genus " + std::to_string(source.genus()) + " != " + std::to_string(target.genus());
  }
  const std::size_t n = source.num_points();
  if (n != target.num_points()) {
    return "marked point count " + std::to_string(n) + " != " + std::to_string(target.num_points());
  }
  if (iso.point_map.size() != n) return "relabeling has the wrong length";
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = iso.point_map[i];
    if (j >= n || hit[j]) return "relabeling is not a bijection";
    hit[j] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = source.point(i);
    const auto& q = target.point(iso.point_map[i]);
    if (p.jac_class != q.jac_class) return "O(" + p.name + ") != O(" + q.name + ") in the Jacobian";
  }
  const auto& auts = target.automorphisms();
  if (source.automorphisms().size() != auts.size()) {
    return "automorphism tables have sizes " + std::to_string(source.automorphisms().size()) + " and " +
           std::to_string(auts.size());
  }
  std::vector<bool> used(auts.size(), false);
  iso.aut_map.assign(source.automorphisms().size(), 0);
  for (std::size_t k = 0; k < source.automorphisms().size(); ++k) {
    const auto& a = source.automorphism(k);
    bool found = false;
    for (std::size_t m = 0; m < auts.size() && !found; ++m) {
      if (!used[m] && same_action(a, auts[m], iso.point_map)) {
        used[m] = true;
        iso.aut_map[k] = m;
        found = true;
      }
    }
    if (!found) return "no automorphism of the target matches '" + a.name + "'";
  }
  return std::nullopt;
}

std::optional<CurveIsomorphism> find_isomorphism(const CurveModel& source, const CurveModel& target) {
  if (source.genus() != target.genus() || source.num_points() != target.num_points()) return std::nullopt;
  const std::size_t n = source.num_points();
  CurveIsomorphism iso;
  iso.point_map.assign(n, 0);
  std::vector<bool> used(n, false);
  std::optional<CurveIsomorphism> result;

  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) {
      CurveIsomorphism candidate = iso;
      if (check_isomorphism(source, target, candidate)) return false;
      result = std::move(candidate);
      return true;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || source.point(i).jac_class != target.point(j).jac_class) continue;
      used[j] = true;
      iso.point_map[i] = j;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  search(search, 0);
  return result;
}

CurveIsomorphism invert(const CurveIsomorphism& iso) {
  CurveIsomorphism out;
  out.point_map.resize(iso.point_map.size());
  out.aut_map.resize(iso.aut_map.size());
  for (std::size_t i = 0; i < iso.point_map.size(); ++i) out.point_map[iso.point_map[i]] = i;
  for (std::size_t k = 0; k < iso.aut_map.size(); ++k) out.aut_map[iso.aut_map[k]] = k;
  return out;
}

CurveIsomorphism compose(const CurveIsomorphism& outer, const CurveIsomorphism& inner) {
  CurveIsomorphism out;
  for (std::size_t j : inner.point_map) out.point_map.push_back(outer.point_map[j]);
  for (std::size_t k : inner.aut_map) out.aut_map.push_back(outer.aut_map[k]);
  return out;
}

TorelliDecision torelli_3birational(const ModuliDescriptor& a, const ModuliDescriptor& b,
                                    const std::optional<std::vector<std::size_t>>& point_map) {
  TorelliDecision out;
  const CurveModel& x = *a.model;
  const CurveModel& y = *b.model;
  if (x.genus() < 4 || y.genus() < 4) {
    out.warnings.push_back("genus below 4: the Torelli criterion is only claimed for g >= 4");
  }
  bool rank_ok = a.rank() == b.rank();
  out.checks.push_back({"rank", rank_ok, std::to_string(a.rank()) + " vs " + std::to_string(b.rank())});

  if (point_map) {
    CurveIsomorphism iso{*point_map, {}};
    auto failure = check_isomorphism(x, y, iso);
    if (failure) {
      out.checks.push_back({"curve", false, "witness rejected: " + *failure});
    } else {
      out.checks.push_back({"curve", true, "witness accepted"});
      out.witness = std::move(iso);
    }
  } else {
    out.witness = find_isomorphism(x, y);
    if (out.witness) {
      out.checks.push_back({"curve", true, "relabeling found by search"});
    } else if (x.genus() != y.genus() || x.num_points() != y.num_points()) {
      out.checks.push_back({"curve", false, "(g, n) = (" + std::to_string(x.genus()) + ", " +
                                                std::to_string(x.num_points()) + ") vs (" + std::to_string(y.genus()) +
                                                ", " + std::to_string(y.num_points()) + ")"});
    } else {
      out.checks.push_back({"curve", false, "no relabeling matches point classes and automorphism tables"});
    }
  }
  out.verdict = std::all_of(out.checks.begin(), out.checks.end(), [](const CheckRecord& c) { return c.pass; });
  return out;
}

BasicTransformation bridge_transformation(const CurveModel& model, long d, long d_target, std::size_t point) {
  if (point >= model.num_points()) throw Error("bridge point index out of range");
  const long r = model.rank();
  const long delta = d_target - d;
  const long m = -floor_div(-delta, r);
  const long k = r * m - delta;
  auto t = identity_transformation(model);
  t.line = m * point_class(model, point);
  t.hecke = Divisor::point(model.num_points(), point, k);
  return t;
}

DecompositionReport verify_decomposition(const ModuliDescriptor& source, const ModuliDescriptor& target,
                                         const std::vector<std::size_t>& point_map, const BasicTransformation& t,
                                         const JacobianAutomorphism& rho, const LineBundleClass& xi, Claim claim,
                                         const WallOptions& options) {
  const CurveModel& model = *source.model;
  if (source.rank() != target.rank()) {
    throw ShapeMismatch("ranks differ: " + std::to_string(source.rank()) + " vs " + std::to_string(target.rank()));
  }
  if (xi.degree != source.degree) {
    throw DegreeMismatch("reference class has degree " + std::to_string(xi.degree) + ", source degree is " +
                         std::to_string(source.degree));
  }
  DecompositionReport out;
  out.claim = claim;

  long image = act_degree(model, t, source.degree);
  out.checks.push_back({"degree", image == target.degree,
                        "T(d) = " + std::to_string(image) + ", d' = " + std::to_string(target.degree)});

  CurveIsomorphism iso{point_map, {}};
  auto failure = check_isomorphism(model, *target.model, iso);
  out.checks.push_back({"witness", !failure, failure ? *failure : "relabeling accepted"});

  bool rho_ok = rho.dim() == model.jac_dim() && rho.modulus() == model.rank() &&
                (model.subring() == EndomorphismSubring::Full || rho.tilde().is_scalar());
  out.checks.push_back({"rho", rho_ok, "rho~ = " + format_matrix(rho.tilde())});

  if (claim == Claim::Isomorphism) {
    if (failure) {
      out.checks.push_back({"chamber", false, "skipped: no valid relabeling"});
    } else {
      std::vector<std::vector<Rational>> pulled(model.num_points());
      for (std::size_t i = 0; i < pulled.size(); ++i) pulled[i] = target.alpha.at(point_map[i]);
      WeightSystem pulled_back = WeightSystem::canonicalize(std::move(pulled), target.rank());
      bool same = same_chamber(act_weights(model, t, source.alpha), pulled_back, options);
      out.checks.push_back({"chamber", same, same ? "T(alpha) and sigma^* alpha' share a chamber"
                                                  : "T(alpha) and sigma^* alpha' lie in different chambers"});
    }
    if (model.rank() == 2 && t.s == -1) {
      out.suggestion = compose(model, t, inverse(model, rank2_inversion_tuple(model, xi)));
      out.warnings.push_back("rank 2 with s = -1: the dual can be absorbed by A_inv = T_xi o D-; T = " +
                             to_string(model, *out.suggestion) + " o A_inv on degree-d invariants");
    }
  }
  out.verdict = std::all_of(out.checks.begin(), out.checks.end(), [](const CheckRecord& c) { return c.pass; });
  return out;
}

}  // namespace partrans
