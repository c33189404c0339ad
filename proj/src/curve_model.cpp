#include "partrans/curve_model.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

#include "partrans/errors.hpp"

namespace partrans {

using nlohmann::json;

namespace {

bool is_identity_automorphism(const CurveAutomorphism& a) {
  for (std::size_t i = 0; i < a.point_perm.size(); ++i) {
    if (a.point_perm[i] != i) return false;
  }
  return a.matrix.is_identity() && a.translation.is_zero();
}

bool same_action(const CurveAutomorphism& a, const CurveAutomorphism& b) {
  return a.point_perm == b.point_perm && a.matrix == b.matrix && a.translation == b.translation;
}

}  // namespace

CurveAutomorphism compose_affine(const CurveAutomorphism& outer, const CurveAutomorphism& inner) {
  // (outer o inner)^* = inner^* o outer^*:
  //   (deg, j) -> (deg, M_in M_out j + deg (M_in t_out + t_in))
  CurveAutomorphism out;
  out.name = outer.name + "*" + inner.name;
  out.point_perm.resize(inner.point_perm.size());
  for (std::size_t i = 0; i < inner.point_perm.size(); ++i) out.point_perm[i] = outer.point_perm[inner.point_perm[i]];
  out.matrix = inner.matrix * outer.matrix;
  out.translation = inner.matrix.apply(outer.translation) + inner.translation;
  return out;
}

CurveModel::CurveModel(int genus, int rank, long degree, std::vector<MarkedPoint> points,
                       std::vector<CurveAutomorphism> automorphisms, std::optional<LineBundleClass> reference_det,
                       EndomorphismSubring subring)
    : genus_(genus),
      rank_(rank),
      degree_(degree),
      points_(std::move(points)),
      automorphisms_(std::move(automorphisms)),
      subring_(subring) {
  if (genus_ < 1) throw ParseError("genus", "must be a positive integer");
  if (rank_ < 2) throw ParseError("rank", "must be at least 2, got " + std::to_string(rank_));
  const std::size_t dim = jac_dim();
  std::set<std::string> names;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!names.insert(p.name).second) throw ParseError("points[" + std::to_string(i) + "].name", "duplicate point name '" + p.name + "'");
    if (p.jac_class.size() != dim) {
      throw DimensionMismatch("points[" + std::to_string(i) + "].jac: expected " + std::to_string(dim) +
                              " coordinates (2g), got " + std::to_string(p.jac_class.size()));
    }
  }
  std::set<std::string> aut_names;
  for (std::size_t k = 0; k < automorphisms_.size(); ++k) {
    const auto& a = automorphisms_[k];
    const std::string where = "automorphisms[" + std::to_string(k) + "]";
    if (!aut_names.insert(a.name).second) throw ParseError(where + ".name", "duplicate automorphism name '" + a.name + "'");
    if (a.point_perm.size() != points_.size()) throw DimensionMismatch(where + ".perm: wrong number of points");
    for (std::size_t img : a.point_perm) {
      if (img >= points_.size()) throw DimensionMismatch(where + ".perm: image out of range");
    }
    if (a.matrix.rows() != dim || a.matrix.cols() != dim) {
      throw DimensionMismatch(where + ".matrix: expected " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    if (a.translation.size() != dim) {
      throw DimensionMismatch(where + ".translation: expected " + std::to_string(dim) + " coordinates");
    }
  }
  reference_det_ = reference_det.value_or(LineBundleClass{degree_, JacobianElement::zero(dim)});
  if (reference_det_.jac.size() != dim) throw DimensionMismatch("xi.jac: expected " + std::to_string(dim) + " coordinates");
  if (reference_det_.degree != degree_) throw ParseError("xi.degree", "reference determinant must have the model degree");

  const std::size_t k = automorphisms_.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (is_identity_automorphism(automorphisms_[i])) {
      identity_ = i;
      break;
    }
  }
  composition_.assign(k * k, -1);
  inverse_.assign(k, -1);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      CurveAutomorphism c = compose_affine(automorphisms_[i], automorphisms_[j]);
      for (std::size_t m = 0; m < k; ++m) {
        if (same_action(c, automorphisms_[m])) {
          composition_[i * k + j] = static_cast<long>(m);
          break;
        }
      }
    }
  }
  if (identity_) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (composition_[i * k + j] == static_cast<long>(*identity_) &&
            composition_[j * k + i] == static_cast<long>(*identity_)) {
          inverse_[i] = static_cast<long>(j);
          break;
        }
      }
    }
  }
}

std::size_t CurveModel::point_index(std::string_view name) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].name == name) return i;
  }
  throw UnknownName("point", std::string(name));
}

std::size_t CurveModel::automorphism_index(std::string_view name) const {
  for (std::size_t i = 0; i < automorphisms_.size(); ++i) {
    if (automorphisms_[i].name == name) return i;
  }
  throw UnknownName("automorphism", std::string(name));
}

std::size_t CurveModel::identity_index() const {
  if (!identity_) throw Error("the automorphism table has no identity element");
  return *identity_;
}

std::size_t CurveModel::compose_automorphisms(std::size_t outer, std::size_t inner) const {
  long m = composition_[outer * automorphisms_.size() + inner];
  if (m < 0) {
    throw Error("automorphism table is not closed: " + automorphisms_[outer].name + " o " +
                automorphisms_[inner].name + " is missing");
  }
  return static_cast<std::size_t>(m);
}

std::size_t CurveModel::inverse_automorphism(std::size_t i) const {
  if (inverse_[i] < 0) throw Error("automorphism " + automorphisms_[i].name + " has no inverse in the table");
  return static_cast<std::size_t>(inverse_[i]);
}

bool operator==(const ValidationReport& a, const ValidationReport& b) {
  if (a.warnings != b.warnings || a.violations.size() != b.violations.size()) return false;
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    if (a.violations[i].code != b.violations[i].code || a.violations[i].message != b.violations[i].message) return false;
  }
  return true;
}

ValidationReport validate_model(const CurveModel& model) {
  ValidationReport report;
  auto violate = [&](std::string code, std::string message) {
    report.violations.push_back({std::move(code), std::move(message)});
  };
  if (model.genus() < 6) {
    report.warnings.push_back("genus " + std::to_string(model.genus()) +
                              " < 6: the classification theorems assume g >= 6; computations still run");
  }
  if (model.num_points() == 0) {
    report.warnings.push_back("no marked points: weight systems are empty and every chamber test is vacuous");
  }
  if (!model.has_identity()) violate("identity", "no automorphism acts as the identity");

  const auto& auts = model.automorphisms();
  const std::size_t n = model.num_points();
  for (const auto& a : auts) {
    std::vector<bool> hit(n, false);
    for (std::size_t img : a.point_perm) hit[img] = true;
    if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
      violate("perm", a.name + ": point map is not a permutation");
    }
    Integer det = a.matrix.determinant();
    if (det != 1 && det != -1) violate("matrix", a.name + ": det(M) = " + det.get_str() + " is not +-1");
  }

  for (std::size_t i = 0; i < auts.size(); ++i) {
    for (std::size_t j = 0; j < auts.size(); ++j) {
      try {
        (void)model.compose_automorphisms(i, j);
      } catch (const Error&) {
        std::string what = auts[i].name + " o " + auts[j].name + " is not in the table";
        if (i == j) {
          CurveAutomorphism sq = compose_affine(auts[i], auts[j]);
          if (sq.point_perm == auts[model.has_identity() ? model.identity_index() : i].point_perm &&
              sq.matrix.is_identity() && !sq.translation.is_zero()) {
            what += " (order-2 axiom fails: the square translates by a nonzero class)";
          }
        }
        violate("closure", what);
      }
    }
  }
  if (model.has_identity()) {
    for (std::size_t i = 0; i < auts.size(); ++i) {
      try {
        (void)model.inverse_automorphism(i);
      } catch (const Error&) {
        violate("inverse", auts[i].name + " has no inverse in the table");
      }
    }
  }

  // sigma^* O(x) = O(sigma^{-1}(x)), i.e. M t_x + t_sigma = j_{sigma^{-1} x}
  for (const auto& a : auts) {
    std::vector<std::size_t> inv(n, n);
    for (std::size_t i = 0; i < n; ++i) inv[a.point_perm[i]] = i;
    for (std::size_t i = 0; i < n; ++i) {
      if (inv[i] == n) continue;
      LineBundleClass lhs = pullback(a, point_class(model, i));
      LineBundleClass rhs = point_class(model, inv[i]);
      if (lhs != rhs) {
        violate("pullback", a.name + ": pullback of O(" + model.point(i).name + ") is not O(" +
                                model.point(inv[i]).name + ")");
      }
    }
  }
  return report;
}

LineBundleClass point_class(const CurveModel& model, std::string_view name) {
  return point_class(model, model.point_index(name));
}

LineBundleClass point_class(const CurveModel& model, std::size_t index) {
  return {1, model.point(index).jac_class};
}

// --- configuration documents -------------------------------------------------

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where.empty() ? key : where + "." + key, "missing field");
  return obj.at(key);
}

long as_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where, "expected an integer");
  return v.get<long>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where, "expected a string");
  return v.get<std::string>();
}

Rational as_rational(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) throw ParseError(where, "rationals must be exact strings \"a/b\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where, e.what());
  }
}

JacobianElement as_jacobian(const json& v, std::size_t dim, const std::string& where) {
  if (!v.is_array()) throw ParseError(where, "expected an array of rationals");
  if (v.size() != dim) {
    throw DimensionMismatch(where + ": expected " + std::to_string(dim) + " coordinates (2g), got " +
                            std::to_string(v.size()));
  }
  std::vector<Rational> coords;
  for (std::size_t i = 0; i < v.size(); ++i) coords.push_back(as_rational(v[i], where + "[" + std::to_string(i) + "]"));
  return JacobianElement(std::move(coords));
}

IntMatrix as_matrix(const json& v, std::size_t dim, const std::string& where) {
  if (!v.is_array() || v.size() != dim) throw DimensionMismatch(where + ": expected " + std::to_string(dim) + " rows");
  IntMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& row = v[i];
    if (!row.is_array() || row.size() != dim) {
      throw DimensionMismatch(where + "[" + std::to_string(i) + "]: expected " + std::to_string(dim) + " entries");
    }
    for (std::size_t j = 0; j < dim; ++j) {
      const std::string at = where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      if (row[j].is_number_integer()) {
        m(i, j) = row[j].get<long>();
      } else if (row[j].is_string()) {
        try {
          m(i, j) = Integer(row[j].get<std::string>(), 10);
        } catch (const std::invalid_argument&) {
          throw ParseError(at, "expected an integer");
        }
      } else {
        throw ParseError(at, "expected an integer");
      }
    }
  }
  return m;
}

}  // namespace

CurveModel load_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", e.what());
  }
  if (!doc.is_object()) throw ParseError("", "configuration must be a JSON object");

  const long genus = as_integer(require(doc, "genus", ""), "genus");
  const long rank = as_integer(require(doc, "rank", ""), "rank");
  if (genus < 1) throw ParseError("genus", "must be a positive integer");
  if (rank < 2) throw ParseError("rank", "must be at least 2, got " + std::to_string(rank));
  const long degree = doc.contains("degree") ? as_integer(doc["degree"], "degree") : 0;
  const std::size_t dim = static_cast<std::size_t>(2 * genus);

  std::vector<MarkedPoint> points;
  const json& pts = require(doc, "points", "");
  if (!pts.is_array()) throw ParseError("points", "expected an array");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string where = "points[" + std::to_string(i) + "]";
    MarkedPoint p;
    p.name = as_string(require(pts[i], "name", where), where + ".name");
    p.jac_class = as_jacobian(require(pts[i], "jac", where), dim, where + ".jac");
    points.push_back(std::move(p));
  }
  auto find_point = [&](const std::string& name, const std::string& where) -> std::size_t {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].name == name) return i;
    }
    throw ParseError(where, "unknown point '" + name + "'");
  };

  std::vector<CurveAutomorphism> auts;
  if (doc.contains("automorphisms")) {
    const json& list = doc["automorphisms"];
    if (!list.is_array()) throw ParseError("automorphisms", "expected an array");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string where = "automorphisms[" + std::to_string(k) + "]";
      const json& item = list[k];
      CurveAutomorphism a;
      a.name = as_string(require(item, "name", where), where + ".name");
      a.point_perm.resize(points.size());
      for (std::size_t i = 0; i < points.size(); ++i) a.point_perm[i] = i;
      if (item.contains("perm")) {
        const json& perm = item["perm"];
        if (!perm.is_object()) throw ParseError(where + ".perm", "expected an object name -> name");
        for (auto it = perm.begin(); it != perm.end(); ++it) {
          std::size_t from = find_point(it.key(), where + ".perm");
          std::size_t to = find_point(as_string(it.value(), where + ".perm." + it.key()), where + ".perm." + it.key());
          a.point_perm[from] = to;
        }
      }
      a.matrix = item.contains("matrix") ? as_matrix(item["matrix"], dim, where + ".matrix") : IntMatrix::identity(dim);
      a.translation = item.contains("translation") ? as_jacobian(item["translation"], dim, where + ".translation")
                                                   : JacobianElement::zero(dim);
      auts.push_back(std::move(a));
    }
  } else {
    CurveAutomorphism id;
    id.name = "id";
    for (std::size_t i = 0; i < points.size(); ++i) id.point_perm.push_back(i);
    id.matrix = IntMatrix::identity(dim);
    id.translation = JacobianElement::zero(dim);
    auts.push_back(std::move(id));
  }

  std::optional<LineBundleClass> xi;
  if (doc.contains("xi")) {
    const json& x = doc["xi"];
    LineBundleClass c;
    c.degree = x.contains("degree") ? as_integer(x["degree"], "xi.degree") : degree;
    c.jac = as_jacobian(require(x, "jac", "xi"), dim, "xi.jac");
    xi = std::move(c);
  }

  EndomorphismSubring subring = EndomorphismSubring::Scalar;
  if (doc.contains("endomorphisms")) {
    const std::string s = as_string(doc["endomorphisms"], "endomorphisms");
    if (s == "scalar") {
      subring = EndomorphismSubring::Scalar;
    } else if (s == "full") {
      subring = EndomorphismSubring::Full;
    } else {
      throw ParseError("endomorphisms", "expected \"scalar\" or \"full\"");
    }
  }

  return CurveModel(static_cast<int>(genus), static_cast<int>(rank), degree, std::move(points), std::move(auts), xi,
                    subring);
}

}  // namespace partrans
