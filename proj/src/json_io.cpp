#include "partrans/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "partrans/errors.hpp"

namespace partrans {

namespace {

Rational rational_at(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) throw ParseError(where, "rationals must be exact strings \"a/b\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where, e.what());
  }
}

const char* subring_name(EndomorphismSubring s) { return s == EndomorphismSubring::Scalar ? "scalar" : "full"; }

}  // namespace

Json parse_json(std::string_view text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(what, e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

WeightSystem weights_from_json(const Json& doc, const CurveModel& model) {
  if (!doc.is_object()) throw ParseError("weights", "expected an object mapping point names to weight lists");
  for (const auto& [key, value] : doc.items()) model.point_index(key);
  std::vector<std::vector<Rational>> raw;
  for (const auto& p : model.points()) {
    if (!doc.contains(p.name)) throw ParseError("weights." + p.name, "missing weights for this point");
    const Json& list = doc.at(p.name);
    if (!list.is_array()) throw ParseError("weights." + p.name, "expected an array of rationals");
    std::vector<Rational> w;
    for (std::size_t i = 0; i < list.size(); ++i) {
      w.push_back(rational_at(list[i], "weights." + p.name + "[" + std::to_string(i) + "]"));
    }
    raw.push_back(std::move(w));
  }
  return WeightSystem::canonicalize(std::move(raw), model.rank());
}

Json weights_to_json(const CurveModel& model, const WeightSystem& w) {
  Json out = Json::object();
  for (std::size_t i = 0; i < w.num_points(); ++i) {
    Json list = Json::array();
    for (const auto& a : w.at(i)) list.push_back(format_rational(a));
    out[model.point(i).name] = std::move(list);
  }
  return out;
}

LineBundleClass line_from_json(const Json& doc, std::size_t dim, const std::string& where) {
  const std::string base = where.empty() ? "class" : where;
  if (!doc.is_object()) throw ParseError(base, "expected {\"degree\": d, \"jac\": [...]}");
  if (!doc.contains("degree") || !doc.at("degree").is_number_integer()) {
    throw ParseError(base + ".degree", "expected an integer");
  }
  std::vector<Rational> coords;
  if (doc.contains("jac")) {
    const Json& jac = doc.at("jac");
    if (!jac.is_array()) throw ParseError(base + ".jac", "expected an array of rationals");
    for (std::size_t i = 0; i < jac.size(); ++i) {
      coords.push_back(rational_at(jac[i], base + ".jac[" + std::to_string(i) + "]"));
    }
  } else {
    coords.assign(dim, Rational(0));
  }
  if (coords.size() != dim) {
    throw DimensionMismatch(base + ".jac: expected " + std::to_string(dim) + " coordinates, got " +
                            std::to_string(coords.size()));
  }
  return {doc.at("degree").get<long>(), JacobianElement(std::move(coords))};
}

Json jacobian_to_json(const JacobianElement& j) {
  Json out = Json::array();
  for (const auto& c : j.coords()) out.push_back(format_rational(c));
  return out;
}

Json line_to_json(const LineBundleClass& c) {
  Json out = Json::object();
  out["degree"] = c.degree;
  out["jac"] = jacobian_to_json(c.jac);
  return out;
}

Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json integer_to_json(const Integer& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

Json divisor_to_json(const CurveModel& model, const Divisor& d) {
  Json out = Json::object();
  for (std::size_t i = 0; i < d.size(); ++i) out[model.point(i).name] = d[i];
  return out;
}

ParabolicInvariant invariant_from_json(const Json& doc, const CurveModel& model) {
  if (!doc.is_object()) throw ParseError("invariant", "expected an object");
  ParabolicInvariant v;
  v.rank = model.rank();
  if (doc.contains("rank")) {
    if (!doc.at("rank").is_number_integer()) throw ParseError("invariant.rank", "expected an integer");
    v.rank = doc.at("rank").get<int>();
  }
  if (!doc.contains("det")) throw ParseError("invariant.det", "missing field");
  v.det = line_from_json(doc.at("det"), model.jac_dim(), "invariant.det");
  if (!doc.contains("weights")) throw ParseError("invariant.weights", "missing field");
  v.weights = weights_from_json(doc.at("weights"), model);
  v.label = doc.contains("label") && doc.at("label").is_string() ? doc.at("label").get<std::string>() : "E";
  return v;
}

Json invariant_to_json(const CurveModel& model, const ParabolicInvariant& v) {
  Json out = Json::object();
  out["rank"] = v.rank;
  out["det"] = line_to_json(v.det);
  out["weights"] = weights_to_json(model, v.weights);
  out["label"] = v.label;
  return out;
}

Json transformation_to_json(const CurveModel& model, const BasicTransformation& t) {
  Json out = Json::object();
  out["text"] = format_canonical(model, t);
  out["sigma"] = model.automorphism(t.sigma).name;
  out["s"] = t.s;
  out["L"] = line_to_json(t.line);
  out["H"] = divisor_to_json(model, t.hecke);
  return out;
}

Json element_to_json(const CurveModel& model, const Element& e) {
  Json out = Json::object();
  out["text"] = format_canonical(model, e);
  if (e.rho) out["rho"] = matrix_to_json(e.rho->tilde());
  out["basic"] = transformation_to_json(model, e.basic);
  return out;
}

Json genericity_to_json(const CurveModel& model, const GenericityResult& g) {
  Json out = Json::object();
  out["generic"] = g.generic;
  if (g.witness) {
    Json w = Json::object();
    w["subrank"] = g.witness->subrank;
    Json subsets = Json::object();
    for (std::size_t i = 0; i < g.witness->subsets.size(); ++i) subsets[model.point(i).name] = g.witness->subsets[i];
    w["subsets"] = std::move(subsets);
    w["m"] = integer_to_json(g.m);
    out["witness"] = std::move(w);
  }
  return out;
}

Json fingerprint_to_json(const ChamberFingerprint& f) {
  Json out = Json::object();
  out["order"] = "subrank ascending, then subset tuples lexicographic with the first point most significant";
  out["floors"] = f.floors;
  return out;
}

Json stabilizer_to_json(const CurveModel& model, const StabilizerReport& report) {
  Json sectors = Json::array();
  for (const auto& s : report.sectors) {
    Json rec = Json::object();
    rec["sigma"] = model.automorphism(s.sigma).name;
    rec["s"] = s.s;
    rec["H"] = divisor_to_json(model, s.hecke);
    rec["L_degree"] = s.line_degree;
    rec["root"] = jacobian_to_json(s.root);
    rec["torsor_size"] = integer_to_json(s.torsor_size);
    sectors.push_back(std::move(rec));
  }
  Json out = Json::object();
  out["total"] = integer_to_json(report.total);
  out["sectors"] = std::move(sectors);
  return out;
}

Json cosets_to_json(const CurveModel& model, const std::vector<CosetRepresentative>& reps) {
  Json out = Json::array();
  for (const auto& rep : reps) {
    Json rec = transformation_to_json(model, rep.transformation);
    rec["positive"] = rep.positive;
    rec["preserves_chamber"] = rep.preserves_chamber;
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

Json discrete_to_json(const CurveModel& model, const std::vector<DiscreteEntry>& entries) {
  Json out = Json::array();
  for (const auto& e : entries) {
    Json rec = transformation_to_json(model, e.transformation);
    rec["preserves_chamber"] = e.preserves_chamber;
    rec["redundant_rank2"] = e.redundant_rank2;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

Json aut_report_to_json(const CurveModel& model, const AutomorphismReport& report) {
  Json jac = Json::object();
  jac["description"] = "tensoring by degree-0 line bundles, a torsor under J(X)";
  jac["dimension"] = report.genus;
  jac["present"] = true;

  Json aut = Json::object();
  aut["subring"] = subring_name(report.subring);
  if (report.subring == EndomorphismSubring::Scalar) {
    Json elems = Json::array();
    for (const auto& rho : report.aut_j) elems.push_back(matrix_to_json(rho.tilde()));
    aut["elements"] = std::move(elems);
    aut["description"] = "rho = (1 + r k) I with rho~ = k I";
  } else {
    aut["description"] = "all I + r M with det = +-1 and M an integer matrix";
  }

  Json out = Json::object();
  out["genus"] = report.genus;
  out["rank"] = report.rank;
  out["degree"] = report.degree;
  out["jacobian_layer"] = std::move(jac);
  out["aut_j_layer"] = std::move(aut);
  out["discrete_3bir"] = discrete_to_json(model, report.discrete_3bir);
  out["discrete_regular"] = discrete_to_json(model, report.discrete_regular);
  if (report.rank == 2) out["rank2_note"] = "s = -1 entries are redundant: A_inv = T_xi o D-";
  return out;
}

Json checks_to_json(const std::vector<CheckRecord>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) {
    Json rec = Json::object();
    rec["name"] = c.name;
    rec["pass"] = c.pass;
    rec["details"] = c.details;
    out.push_back(std::move(rec));
  }
  return out;
}

Json torelli_to_json(const CurveModel& a, const CurveModel& b, const TorelliDecision& decision) {
  Json out = Json::object();
  out["verdict"] = decision.verdict;
  out["checks"] = checks_to_json(decision.checks);
  out["warnings"] = decision.warnings;
  if (decision.witness) {
    Json map = Json::object();
    for (std::size_t i = 0; i < decision.witness->point_map.size(); ++i) {
      map[a.point(i).name] = b.point(decision.witness->point_map[i]).name;
    }
    out["witness"] = std::move(map);
  }
  return out;
}

Json decomposition_to_json(const CurveModel& model, const DecompositionReport& report) {
  Json out = Json::object();
  out["claim"] = report.claim == Claim::Isomorphism ? "isomorphism" : "3birational";
  out["verdict"] = report.verdict;
  out["checks"] = checks_to_json(report.checks);
  out["warnings"] = report.warnings;
  if (report.suggestion) out["suggestion"] = format_canonical(model, *report.suggestion) + " * A_inv";
  return out;
}

}  // namespace partrans
