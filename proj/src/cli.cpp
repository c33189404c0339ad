#include "partrans/cli.hpp"

#include <cstdint>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "partrans/errors.hpp"
#include "partrans/json_io.hpp"

namespace partrans {

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kError = 2;

struct Globals {
  std::string model_path;
  std::uint64_t enum_cap = 1'000'000;
  bool json = false;
};

struct Session {
  Globals globals;
  std::ostream& out;
  std::ostream& err;
  std::unique_ptr<CurveModel> model;

  WallOptions walls() const {
    WallOptions w;
    w.enum_cap = globals.enum_cap;
    return w;
  }
  Integer cap() const { return Integer(std::to_string(globals.enum_cap), 10); }

  const CurveModel& load() {
    if (!model) model = load_model(globals.model_path, "--model");
    return *model;
  }

  std::unique_ptr<CurveModel> load_model(const std::string& path, const char* flag) {
    if (path.empty()) throw Error(std::string(flag) + " FILE is required for this command");
    auto m = std::make_unique<CurveModel>(load_config(read_file(path)));
    ValidationReport report = validate_model(*m);
    for (const auto& w : report.warnings) err << "warning: " << path << ": " << w << "\n";
    if (!report.ok()) {
      std::string message = path + ": invalid model";
      for (const auto& v : report.violations) message += "\n  [" + v.code + "] " + v.message;
      throw Error(message);
    }
    return m;
  }

  void emit(const Json& doc) { out << doc.dump(2) << "\n"; }
};

WeightSystem read_weights(const std::string& path, const CurveModel& model) {
  return weights_from_json(parse_json(read_file(path), path), model);
}

LineBundleClass read_line(const std::string& path, const CurveModel& model) {
  return line_from_json(parse_json(read_file(path), path), model.jac_dim(), path);
}

/// "p=q,q=p" (or "p:q") mapping source point names to target point names.
std::vector<std::size_t> parse_witness(const std::string& text, const CurveModel& source, const CurveModel& target) {
  std::vector<std::size_t> map(source.num_points(), source.num_points());
  std::size_t start = 0;
  while (start <= text.size() && !text.empty()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t sep = item.find_first_of("=:");
    if (sep == std::string::npos) throw ParseError("--witness", "expected name=name pairs, got '" + item + "'");
    map[source.point_index(item.substr(0, sep))] = target.point_index(item.substr(sep + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (map[i] == source.num_points()) throw ParseError("--witness", "no image given for '" + source.point(i).name + "'");
  }
  return map;
}

std::string describe_witness(const CurveModel& model, const GenericityResult& g) {
  std::string out = "not generic: subrank " + std::to_string(g.witness->subrank);
  for (std::size_t i = 0; i < g.witness->subsets.size(); ++i) {
    out += ", I(" + model.point(i).name + ") = {";
    for (std::size_t k = 0; k < g.witness->subsets[i].size(); ++k) {
      if (k > 0) out += ",";
      out += std::to_string(g.witness->subsets[i][k]);
    }
    out += "}";
  }
  return out + ", m = " + g.m.get_str();
}

Element evaluate_all(const std::vector<std::string>& texts, const CurveModel& model) {
  ExprNode product;
  product.kind = ExprNode::Kind::Product;
  for (const auto& t : texts) product.children.push_back(parse_expression(t, model));
  return evaluate(product, model);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Session session{{}, out, err, nullptr};
  Globals& g = session.globals;

  CLI::App app{"Basic transformations of parabolic vector bundles on marked curves", "partrans"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--model", g.model_path, "Curve model configuration (JSON)");
  app.add_option("--enum-cap", g.enum_cap, "Enumeration cap for walls, sectors and torsion")->capture_default_str();
  app.add_flag("--json", g.json, "Machine-readable output");

  // normalize / compose
  std::string normalize_expr;
  auto* normalize = app.add_subcommand("normalize", "Print the canonical form of an expression");
  normalize->add_option("expression", normalize_expr)->required();

  std::vector<std::string> compose_exprs;
  auto* compose_cmd = app.add_subcommand("compose", "Compose expressions, leftmost outermost");
  compose_cmd->add_option("expressions", compose_exprs)->required();

  // act
  std::string act_expr;
  std::optional<long> act_degree_value;
  std::string act_det_path, act_weights_path, act_invariant_path;
  auto* act = app.add_subcommand("act", "Apply a transformation to degrees, determinants, weights or invariants");
  act->add_option("expression", act_expr)->required();
  act->add_option("--degree", act_degree_value, "Degree d");
  act->add_option("--det", act_det_path, "Line bundle class (JSON)");
  act->add_option("--weights", act_weights_path, "Weight system (JSON)");
  act->add_option("--invariant", act_invariant_path, "Parabolic invariant (JSON)");

  // weights
  auto* weights = app.add_subcommand("weights", "Weight systems and chambers");
  weights->require_subcommand(1);
  std::string w_file, w_file2, w_point;
  long w_times = 1;
  auto* check_generic = weights->add_subcommand("check-generic", "Decide genericity");
  check_generic->add_option("file", w_file)->required();
  auto* fingerprint = weights->add_subcommand("fingerprint", "Chamber fingerprint (floors of all wall values)");
  fingerprint->add_option("file", w_file)->required();
  auto* same = weights->add_subcommand("same-chamber", "Compare the chambers of two weight systems");
  same->add_option("first", w_file)->required();
  same->add_option("second", w_file2)->required();
  auto* hecke = weights->add_subcommand("hecke", "Hecke-transform weights at a point");
  hecke->add_option("file", w_file)->required();
  hecke->add_option("--point", w_point, "Marked point")->required();
  hecke->add_option("--times", w_times, "Number of Hecke steps")->capture_default_str();
  auto* dual = weights->add_subcommand("dual", "Dual weights");
  dual->add_option("file", w_file)->required();

  // stabilizer
  auto* stabilizer = app.add_subcommand("stabilizer", "Stabilizer computations");
  stabilizer->require_subcommand(1);
  std::string xi_path;
  auto* stab_xi = stabilizer->add_subcommand("xi", "Sectors and count of T_xi");
  stab_xi->add_option("--xi", xi_path, "Line bundle class (JSON); defaults to the model's reference class");
  std::optional<long> sd_degree;
  std::string sd_weights;
  bool sd_all = false;
  auto* stab_da = stabilizer->add_subcommand("d-alpha", "Representatives of T_{d,alpha} modulo J(X)");
  stab_da->add_option("--degree", sd_degree, "Degree d (default: the model degree)");
  stab_da->add_option("--weights", sd_weights, "Weight system (JSON)")->required();
  stab_da->add_flag("--all", sd_all, "Keep representatives that leave the chamber");

  // aut-report
  std::optional<long> ar_degree;
  std::string ar_weights;
  auto* aut_report = app.add_subcommand("aut-report", "Layers of the automorphism group");
  aut_report->add_option("--degree", ar_degree, "Degree d (default: the model degree)");
  aut_report->add_option("--weights", ar_weights, "Weight system (JSON)")->required();

  // torelli
  std::string t_other_model, t_weights, t_other_weights, t_witness;
  std::optional<long> t_degree, t_other_degree;
  auto* torelli = app.add_subcommand("torelli", "3-birational Torelli decision");
  torelli->add_option("--weights", t_weights, "Weights of the first space (JSON)")->required();
  torelli->add_option("--degree", t_degree, "Degree of the first space");
  torelli->add_option("--other-model", t_other_model, "Model of the second space (default: --model)");
  torelli->add_option("--other-weights", t_other_weights, "Weights of the second space (JSON)")->required();
  torelli->add_option("--other-degree", t_other_degree, "Degree of the second space");
  torelli->add_option("--witness", t_witness, "Point relabeling, e.g. p=q,q=p");

  // bridge
  long b_from = 0, b_to = 0;
  std::string b_point;
  auto* bridge = app.add_subcommand("bridge", "Basic transformation from degree d to d'");
  bridge->add_option("--from", b_from, "Source degree")->required();
  bridge->add_option("--to", b_to, "Target degree")->required();
  bridge->add_option("--point", b_point, "Marked point")->required();

  // verify
  std::string v_target_model, v_weights, v_target_weights, v_transform, v_xi, v_witness, v_claim = "3birational";
  long v_from = 0, v_to = 0;
  auto* verify = app.add_subcommand("verify", "Check a proposed decomposition sigma^* Phi = T o A_rho");
  verify->add_option("--target-model", v_target_model, "Model of the target space (default: --model)");
  verify->add_option("--weights", v_weights, "Source weights (JSON)")->required();
  verify->add_option("--target-weights", v_target_weights, "Target weights (JSON)")->required();
  verify->add_option("--from", v_from, "Source degree")->required();
  verify->add_option("--to", v_to, "Target degree")->required();
  verify->add_option("--transform", v_transform, "Expression for T or A[M] * T")->required();
  verify->add_option("--xi", v_xi, "Reference class (JSON); defaults to (d, 0)");
  verify->add_option("--witness", v_witness, "Point relabeling source=target (default: identity)");
  verify->add_option("--claim", v_claim, "3birational or isomorphism")
      ->check(CLI::IsMember({"3birational", "isomorphism"}))
      ->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kTrue : kError;
  }

  try {
    if (*normalize || *compose_cmd) {
      const CurveModel& model = session.load();
      Element e = *normalize ? evaluate(normalize_expr, model) : evaluate_all(compose_exprs, model);
      if (g.json) {
        session.emit(element_to_json(model, e));
      } else {
        out << format_canonical(model, e) << "\n";
      }
      return kTrue;
    }

    if (*act) {
      const CurveModel& model = session.load();
      Element e = evaluate(act_expr, model);
      if (!act_degree_value && act_det_path.empty() && act_weights_path.empty() && act_invariant_path.empty()) {
        throw Error("act needs at least one of --degree, --det, --weights, --invariant");
      }
      Json doc = Json::object();
      const LineBundleClass& xi = model.reference_det();
      if (act_degree_value) {
        long d = *act_degree_value;
        long image = act_degree(model, e.basic, d);
        if (e.extended() && d != xi.degree) {
          throw DegreeMismatch("extended transformations act on degree " + std::to_string(xi.degree) + " only");
        }
        doc["degree"] = image;
      }
      if (!act_det_path.empty()) {
        LineBundleClass det = act_det(model, e.basic, read_line(act_det_path, model));
        if (e.extended()) det = det + static_cast<long>(model.rank()) * twist_class(*e.rho, xi, det);
        doc["det"] = line_to_json(det);
      }
      if (!act_weights_path.empty()) {
        doc["weights"] = weights_to_json(model, act_weights(model, e.basic, read_weights(act_weights_path, model)));
      }
      if (!act_invariant_path.empty()) {
        ParabolicInvariant v = invariant_from_json(parse_json(read_file(act_invariant_path), act_invariant_path), model);
        ParabolicInvariant image =
            e.extended() ? act_extended(model, as_extended(model, e), v) : act_invariant(model, e.basic, v);
        doc["invariant"] = invariant_to_json(model, image);
      }
      if (g.json) {
        session.emit(doc);
      } else {
        for (const auto& [key, value] : doc.items()) out << key << ": " << value.dump() << "\n";
      }
      return kTrue;
    }

    if (*weights) {
      const CurveModel& model = session.load();
      if (*check_generic) {
        GenericityResult r = is_generic(read_weights(w_file, model), session.walls());
        if (g.json) {
          session.emit(genericity_to_json(model, r));
        } else {
          out << (r.generic ? std::string("generic") : describe_witness(model, r)) << "\n";
        }
        return r.generic ? kTrue : kFalse;
      }
      if (*fingerprint) {
        ChamberFingerprint f = chamber_fingerprint(read_weights(w_file, model), session.walls());
        if (g.json) {
          session.emit(fingerprint_to_json(f));
        } else {
          out << "# walls: subrank ascending, subset tuples lexicographic, first point most significant\n";
          for (std::size_t i = 0; i < f.floors.size(); ++i) out << (i ? " " : "") << f.floors[i];
          out << "\n";
        }
        return kTrue;
      }
      if (*same) {
        bool verdict = same_chamber(read_weights(w_file, model), read_weights(w_file2, model), session.walls());
        if (g.json) {
          Json doc = Json::object();
          doc["same_chamber"] = verdict;
          session.emit(doc);
        } else {
          out << (verdict ? "true" : "false") << "\n";
        }
        return verdict ? kTrue : kFalse;
      }
      if (*hecke) {
        WeightSystem w = read_weights(w_file, model);
        std::size_t point = model.point_index(w_point);
        long steps = floor_mod(w_times, model.rank());
        for (long k = 0; k < steps; ++k) w = hecke_weights(w, point);
        session.emit(weights_to_json(model, w));
        return kTrue;
      }
      if (*dual) {
        session.emit(weights_to_json(model, dual_weights(read_weights(w_file, model))));
        return kTrue;
      }
    }

    if (*stabilizer) {
      const CurveModel& model = session.load();
      if (*stab_xi) {
        LineBundleClass xi = xi_path.empty() ? model.reference_det() : read_line(xi_path, model);
        session.emit(stabilizer_to_json(model, stabilizer_xi(model, xi, session.cap())));
        return kTrue;
      }
      if (*stab_da) {
        long d = sd_degree.value_or(model.degree());
        auto reps = stabilizer_d_alpha_quotient(model, d, read_weights(sd_weights, model), !sd_all, session.walls(),
                                                session.cap());
        session.emit(cosets_to_json(model, reps));
        return kTrue;
      }
    }

    if (*aut_report) {
      const CurveModel& model = session.load();
      long d = ar_degree.value_or(model.degree());
      session.emit(aut_report_to_json(
          model, automorphism_group_report(model, d, read_weights(ar_weights, model), session.walls(), session.cap())));
      return kTrue;
    }

    if (*torelli) {
      const CurveModel& a = session.load();
      std::unique_ptr<CurveModel> other;
      if (!t_other_model.empty()) other = session.load_model(t_other_model, "--other-model");
      const CurveModel& b = other ? *other : a;
      ModuliDescriptor da = make_descriptor(a, t_degree.value_or(a.degree()), read_weights(t_weights, a), session.walls());
      ModuliDescriptor db =
          make_descriptor(b, t_other_degree.value_or(b.degree()), read_weights(t_other_weights, b), session.walls());
      std::optional<std::vector<std::size_t>> witness;
      if (!t_witness.empty()) witness = parse_witness(t_witness, a, b);
      TorelliDecision decision = torelli_3birational(da, db, witness);
      for (const auto& w : decision.warnings) err << "warning: " << w << "\n";
      session.emit(torelli_to_json(a, b, decision));
      return decision.verdict ? kTrue : kFalse;
    }

    if (*bridge) {
      const CurveModel& model = session.load();
      BasicTransformation t = bridge_transformation(model, b_from, b_to, model.point_index(b_point));
      if (g.json) {
        session.emit(transformation_to_json(model, t));
      } else {
        out << format_canonical(model, t) << "\n";
      }
      return kTrue;
    }

    if (*verify) {
      const CurveModel& source = session.load();
      std::unique_ptr<CurveModel> other;
      if (!v_target_model.empty()) other = session.load_model(v_target_model, "--target-model");
      const CurveModel& target = other ? *other : source;
      ModuliDescriptor ds = make_descriptor(source, v_from, read_weights(v_weights, source), session.walls());
      ModuliDescriptor dt = make_descriptor(target, v_to, read_weights(v_target_weights, target), session.walls());
      Element e = evaluate(v_transform, source);
      JacobianAutomorphism rho = e.rho ? *e.rho : JacobianAutomorphism(source.jac_dim(), source.rank());
      LineBundleClass xi = v_xi.empty() ? LineBundleClass{v_from, JacobianElement::zero(source.jac_dim())}
                                        : read_line(v_xi, source);
      std::vector<std::size_t> map;
      if (v_witness.empty()) {
        for (std::size_t i = 0; i < source.num_points(); ++i) map.push_back(i);
      } else {
        map = parse_witness(v_witness, source, target);
      }
      Claim claim = v_claim == "isomorphism" ? Claim::Isomorphism : Claim::ThreeBirational;
      DecompositionReport report = verify_decomposition(ds, dt, map, e.basic, rho, xi, claim, session.walls());
      for (const auto& w : report.warnings) err << "warning: " << w << "\n";
      session.emit(decomposition_to_json(source, report));
      return report.verdict ? kTrue : kFalse;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  err << "error: no command given\n";
  return kError;
}

}  // namespace partrans
