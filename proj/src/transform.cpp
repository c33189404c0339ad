#include "partrans/transform.hpp"

#include "partrans/errors.hpp"

namespace partrans {

namespace {

Divisor support(const Divisor& d) {
  Divisor s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s[i] = d[i] != 0 ? 1 : 0;
  return s;
}

/// Divisor pushed along a permutation: out[perm[i]] = d[i].
Divisor relabel(const Divisor& d, const std::vector<std::size_t>& perm) {
  Divisor out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[perm[i]] = d[i];
  return out;
}

void check_line(const CurveModel& model, const LineBundleClass& line) {
  if (line.jac.size() != model.jac_dim()) {
    throw DimensionMismatch("line bundle class has " + std::to_string(line.jac.size()) +
                            " Jacobian coordinates, model needs " + std::to_string(model.jac_dim()));
  }
}

}  // namespace

BasicTransformation make_basic(const CurveModel& model, std::size_t sigma, int s, LineBundleClass line, Divisor hecke) {
  if (sigma >= model.automorphisms().size()) throw Error("automorphism index out of range");
  if (s != 1 && s != -1) throw Error("sign s must be +1 or -1");
  check_line(model, line);
  if (hecke.size() != model.num_points()) throw DimensionMismatch("Hecke divisor does not match the marked points");
  for (std::size_t i = 0; i < hecke.size(); ++i) {
    if (hecke[i] < 0 || hecke[i] >= model.rank()) throw HeckeOutOfRange(model.point(i).name, hecke[i], model.rank());
  }
  return {sigma, s, std::move(line), std::move(hecke)};
}

BasicTransformation make_basic(const CurveModel& model, std::string_view sigma, int s, LineBundleClass line,
                               Divisor hecke) {
  return make_basic(model, model.automorphism_index(sigma), s, std::move(line), std::move(hecke));
}

BasicTransformation identity_transformation(const CurveModel& model) {
  return {model.identity_index(), 1, model.trivial_class(), Divisor(model.num_points())};
}

BasicTransformation dualization(const CurveModel& model) {
  auto t = identity_transformation(model);
  t.s = -1;
  return t;
}

BasicTransformation tensor_by(const CurveModel& model, LineBundleClass line) {
  check_line(model, line);
  auto t = identity_transformation(model);
  t.line = std::move(line);
  return t;
}

BasicTransformation pullback_by(const CurveModel& model, std::size_t sigma) {
  auto t = identity_transformation(model);
  if (sigma >= model.automorphisms().size()) throw Error("automorphism index out of range");
  t.sigma = sigma;
  return t;
}

BasicTransformation hecke_by(const CurveModel& model, const Divisor& f) {
  if (f.size() != model.num_points()) throw DimensionMismatch("Hecke divisor does not match the marked points");
  const long r = model.rank();
  Divisor quotient(f.size());
  Divisor remainder(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    quotient[i] = floor_div(f[i], r);
    remainder[i] = f[i] - r * quotient[i];
  }
  auto t = identity_transformation(model);
  t.line = -of_divisor(model, quotient);
  t.hecke = remainder;
  return t;
}

BasicTransformation compose(const CurveModel& model, const BasicTransformation& outer, const BasicTransformation& inner) {
  const long r = model.rank();
  const auto& sigma2 = model.automorphism(inner.sigma);
  const auto& sigma2_inv = model.automorphism(model.inverse_automorphism(inner.sigma));

  // Move Sigma_{sigma2} to the front:
  //   T_L Sigma = Sigma T_{(sigma^-1)^* L},   H_H Sigma = Sigma H_{H'},  H'(sigma(x)) = H(x).
  LineBundleClass line = pullback(sigma2_inv, outer.line);
  Divisor hecke = relabel(outer.hecke, sigma2.point_perm);

  // Move D^{s2} in front of T_L H_H. Per point with h_x > 0:
  //   H_H D- = D- T_{O(S)} H_{rS - H},  S the support of H.
  if (inner.s == -1) {
    Divisor s = support(hecke);
    line = -line + of_divisor(model, s);
    hecke = r * s - hecke;
  }

  // Merge Hecke parts: H_{H1} H_{H2} = T_{O(-L_F)} H_{F - r L_F},  L_F = floor(F / r).
  Divisor merged = hecke + inner.hecke;
  Divisor carry(merged.size());
  for (std::size_t i = 0; i < merged.size(); ++i) {
    carry[i] = floor_div(merged[i], r);
    merged[i] -= r * carry[i];
  }
  line += inner.line;
  line -= of_divisor(model, carry);

  BasicTransformation out;
  out.sigma = model.compose_automorphisms(inner.sigma, outer.sigma);
  out.s = outer.s * inner.s;
  out.line = std::move(line);
  out.hecke = std::move(merged);
  return out;
}

BasicTransformation inverse(const CurveModel& model, const BasicTransformation& t) {
  // (Sigma D^s T_L H_H)^{-1} = H_H^{-1} T_{-L} D^s Sigma_{sigma^{-1}}
  BasicTransformation out = hecke_by(model, Divisor(t.hecke.size()) - t.hecke);
  out = compose(model, out, tensor_by(model, -t.line));
  if (t.s == -1) out = compose(model, out, dualization(model));
  return compose(model, out, pullback_by(model, model.inverse_automorphism(t.sigma)));
}

BasicTransformation power(const CurveModel& model, const BasicTransformation& t, long n) {
  BasicTransformation base = n < 0 ? inverse(model, t) : t;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1UL : static_cast<unsigned long>(n);
  BasicTransformation acc = identity_transformation(model);
  while (e > 0) {
    if (e & 1UL) acc = compose(model, acc, base);
    e >>= 1;
    if (e > 0) base = compose(model, base, base);
  }
  return acc;
}

long act_degree(const CurveModel& model, const BasicTransformation& t, long d) {
  return t.s * (model.rank() * t.line.degree + d - t.hecke.degree());
}

LineBundleClass act_det(const CurveModel& model, const BasicTransformation& t, const LineBundleClass& xi) {
  check_line(model, xi);
  LineBundleClass c = xi - of_divisor(model, t.hecke) + static_cast<long>(model.rank()) * t.line;
  if (t.s == -1) c = -c;
  return pullback(model.automorphism(t.sigma), c);
}

WeightSystem act_weights(const CurveModel& model, const BasicTransformation& t, const WeightSystem& w) {
  if (w.num_points() != model.num_points() || w.rank() != model.rank()) {
    throw ShapeMismatch("weight system does not match the model's rank and marked points");
  }
  WeightSystem out = w;
  for (std::size_t x = 0; x < t.hecke.size(); ++x) {
    for (long k = 0; k < t.hecke[x]; ++k) out = hecke_weights(out, x);
  }
  if (t.s == -1) out = dual_weights(out);
  // the fibre of sigma^* E at x is the fibre of E at sigma(x)
  const auto& perm = model.automorphism(t.sigma).point_perm;
  std::vector<std::vector<Rational>> moved(out.num_points());
  for (std::size_t x = 0; x < moved.size(); ++x) moved[x] = out.at(perm[x]);
  return WeightSystem::canonicalize(std::move(moved), w.rank());
}

ParabolicInvariant act_invariant(const CurveModel& model, const BasicTransformation& t, const ParabolicInvariant& v) {
  if (v.rank != model.rank()) {
    throw ShapeMismatch("invariant has rank " + std::to_string(v.rank) + ", model has rank " +
                        std::to_string(model.rank()));
  }
  ParabolicInvariant out;
  out.rank = v.rank;
  out.det = act_det(model, t, v.det);
  out.weights = act_weights(model, t, v.weights);
  out.label = to_string(model, t) + "(" + v.label + ")";
  return out;
}

Membership subgroup_membership(const CurveModel& model, const BasicTransformation& t, const MembershipContext& context,
                               const WallOptions& options) {
  Membership m;
  m.in_t_plus = t.s == 1;
  m.in_t_d = act_degree(model, t, context.degree) == context.degree;
  if (context.xi) m.in_t_xi = act_det(model, t, *context.xi) == *context.xi;
  if (context.alpha) m.in_t_alpha = same_chamber(act_weights(model, t, *context.alpha), *context.alpha, options);
  return m;
}

namespace {

Integer count_sectors(const CurveModel& model) {
  Integer count = Integer(static_cast<unsigned long>(model.automorphisms().size())) * 2;
  Integer hecke;
  mpz_ui_pow_ui(hecke.get_mpz_t(), static_cast<unsigned long>(model.rank()),
                static_cast<unsigned long>(model.num_points()));
  return count * hecke;
}

/// Calls visit(sigma, s, H) over all sectors: sigma ascending, s = +1 before -1, H lexicographic.
template <typename Visit>
void for_each_sector(const CurveModel& model, const Integer& cap, Visit&& visit) {
  Integer count = count_sectors(model);
  if (count > cap) {
    throw ResourceLimit("sector enumeration needs " + count.get_str() + " sectors, above the cap " + cap.get_str());
  }
  const std::size_t n = model.num_points();
  const long r = model.rank();
  for (std::size_t sigma = 0; sigma < model.automorphisms().size(); ++sigma) {
    for (int s : {1, -1}) {
      Divisor h(n);
      while (true) {
        visit(sigma, s, h);
        std::size_t pos = n;
        bool advanced = false;
        while (pos > 0) {
          --pos;
          if (++h[pos] < r) {
            advanced = true;
            break;
          }
          h[pos] = 0;
        }
        if (!advanced) break;
      }
    }
  }
}

}  // namespace

StabilizerReport stabilizer_xi(const CurveModel& model, const LineBundleClass& xi, const Integer& cap) {
  check_line(model, xi);
  const long r = model.rank();
  StabilizerReport report;
  report.total = 0;
  for_each_sector(model, cap, [&](std::size_t sigma, int s, const Divisor& h) {
    const auto& inv = model.automorphism(model.inverse_automorphism(sigma));
    LineBundleClass target = static_cast<long>(s) * pullback(inv, xi) - xi + of_divisor(model, h);
    if (floor_mod(target.degree, r) != 0) return;
    DivisionResult root = divide_by_r(target.jac, static_cast<int>(r));
    report.sectors.push_back({sigma, s, h, target.degree / r, root.root, root.torsor_size});
    report.total += root.torsor_size;
  });
  return report;
}

std::vector<CosetRepresentative> stabilizer_d_alpha_quotient(const CurveModel& model, long d, const WeightSystem& alpha,
                                                             bool filter, const WallOptions& options,
                                                             const Integer& cap) {
  auto g = is_generic(alpha, options);
  if (!g.generic) throw NotGeneric("weight system is not generic (wall value " + g.m.get_str() + ")");
  const long r = model.rank();
  std::vector<CosetRepresentative> out;
  for_each_sector(model, cap, [&](std::size_t sigma, int s, const Divisor& h) {
    long shift = d - s * (d - h.degree());
    if (floor_mod(shift, r) != 0) return;
    BasicTransformation t{sigma, s, LineBundleClass{shift / r, JacobianElement::zero(model.jac_dim())}, h};
    bool preserves = same_chamber(act_weights(model, t, alpha), alpha, options);
    if (filter && !preserves) return;
    out.push_back({std::move(t), s == 1, preserves});
  });
  return out;
}

std::string format_divisor(const CurveModel& model, const Divisor& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    long m = d[i];
    if (m == 0) continue;
    const std::string& name = model.point(i).name;
    if (out.empty()) {
      out = (m == 1 ? "" : std::to_string(m) + "*") + name;
    } else if (m > 0) {
      out += " + " + (m == 1 ? std::string() : std::to_string(m) + "*") + name;
    } else {
      out += " - " + (m == -1 ? std::string() : std::to_string(-m) + "*") + name;
    }
  }
  return out.empty() ? "0" : out;
}

std::string format_line(const LineBundleClass& c) {
  std::string out = std::to_string(c.degree) + ", [";
  for (std::size_t i = 0; i < c.jac.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_rational(c.jac[i]);
  }
  return out + "]";
}

std::string to_string(const CurveModel& model, const BasicTransformation& t) {
  std::vector<std::string> factors;
  if (t.sigma != model.identity_index()) factors.push_back("S(" + model.automorphism(t.sigma).name + ")");
  if (t.s == -1) factors.emplace_back("D-");
  if (!t.line.is_trivial()) factors.push_back("T(" + format_line(t.line) + ")");
  if (!t.hecke.is_zero()) factors.push_back("H(" + format_divisor(model, t.hecke) + ")");
  if (factors.empty()) return "id";
  std::string out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out += " * " + factors[i];
  return out;
}

}  // namespace partrans
