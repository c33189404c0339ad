#include "support.hpp"

#include <algorithm>
#include <numeric>

namespace support {

namespace {

IntMatrix block_diagonal(std::size_t dim, const IntMatrix& block) {
  IntMatrix m(dim, dim);
  for (std::size_t b = 0; b + 1 < dim; b += 2) {
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) m(b + i, b + j) = block(i, j);
    }
  }
  return m;
}

CurveAutomorphism identity_aut(std::size_t dim, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  return {"id", perm, IntMatrix::identity(dim), JacobianElement::zero(dim)};
}

long pick(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

}  // namespace

Rational random_rational(Rng& rng, long max_den) {
  long den = pick(rng, 1, max_den);
  Rational q(pick(rng, 0, den - 1), den);
  q.canonicalize();
  return q;
}

JacobianElement random_jac(std::size_t dim, Rng& rng, long max_den) {
  std::vector<Rational> coords;
  for (std::size_t i = 0; i < dim; ++i) coords.push_back(random_rational(rng, max_den));
  return JacobianElement(std::move(coords));
}

LineBundleClass random_class(std::size_t dim, Rng& rng, long degree_bound, long max_den) {
  return {pick(rng, -degree_bound, degree_bound), random_jac(dim, rng, max_den)};
}

Divisor random_divisor(std::size_t n, Rng& rng, long lo, long hi) {
  Divisor d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = pick(rng, lo, hi);
  return d;
}

CurveModel trivial_model(int genus, int rank, std::size_t n, Rng& rng, long degree,
                         const std::vector<std::string>& names) {
  const std::size_t dim = static_cast<std::size_t>(2 * genus);
  std::vector<MarkedPoint> points;
  for (std::size_t i = 0; i < n; ++i) {
    points.push_back({i < names.size() ? names[i] : "p" + std::to_string(i), random_jac(dim, rng)});
  }
  return CurveModel(genus, rank, degree, std::move(points), {identity_aut(dim, n)});
}

CurveModel swap_model(int genus, int rank, Rng& rng, long degree) {
  const std::size_t dim = static_cast<std::size_t>(2 * genus);
  JacobianElement jp = random_jac(dim, rng);
  JacobianElement jq = random_jac(dim, rng);
  CurveAutomorphism swap{"swap", {1, 0}, IntMatrix::scalar(dim, -1), jp + jq};
  return CurveModel(genus, rank, degree, {{"p", jp}, {"q", jq}}, {identity_aut(dim, 2), swap});
}

CurveModel involution_model(int genus, int rank, Rng& rng, long degree) {
  const std::size_t dim = static_cast<std::size_t>(2 * genus);
  JacobianElement jp = random_jac(dim, rng);
  CurveAutomorphism inv{"iota", {0}, IntMatrix::scalar(dim, -1), 2 * jp};
  return CurveModel(genus, rank, degree, {{"p", jp}}, {identity_aut(dim, 1), inv});
}

CurveModel cyclic3_model(int genus, int rank, Rng& rng, long degree) {
  const std::size_t dim = static_cast<std::size_t>(2 * genus);
  IntMatrix a(2, 2, {Integer(0), Integer(-1), Integer(1), Integer(-1)});
  IntMatrix m = block_diagonal(dim, a);
  IntMatrix m2 = m * m;
  // sigma: x_i -> x_{i+1}; consistency needs M j_{x_i} = j_{x_{i-1}}
  JacobianElement v = random_jac(dim, rng);
  JacobianElement j0 = v;
  JacobianElement j2 = m.apply(v);
  JacobianElement j1 = m.apply(j2);
  CurveAutomorphism rot{"rot", {1, 2, 0}, m, JacobianElement::zero(dim)};
  CurveAutomorphism rot2{"rot2", {2, 0, 1}, m2, JacobianElement::zero(dim)};
  return CurveModel(genus, rank, degree, {{"a", j0}, {"b", j1}, {"c", j2}}, {identity_aut(dim, 3), rot, rot2});
}

std::vector<CurveModel> model_family(Rng& rng) {
  std::vector<CurveModel> out;
  out.push_back(trivial_model(1, 2, 2, rng));
  out.push_back(swap_model(2, 3, rng, 1));
  out.push_back(involution_model(6, 2, rng, 3));
  out.push_back(trivial_model(2, 3, 0, rng, -2));
  out.push_back(trivial_model(6, 3, 1, rng, 5));
  out.push_back(cyclic3_model(1, 3, rng));
  out.push_back(swap_model(1, 2, rng, -1));
  return out;
}

CurveModel worked_model() {
  std::vector<Rational> jp(12, Rational(0)), jq(12, Rational(0));
  jp[0] = Rational(1, 3);
  jq[1] = Rational(1, 2);
  std::vector<std::size_t> perm{0, 1};
  return CurveModel(6, 2, 0, {{"p", JacobianElement(jp)}, {"q", JacobianElement(jq)}},
                    {{"id", perm, IntMatrix::identity(12), JacobianElement::zero(12)}});
}

BasicTransformation random_transformation(const CurveModel& model, Rng& rng) {
  BasicTransformation t;
  t.sigma = static_cast<std::size_t>(pick(rng, 0, static_cast<long>(model.automorphisms().size()) - 1));
  t.s = pick(rng, 0, 1) ? 1 : -1;
  t.line = random_class(model.jac_dim(), rng);
  t.hecke = random_divisor(model.num_points(), rng, 0, model.rank() - 1);
  return t;
}

BasicTransformation random_degree_preserving(const CurveModel& model, Rng& rng) {
  const long d = model.reference_det().degree;
  const long r = model.rank();
  while (true) {
    BasicTransformation t = random_transformation(model, rng);
    long need = t.s * d - d + t.hecke.degree();
    if (floor_mod(need, r) != 0) continue;
    t.line.degree = need / r;
    return t;
  }
}

WeightSystem random_weights(const CurveModel& model, Rng& rng, long max_den) {
  std::vector<std::vector<Rational>> raw;
  for (std::size_t x = 0; x < model.num_points(); ++x) {
    long den = pick(rng, model.rank(), max_den);
    std::vector<long> numerators;
    while (static_cast<int>(numerators.size()) < model.rank() - 1) {
      long k = pick(rng, 1, den - 1);
      if (std::find(numerators.begin(), numerators.end(), k) == numerators.end()) numerators.push_back(k);
    }
    std::sort(numerators.begin(), numerators.end());
    std::vector<Rational> w{Rational(0)};
    for (long k : numerators) {
      Rational q(k, den);
      q.canonicalize();
      w.push_back(q);
    }
    raw.push_back(std::move(w));
  }
  return WeightSystem::canonicalize(std::move(raw), model.rank());
}

WeightSystem random_generic_weights(const CurveModel& model, Rng& rng, long max_den) {
  while (true) {
    WeightSystem w = random_weights(model, rng, max_den);
    if (is_generic(w).generic) return w;
  }
}

ParabolicInvariant random_invariant(const CurveModel& model, Rng& rng, long degree) {
  ParabolicInvariant v;
  v.rank = model.rank();
  v.det = {degree, random_jac(model.jac_dim(), rng)};
  v.weights = random_weights(model, rng);
  v.label = "E";
  return v;
}

EndomorphismMatrix random_tilde(std::size_t dim, int r, Rng& rng, int steps) {
  IntMatrix full = IntMatrix::identity(dim);
  for (int k = 0; k < steps; ++k) {
    std::size_t i = static_cast<std::size_t>(pick(rng, 0, static_cast<long>(dim) - 1));
    std::size_t j = static_cast<std::size_t>(pick(rng, 0, static_cast<long>(dim) - 1));
    if (i == j) continue;
    IntMatrix e = IntMatrix::identity(dim);
    e(i, j) = Integer(r) * Integer(pick(rng, -2, 2));
    full = full * e;
  }
  IntMatrix tilde = full - IntMatrix::identity(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) tilde(i, j) /= r;
  }
  return tilde;
}

ParabolicInvariant word_action(const CurveModel& model, const BasicTransformation& t, const ParabolicInvariant& v) {
  ParabolicInvariant out = v;
  for (std::size_t x = 0; x < model.num_points(); ++x) {
    for (long k = 0; k < t.hecke[x]; ++k) {
      out.det -= point_class(model, x);
      out.weights = hecke_weights(out.weights, x);
    }
  }
  for (int k = 0; k < model.rank(); ++k) out.det += t.line;
  if (t.s == -1) {
    out.det = -out.det;
    out.weights = dual_weights(out.weights);
  }
  const CurveAutomorphism& sigma = model.automorphism(t.sigma);
  out.det = pullback(sigma, out.det);
  std::vector<std::vector<Rational>> moved;
  for (std::size_t x = 0; x < model.num_points(); ++x) moved.push_back(out.weights.at(sigma.point_perm[x]));
  out.weights = WeightSystem::canonicalize(std::move(moved), model.rank());
  return out;
}

long common_denominator(const CurveModel& model, const LineBundleClass& xi) {
  Integer n = 1;
  auto absorb = [&](const JacobianElement& j) {
    for (const auto& c : j.coords()) n = lcm(n, Integer(c.get_den()));
  };
  absorb(xi.jac);
  for (const auto& p : model.points()) absorb(p.jac_class);
  for (const auto& a : model.automorphisms()) absorb(a.translation);
  return n.get_si();
}

Integer brute_force_stabilizer_count(const CurveModel& model, const LineBundleClass& xi) {
  const long r = model.rank();
  const long grid = r * common_denominator(model, xi);
  const std::size_t dim = model.jac_dim();
  const std::size_t n = model.num_points();
  const long window = (xi.degree < 0 ? -xi.degree : xi.degree) + static_cast<long>(n) * r + 2;
  Integer count = 0;
  for (std::size_t sigma = 0; sigma < model.automorphisms().size(); ++sigma) {
    for (int s : {1, -1}) {
      Divisor h(n);
      while (true) {
        for (long deg = -window; deg <= window; ++deg) {
          BasicTransformation t{sigma, s, {deg, JacobianElement::zero(dim)}, h};
          if (act_det(model, t, xi).degree != xi.degree) continue;
          std::vector<long> digits(dim, 0);
          while (true) {
            std::vector<Rational> coords;
            for (long dgt : digits) coords.emplace_back(dgt, grid);
            for (auto& c : coords) c.canonicalize();
            t.line.jac = JacobianElement(coords);
            if (act_det(model, t, xi) == xi) ++count;
            std::size_t pos = dim;
            bool advanced = false;
            while (pos > 0) {
              --pos;
              if (++digits[pos] < grid) {
                advanced = true;
                break;
              }
              digits[pos] = 0;
            }
            if (!advanced) break;
          }
        }
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
  return count;
}

bool same_invariant(const ParabolicInvariant& a, const ParabolicInvariant& b) {
  return a.rank == b.rank && a.det == b.det && a.weights == b.weights;
}

}  // namespace support
