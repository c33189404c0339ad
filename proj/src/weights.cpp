#include "partrans/weights.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "partrans/errors.hpp"

namespace partrans {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) { return a > kSaturated - b ? kSaturated : a + b; }

std::uint64_t binomial(int n, int k) {
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return out;
}

/// All k-subsets of {1..n} in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

Rational total_weight(const WeightSystem& w) {
  Rational s = 0;
  for (const auto& point : w.per_point()) {
    for (const auto& a : point) s += a;
  }
  return s;
}

/// Subsets of one subrank with their per-point weight sums.
struct SubrankTable {
  int subrank;
  std::vector<std::vector<int>> subsets;
  std::vector<std::vector<Rational>> sums;  // sums[x][k] = sum_{i in subsets[k]} a_i(x)
};

SubrankTable make_table(const WeightSystem& w, int subrank) {
  SubrankTable t{subrank, combinations(w.rank(), subrank), {}};
  t.sums.resize(w.num_points());
  for (std::size_t x = 0; x < w.num_points(); ++x) {
    for (const auto& subset : t.subsets) {
      Rational s = 0;
      for (int i : subset) s += w.at(x)[static_cast<std::size_t>(i - 1)];
      t.sums[x].push_back(s);
    }
  }
  return t;
}

WallDatum make_datum(const SubrankTable& t, const std::vector<std::size_t>& choice, const Rational& value) {
  WallDatum d;
  d.subrank = t.subrank;
  d.value = value;
  for (std::size_t k : choice) d.subsets.push_back(t.subsets[k]);
  return d;
}

Rational wall_value(const SubrankTable& t, const std::vector<std::size_t>& choice, const Rational& total, int rank) {
  Rational chosen = 0;
  for (std::size_t x = 0; x < choice.size(); ++x) chosen += t.sums[x][choice[x]];
  return t.subrank * total - rank * chosen;
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

GenericityResult non_generic(WallDatum datum) {
  GenericityResult r;
  r.generic = false;
  r.m = datum.value.get_num();
  r.witness = std::move(datum);
  return r;
}

/// Last integral wall of one subrank, scanning tuples in reverse lexicographic order.
std::optional<WallDatum> last_integral_exhaustive(const WeightSystem& w, const SubrankTable& t, const Rational& total) {
  const std::size_t n = w.num_points();
  const std::size_t choices = t.subsets.size();
  std::vector<std::size_t> choice(n, choices - 1);
  while (true) {
    Rational v = wall_value(t, choice, total, w.rank());
    if (is_integral(v)) return make_datum(t, choice, v);
    std::size_t pos = n;
    bool moved = false;
    while (pos > 0) {
      --pos;
      if (choice[pos] > 0) {
        --choice[pos];
        moved = true;
        break;
      }
      choice[pos] = choices - 1;
    }
    if (!moved) return std::nullopt;
  }
}

/// Same search via reachable residues of Q * r * (chosen sum) modulo Q, Q the common denominator.
std::optional<WallDatum> last_integral_dp(const WeightSystem& w, const SubrankTable& t, const Rational& total) {
  const std::size_t n = w.num_points();
  Integer q = 1;
  for (const auto& point : w.per_point()) {
    for (const auto& a : point) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), a.get_den_mpz_t());
  }
  if (!q.fits_ulong_p() || q > Integer(1) << 40) {
    throw ResourceLimit("common weight denominator " + q.get_str() + " too large for the residue DP");
  }
  const std::uint64_t modulus = q.get_ui();
  auto residue = [&](const Rational& value) -> std::uint64_t {
    Rational scaled = value * q;  // integral by construction
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), scaled.get_num_mpz_t(), q.get_mpz_t());
    return r.get_ui();
  };
  const std::uint64_t target = residue(t.subrank * total);
  std::vector<std::vector<std::uint64_t>> contrib(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (const auto& s : t.sums[x]) contrib[x].push_back(residue(w.rank() * s));
  }
  // reach[k]: residues attainable by points k..n-1
  std::vector<std::set<std::uint64_t>> reach(n + 1);
  reach[n].insert(0);
  for (std::size_t k = n; k-- > 0;) {
    for (std::uint64_t v : contrib[k]) {
      for (std::uint64_t s : reach[k + 1]) reach[k].insert((v + s) % modulus);
      if (reach[k].size() == modulus) break;
    }
  }
  if (!reach[0].count(target)) return std::nullopt;
  std::vector<std::size_t> choice(n);
  std::uint64_t need = target;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t c = t.subsets.size(); c-- > 0;) {
      std::uint64_t rest = (need + modulus - contrib[k][c]) % modulus;
      if (reach[k + 1].count(rest)) {
        choice[k] = c;
        need = rest;
        break;
      }
    }
  }
  return make_datum(t, choice, wall_value(t, choice, total, w.rank()));
}

enum class Strategy { Auto, Exhaustive, Dp };

GenericityResult genericity(const WeightSystem& w, Strategy strategy, std::uint64_t threshold) {
  if (w.num_points() == 0) return {};
  const Rational total = total_weight(w);
  for (int subrank = w.rank() - 1; subrank >= 1; --subrank) {
    SubrankTable t = make_table(w, subrank);
    std::uint64_t tuples = 1;
    for (std::size_t x = 0; x < w.num_points(); ++x) tuples = saturating_mul(tuples, t.subsets.size());
    bool use_dp = strategy == Strategy::Dp || (strategy == Strategy::Auto && tuples > threshold);
    auto found = use_dp ? last_integral_dp(w, t, total) : last_integral_exhaustive(w, t, total);
    if (found) return non_generic(std::move(*found));
  }
  return {};
}

void require_generic(const WeightSystem& w, const WallOptions& options) {
  auto g = is_generic(w, options);
  if (!g.generic) {
    throw NotGeneric("weight system lies on the wall r'=" + std::to_string(g.witness->subrank) +
                     " with integer value " + g.m.get_str());
  }
}

void check_cap(const WeightSystem& w, const WallOptions& options) {
  std::uint64_t count = wall_count(w.rank(), w.num_points());
  if (count > options.enum_cap) {
    throw ResourceLimit("fingerprint needs " + (count == kSaturated ? std::string("more than 2^64") : std::to_string(count)) +
                        " wall data, above the cap " + std::to_string(options.enum_cap));
  }
}

}  // namespace

WeightSystem WeightSystem::canonicalize(std::vector<std::vector<Rational>> raw, int rank) {
  if (rank < 2) throw ShapeMismatch("weight systems need rank >= 2");
  for (std::size_t x = 0; x < raw.size(); ++x) {
    auto& point = raw[x];
    if (point.size() != static_cast<std::size_t>(rank)) {
      throw ShapeMismatch("point " + std::to_string(x) + " has " + std::to_string(point.size()) +
                          " weights, expected full flag of length " + std::to_string(rank));
    }
    for (std::size_t i = 1; i < point.size(); ++i) {
      if (!(point[i - 1] < point[i])) {
        throw InvalidWeights("weights at point " + std::to_string(x) + " are not strictly increasing");
      }
    }
    if (point.back() - point.front() >= 1) {
      throw InvalidWeights("weights at point " + std::to_string(x) + " span an interval of length >= 1");
    }
    const Rational shift = point.front();
    for (auto& a : point) a -= shift;
  }
  return WeightSystem(rank, std::move(raw));
}

Rational parabolic_degree(long degree, const WeightSystem& w) { return Rational(degree) + total_weight(w); }

std::uint64_t wall_count(int rank, std::size_t num_points) {
  std::uint64_t total = 0;
  for (int k = 1; k < rank; ++k) {
    std::uint64_t c = 1;
    for (std::size_t x = 0; x < num_points; ++x) c = saturating_mul(c, binomial(rank, k));
    total = saturating_add(total, c);
  }
  return total;
}

void for_each_wall(const WeightSystem& w, const std::function<bool(const WallDatum&)>& visit) {
  const std::size_t n = w.num_points();
  if (n == 0) return;
  const Rational total = total_weight(w);
  for (int subrank = 1; subrank < w.rank(); ++subrank) {
    SubrankTable t = make_table(w, subrank);
    std::vector<std::size_t> choice(n, 0);
    while (true) {
      if (!visit(make_datum(t, choice, wall_value(t, choice, total, w.rank())))) return;
      std::size_t pos = n;
      bool advanced = false;
      while (pos > 0) {
        --pos;
        if (++choice[pos] < t.subsets.size()) {
          advanced = true;
          break;
        }
        choice[pos] = 0;
      }
      if (!advanced) break;
    }
  }
}

GenericityResult is_generic(const WeightSystem& w, const WallOptions& options) {
  return genericity(w, Strategy::Auto, options.dp_threshold);
}

GenericityResult is_generic_exhaustive(const WeightSystem& w) { return genericity(w, Strategy::Exhaustive, 0); }

GenericityResult is_generic_dp(const WeightSystem& w) { return genericity(w, Strategy::Dp, 0); }

ChamberFingerprint chamber_fingerprint(const WeightSystem& w, const WallOptions& options) {
  check_cap(w, options);
  ChamberFingerprint fp;
  std::optional<WallDatum> bad;
  for_each_wall(w, [&](const WallDatum& d) {
    if (is_integral(d.value)) {
      bad = d;
      return false;
    }
    fp.floors.push_back(floor_of(d.value).get_si());
    return true;
  });
  if (bad) {
    throw NotGeneric("weight system lies on the wall r'=" + std::to_string(bad->subrank) + " with integer value " +
                     bad->value.get_num().get_str());
  }
  return fp;
}

bool same_chamber(const WeightSystem& a, const WeightSystem& b, const WallOptions& options) {
  if (a.rank() != b.rank() || a.num_points() != b.num_points()) {
    throw ShapeMismatch("weight systems have different rank or point sets");
  }
  require_generic(a, options);
  require_generic(b, options);
  check_cap(a, options);
  const std::size_t n = a.num_points();
  if (n == 0) return true;
  const Rational total_a = total_weight(a);
  const Rational total_b = total_weight(b);
  for (int subrank = 1; subrank < a.rank(); ++subrank) {
    SubrankTable ta = make_table(a, subrank);
    SubrankTable tb = make_table(b, subrank);
    std::vector<std::size_t> choice(n, 0);
    while (true) {
      if (floor_of(wall_value(ta, choice, total_a, a.rank())) != floor_of(wall_value(tb, choice, total_b, b.rank()))) {
        return false;
      }
      std::size_t pos = n;
      bool advanced = false;
      while (pos > 0) {
        --pos;
        if (++choice[pos] < ta.subsets.size()) {
          advanced = true;
          break;
        }
        choice[pos] = 0;
      }
      if (!advanced) break;
    }
  }
  return true;
}

WeightSystem hecke_weights(const WeightSystem& w, std::size_t point) {
  if (point >= w.num_points()) throw Error("Hecke point index out of range");
  auto raw = w.per_point();
  auto& a = raw[point];
  const Rational first = a.front();
  a.erase(a.begin());
  a.push_back(first + 1);
  return WeightSystem::canonicalize(std::move(raw), w.rank());
}

WeightSystem dual_weights(const WeightSystem& w) {
  auto raw = w.per_point();
  for (auto& a : raw) {
    std::vector<Rational> flipped;
    flipped.reserve(a.size());
    for (auto it = a.rbegin(); it != a.rend(); ++it) flipped.push_back(1 - *it);
    a = std::move(flipped);
  }
  return WeightSystem::canonicalize(std::move(raw), w.rank());
}

}  // namespace partrans
