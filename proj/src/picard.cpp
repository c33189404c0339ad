#include "partrans/picard.hpp"

#include <algorithm>

#include "partrans/curve_model.hpp"
#include "partrans/divisor.hpp"
#include "partrans/errors.hpp"

namespace partrans {

// --- JacobianElement ---------------------------------------------------------

JacobianElement::JacobianElement(std::vector<Rational> coords) : coords_(std::move(coords)) {
  for (auto& c : coords_) c = frac(c);
}

bool JacobianElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

Integer JacobianElement::order() const {
  Integer n = 1;
  for (const auto& c : coords_) mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), c.get_den_mpz_t());
  return n;
}

void JacobianElement::check_same_size(const JacobianElement& other) const {
  if (coords_.size() != other.coords_.size()) {
    throw DimensionMismatch("Jacobian dimensions differ: " + std::to_string(coords_.size()) + " vs " +
                            std::to_string(other.coords_.size()));
  }
}

JacobianElement& JacobianElement::operator+=(const JacobianElement& other) {
  check_same_size(other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = frac(coords_[i] + other.coords_[i]);
  return *this;
}

JacobianElement& JacobianElement::operator-=(const JacobianElement& other) {
  check_same_size(other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = frac(coords_[i] - other.coords_[i]);
  return *this;
}

JacobianElement& JacobianElement::operator*=(const Integer& k) {
  for (auto& c : coords_) c = frac(c * k);
  return *this;
}

JacobianElement JacobianElement::operator-() const {
  JacobianElement out(*this);
  for (auto& c : out.coords_) c = frac(-c);
  return out;
}

// --- LineBundleClass ---------------------------------------------------------

LineBundleClass& LineBundleClass::operator+=(const LineBundleClass& other) {
  degree += other.degree;
  jac += other.jac;
  return *this;
}

LineBundleClass& LineBundleClass::operator-=(const LineBundleClass& other) {
  degree -= other.degree;
  jac -= other.jac;
  return *this;
}

// --- IntMatrix ---------------------------------------------------------------

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw DimensionMismatch("matrix needs " + std::to_string(rows * cols) + " entries, got " +
                            std::to_string(data_.size()));
  }
}

IntMatrix IntMatrix::identity(std::size_t n) { return scalar(n, 1); }

IntMatrix IntMatrix::scalar(std::size_t n, const Integer& k) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = k;
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

bool IntMatrix::is_identity() const { return is_square() && *this == identity(rows_); }

bool IntMatrix::is_scalar() const {
  if (!is_square()) return false;
  if (rows_ == 0) return true;
  return *this == scalar(rows_, (*this)(0, 0));
}

IntMatrix& IntMatrix::operator+=(const IntMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionMismatch("matrix shapes differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

IntMatrix& IntMatrix::operator-=(const IntMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionMismatch("matrix shapes differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

IntMatrix& IntMatrix::operator*=(const Integer& k) {
  for (auto& x : data_) x *= k;
  return *this;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shapes differ");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

JacobianElement IntMatrix::apply(const JacobianElement& j) const {
  if (cols_ != j.size()) {
    throw DimensionMismatch("matrix has " + std::to_string(cols_) + " columns, vector has " +
                            std::to_string(j.size()) + " entries");
  }
  std::vector<Rational> out(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational acc = 0;
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(i, k) != 0 && j[k] != 0) acc += Rational((*this)(i, k)) * j[k];
    }
    out[i] = acc;
  }
  return JacobianElement(std::move(out));
}

Integer IntMatrix::determinant() const {
  if (!is_square()) throw DimensionMismatch("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  std::vector<Integer> a = data_;
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * n + j]; };
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        at(i, j) = t;
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

IntMatrix IntMatrix::unimodular_inverse() const {
  Integer det = determinant();
  if (det != 1 && det != -1) throw NotInvertible(det);
  const std::size_t n = rows_;
  // Gauss-Jordan over Q; the result is integral because det = +-1.
  std::vector<Rational> aug(n * 2 * n, Rational(0));
  auto at = [&](std::size_t i, std::size_t j) -> Rational& { return aug[i * 2 * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) at(i, j) = Rational((*this)(i, j));
    at(i, n + i) = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (at(pivot, col) == 0) ++pivot;
    if (pivot != col) {
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(at(pivot, j), at(col, j));
    }
    Rational p = at(col, col);
    for (std::size_t j = 0; j < 2 * n; ++j) at(col, j) /= p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || at(i, col) == 0) continue;
      Rational f = at(i, col);
      for (std::size_t j = 0; j < 2 * n; ++j) at(i, j) -= f * at(col, j);
    }
  }
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = at(i, n + j).get_num();
  }
  return inv;
}

// --- JacobianAutomorphism ----------------------------------------------------

JacobianAutomorphism::JacobianAutomorphism(std::size_t dim, int modulus) : tilde_(dim, dim), modulus_(modulus) {}

JacobianAutomorphism JacobianAutomorphism::make(EndomorphismMatrix tilde, int modulus) {
  if (modulus < 2) throw Error("Jacobian automorphism modulus must be at least 2");
  if (!tilde.is_square()) throw DimensionMismatch("endomorphism matrix must be square");
  IntMatrix full = IntMatrix::identity(tilde.rows()) + Integer(modulus) * tilde;
  Integer det = full.determinant();
  if (det != 1 && det != -1) throw NotInvertible(det);
  return JacobianAutomorphism(std::move(tilde), modulus);
}

IntMatrix JacobianAutomorphism::matrix() const { return IntMatrix::identity(dim()) + Integer(modulus_) * tilde_; }

JacobianElement JacobianAutomorphism::apply(const JacobianElement& j) const {
  return j + Integer(modulus_) * tilde_.apply(j);
}

JacobianAutomorphism JacobianAutomorphism::inverse() const {
  IntMatrix inv = matrix().unimodular_inverse();
  // inv = I (mod r), so (inv - I) / r is integral
  IntMatrix t = inv - IntMatrix::identity(dim());
  IntMatrix out(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) {
      mpz_divexact_ui(out(i, j).get_mpz_t(), t(i, j).get_mpz_t(), static_cast<unsigned long>(modulus_));
    }
  }
  return JacobianAutomorphism(std::move(out), modulus_);
}

// --- operations --------------------------------------------------------------

LineBundleClass lincomb(const std::vector<std::pair<LineBundleClass, long>>& terms, std::size_t dim) {
  LineBundleClass out = LineBundleClass::trivial(dim);
  for (const auto& [c, n] : terms) out += n * c;
  return out;
}

LineBundleClass of_divisor(const CurveModel& model, const Divisor& divisor) {
  if (divisor.size() != model.num_points()) throw DimensionMismatch("divisor does not match the marked points");
  LineBundleClass out = model.trivial_class();
  for (std::size_t i = 0; i < divisor.size(); ++i) {
    if (divisor[i] != 0) out += divisor[i] * point_class(model, i);
  }
  return out;
}

DivisionResult divide_by_r(const JacobianElement& j, int r) {
  if (r < 2) throw Error("divide_by_r needs r >= 2");
  std::vector<Rational> root;
  root.reserve(j.size());
  for (const auto& c : j.coords()) root.push_back(c / r);
  Integer size;
  mpz_ui_pow_ui(size.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(j.size()));
  return {JacobianElement(std::move(root)), size};
}

TorsionRange::iterator::iterator(std::size_t dim, int r, bool done)
    : digits_(dim, 0), r_(r), done_(done) {
  if (!done_) refresh();
}

void TorsionRange::iterator::refresh() {
  std::vector<Rational> coords;
  coords.reserve(digits_.size());
  for (int d : digits_) coords.emplace_back(d, r_);
  for (auto& c : coords) c.canonicalize();
  current_ = JacobianElement(std::move(coords));
}

TorsionRange::iterator& TorsionRange::iterator::operator++() {
  std::size_t pos = digits_.size();
  while (pos > 0) {
    --pos;
    if (++digits_[pos] < r_) {
      refresh();
      return *this;
    }
    digits_[pos] = 0;
  }
  done_ = true;
  return *this;
}

TorsionRange r_torsion(int genus, int r, const Integer& cap) {
  if (r < 1) throw Error("r_torsion needs r >= 1");
  Integer size;
  mpz_ui_pow_ui(size.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(2 * genus));
  if (size > cap) {
    throw ResourceLimit("J[" + std::to_string(r) + "] has " + size.get_str() + " elements, above the cap " +
                        cap.get_str());
  }
  return TorsionRange(static_cast<std::size_t>(2 * genus), r, size);
}

LineBundleClass pullback(const CurveAutomorphism& sigma, const LineBundleClass& c) {
  return {c.degree, sigma.matrix.apply(c.jac) + Integer(c.degree) * sigma.translation};
}

JacobianAutomorphism make_jac_aut(const EndomorphismMatrix& m, int r) { return JacobianAutomorphism::make(m, r); }

JacobianElement apply_jac_aut(const JacobianAutomorphism& rho, const JacobianElement& j) { return rho.apply(j); }

EndomorphismMatrix tilde_compose(const EndomorphismMatrix& m1, const EndomorphismMatrix& m2, int r) {
  return m1 + m2 + Integer(r) * (m1 * m2);
}

}  // namespace partrans
