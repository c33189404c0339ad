#pragma once

// Exact arithmetic in the torsion model of the Picard group,
//   Pic(X) = Z (+) (Q/Z)^{2g},
// together with integer endomorphisms of the Jacobian and the automorphisms
// rho = id + r*M that restrict to the identity on J[r].

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <utility>
#include <vector>

#include "partrans/rational.hpp"

namespace partrans {

class CurveModel;
struct CurveAutomorphism;
class Divisor;

/// A point of (Q/Z)^{2g}. Coordinates are always kept in [0, 1).
class JacobianElement {
 public:
  JacobianElement() = default;
  explicit JacobianElement(std::size_t dim) : coords_(dim, Rational(0)) {}
  explicit JacobianElement(std::vector<Rational> coords);

  static JacobianElement zero(std::size_t dim) { return JacobianElement(dim); }

  std::size_t size() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_zero() const;

  /// Smallest n > 0 with n * this = 0.
  Integer order() const;

  JacobianElement& operator+=(const JacobianElement& other);
  JacobianElement& operator-=(const JacobianElement& other);
  JacobianElement& operator*=(const Integer& k);
  JacobianElement operator-() const;

  friend JacobianElement operator+(JacobianElement a, const JacobianElement& b) { return a += b; }
  friend JacobianElement operator-(JacobianElement a, const JacobianElement& b) { return a -= b; }
  friend JacobianElement operator*(const Integer& k, JacobianElement a) { return a *= k; }
  friend JacobianElement operator*(long k, JacobianElement a) { return a *= Integer(k); }
  friend bool operator==(const JacobianElement& a, const JacobianElement& b) { return a.coords_ == b.coords_; }
  friend bool operator!=(const JacobianElement& a, const JacobianElement& b) { return !(a == b); }

 private:
  void check_same_size(const JacobianElement& other) const;
  std::vector<Rational> coords_;
};

/// A line bundle class: degree plus the Jacobian coordinate.
struct LineBundleClass {
  long degree = 0;
  JacobianElement jac;

  static LineBundleClass trivial(std::size_t dim) { return {0, JacobianElement::zero(dim)}; }

  LineBundleClass& operator+=(const LineBundleClass& other);
  LineBundleClass& operator-=(const LineBundleClass& other);
  LineBundleClass operator-() const { return {-degree, -jac}; }

  friend LineBundleClass operator+(LineBundleClass a, const LineBundleClass& b) { return a += b; }
  friend LineBundleClass operator-(LineBundleClass a, const LineBundleClass& b) { return a -= b; }
  friend LineBundleClass operator*(long k, const LineBundleClass& c) { return {k * c.degree, k * c.jac}; }
  friend bool operator==(const LineBundleClass& a, const LineBundleClass& b) {
    return a.degree == b.degree && a.jac == b.jac;
  }
  friend bool operator!=(const LineBundleClass& a, const LineBundleClass& b) { return !(a == b); }

  bool is_trivial() const { return degree == 0 && jac.is_zero(); }
};

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);

  static IntMatrix identity(std::size_t n);
  static IntMatrix scalar(std::size_t n, const Integer& k);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  bool is_identity() const;
  /// True when the matrix is k * I for some integer k.
  bool is_scalar() const;

  IntMatrix& operator+=(const IntMatrix& other);
  IntMatrix& operator-=(const IntMatrix& other);
  IntMatrix& operator*=(const Integer& k);
  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) { return a += b; }
  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) { return a -= b; }
  friend IntMatrix operator*(const Integer& k, IntMatrix a) { return a *= k; }
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

  /// Matrix action on (Q/Z)^n, result reduced mod Z.
  JacobianElement apply(const JacobianElement& j) const;

  /// Fraction-free (Bareiss) determinant.
  Integer determinant() const;

  /// Inverse of a matrix with determinant +-1. Throws NotInvertible otherwise.
  IntMatrix unimodular_inverse() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

using EndomorphismMatrix = IntMatrix;

/// rho = id + r * M, an automorphism of (Q/Z)^{2g} fixing J[r] pointwise.
class JacobianAutomorphism {
 public:
  /// Identity automorphism of (Q/Z)^{dim} at modulus r.
  JacobianAutomorphism(std::size_t dim, int modulus);

  /// Throws NotInvertible(det) when |det(I + rM)| != 1.
  static JacobianAutomorphism make(EndomorphismMatrix tilde, int modulus);

  const EndomorphismMatrix& tilde() const { return tilde_; }
  int modulus() const { return modulus_; }
  std::size_t dim() const { return tilde_.rows(); }
  /// The full matrix I + rM.
  IntMatrix matrix() const;
  bool is_identity() const { return tilde_.is_zero(); }

  JacobianElement apply(const JacobianElement& j) const;
  /// rho~(j) = M j.
  JacobianElement apply_tilde(const JacobianElement& j) const { return tilde_.apply(j); }

  JacobianAutomorphism inverse() const;

  friend bool operator==(const JacobianAutomorphism& a, const JacobianAutomorphism& b) {
    return a.modulus_ == b.modulus_ && a.tilde_ == b.tilde_;
  }

 private:
  JacobianAutomorphism(EndomorphismMatrix tilde, int modulus) : tilde_(std::move(tilde)), modulus_(modulus) {}

  EndomorphismMatrix tilde_;
  int modulus_;
};

// --- operations ------------------------------------------------------------

/// sum of n_i * c_i. The dimension of an empty sum is taken from `dim`.
LineBundleClass lincomb(const std::vector<std::pair<LineBundleClass, long>>& terms, std::size_t dim);

/// Class of a divisor supported on the marked points.
LineBundleClass of_divisor(const CurveModel& model, const Divisor& divisor);

struct DivisionResult {
  JacobianElement root;  ///< coords / r, the canonical solution of r * x = j
  Integer torsor_size;   ///< r^{2g}: all solutions are root + J[r]
};

DivisionResult divide_by_r(const JacobianElement& j, int r);

/// Lexicographic enumeration of J[r] in (Q/Z)^{2g}. Restartable; holds no shared state.
class TorsionRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = JacobianElement;
    using difference_type = std::ptrdiff_t;
    using pointer = const JacobianElement*;
    using reference = const JacobianElement&;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_ && (a.done_ || a.digits_ == b.digits_); }
    friend bool operator!=(const iterator& a, const iterator& b) { return !(a == b); }

   private:
    friend class TorsionRange;
    iterator(std::size_t dim, int r, bool done);
    void refresh();

    std::vector<int> digits_;
    int r_ = 1;
    bool done_ = true;
    JacobianElement current_;
  };

  iterator begin() const { return iterator(dim_, r_, false); }
  iterator end() const { return iterator(dim_, r_, true); }
  const Integer& size() const { return size_; }

 private:
  friend TorsionRange r_torsion(int genus, int r, const Integer& cap);
  TorsionRange(std::size_t dim, int r, Integer size) : dim_(dim), r_(r), size_(std::move(size)) {}

  std::size_t dim_;
  int r_;
  Integer size_;
};

/// Throws ResourceLimit when r^{2g} > cap.
TorsionRange r_torsion(int genus, int r, const Integer& cap);

/// (deg, j) -> (deg, M_sigma j + deg * t_sigma).
LineBundleClass pullback(const CurveAutomorphism& sigma, const LineBundleClass& c);

/// Throws NotInvertible when |det(I + rM)| != 1.
JacobianAutomorphism make_jac_aut(const EndomorphismMatrix& m, int r);

JacobianElement apply_jac_aut(const JacobianAutomorphism& rho, const JacobianElement& j);

/// Tilde of rho1 o rho2, where m1 is the tilde of the outer factor: M1 + M2 + r M1 M2.
EndomorphismMatrix tilde_compose(const EndomorphismMatrix& m1, const EndomorphismMatrix& m2, int r);

}  // namespace partrans
