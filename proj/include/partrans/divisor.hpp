#pragma once

#include <cstddef>
#include <vector>

namespace partrans {

/// Integer combination of the marked points, indexed by point position in the model.
class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(std::size_t num_points) : mult_(num_points, 0) {}
  explicit Divisor(std::vector<long> multiplicities) : mult_(std::move(multiplicities)) {}

  static Divisor point(std::size_t num_points, std::size_t index, long multiplicity = 1) {
    Divisor d(num_points);
    d.mult_[index] = multiplicity;
    return d;
  }

  std::size_t size() const { return mult_.size(); }
  long operator[](std::size_t i) const { return mult_[i]; }
  long& operator[](std::size_t i) { return mult_[i]; }
  const std::vector<long>& multiplicities() const { return mult_; }

  /// |H| = sum of multiplicities.
  long degree() const {
    long total = 0;
    for (long m : mult_) total += m;
    return total;
  }

  bool is_zero() const {
    for (long m : mult_) {
      if (m != 0) return false;
    }
    return true;
  }

  Divisor& operator+=(const Divisor& other) {
    for (std::size_t i = 0; i < mult_.size(); ++i) mult_[i] += other.mult_[i];
    return *this;
  }
  Divisor& operator-=(const Divisor& other) {
    for (std::size_t i = 0; i < mult_.size(); ++i) mult_[i] -= other.mult_[i];
    return *this;
  }
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator*(long k, Divisor a) {
    for (auto& m : a.mult_) m *= k;
    return a;
  }
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.mult_ == b.mult_; }
  friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }

 private:
  std::vector<long> mult_;
};

}  // namespace partrans
