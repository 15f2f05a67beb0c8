#pragma once

#include <vector>

#include "solenoidk/abelian.hpp"

namespace solenoidk {

/// Dense univariate polynomial over Q; coefficient i multiplies x^i.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  static Polynomial from_integers(const IntVector& coefficients);

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Rational>& coefficients() const noexcept { return c_; }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const;
  Polynomial derivative() const;
  Polynomial monic() const;

  /// Quotient and remainder; divisor must be nonzero.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  static Polynomial gcd(Polynomial a, Polynomial b);
  /// p / gcd(p, p'): same roots, all simple.
  Polynomial squarefree() const;

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

/// det(x I - A), monic, via Faddeev-LeVerrier.
Polynomial characteristic_polynomial(const IntMatrix& a);

/// Sturm chain of p; counts distinct real roots in half-open intervals.
class SturmSequence {
 public:
  explicit SturmSequence(const Polynomial& p);
  /// Number of distinct real roots in (a, b].
  std::size_t roots_in(const Rational& a, const Rational& b) const;

 private:
  std::size_t sign_changes(const Rational& x) const;
  std::vector<Polynomial> chain_;
};

}  // namespace solenoidk
