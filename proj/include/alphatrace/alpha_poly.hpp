#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace alphatrace {

using Integer = mpz_class;
using Rational = mpq_class;

// Univariate polynomial in alpha with exact rational coefficients.
// coeffs()[i] is the coefficient of alpha^i; trailing zeros are always
// trimmed, so the zero polynomial has an empty coefficient list.
class AlphaPoly {
 public:
  AlphaPoly() = default;
  explicit AlphaPoly(std::vector<Rational> coeffs);
  AlphaPoly(std::initializer_list<Rational> coeffs);

  static AlphaPoly constant(const Rational& c);
  static AlphaPoly monomial(const Rational& c, std::size_t power);
  // alpha^a * (1 - alpha)^b
  static AlphaPoly alpha_beta(std::size_t a, std::size_t b);

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Rational coeff(std::size_t power) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational evaluate(const Rational& alpha) const;
  AlphaPoly derivative() const;

  AlphaPoly& operator+=(const AlphaPoly& rhs);
  AlphaPoly& operator-=(const AlphaPoly& rhs);
  AlphaPoly& operator*=(const AlphaPoly& rhs);
  AlphaPoly& operator*=(const Rational& s);

  friend AlphaPoly operator+(AlphaPoly a, const AlphaPoly& b) { return a += b; }
  friend AlphaPoly operator-(AlphaPoly a, const AlphaPoly& b) { return a -= b; }
  friend AlphaPoly operator*(AlphaPoly a, const AlphaPoly& b) { return a *= b; }
  friend AlphaPoly operator*(AlphaPoly a, const Rational& s) { return a *= s; }
  friend AlphaPoly operator*(const Rational& s, AlphaPoly a) { return a *= s; }
  AlphaPoly operator-() const;

  friend bool operator==(const AlphaPoly& a, const AlphaPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  // Euclidean division; throws std::domain_error on a zero divisor.
  void divmod(const AlphaPoly& divisor, AlphaPoly& quotient,
              AlphaPoly& remainder) const;

  // Human readable, e.g. "12*a^3 - 27*a^2 + 27*a - 9".
  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

AlphaPoly poly_gcd(AlphaPoly a, AlphaPoly b);

// Sign of p on the open interval (0, 1).
enum class IntervalSign { Positive, Negative, Mixed, Zero };

struct RootInterval {
  Rational lo;
  Rational hi;
};

struct SignReport {
  IntervalSign sign = IntervalSign::Zero;
  // Disjoint isolating intervals, one per distinct root of p in (0, 1).
  // A root is either exactly lo == hi or strictly inside (lo, hi).
  std::vector<RootInterval> roots;
};

// Exact sign analysis on (0, 1) by Sturm sequences on the square-free part.
SignReport sign_on_unit_interval(const AlphaPoly& p);

// Number of distinct real roots in the open interval (lo, hi).
std::size_t count_roots_open(const AlphaPoly& p, const Rational& lo,
                             const Rational& hi);

}  // namespace alphatrace
