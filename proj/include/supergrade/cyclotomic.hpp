#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace supergrade {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Thrown when two scalars live in incompatible cyclotomic fields
/// (neither ambient order divides the other).
struct FieldMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DivisionByZeroError : std::domain_error {
  using std::domain_error::domain_error;
};

long lcm_long(long a, long b);
long euler_phi(long n);

/// Coefficients of the n-th cyclotomic polynomial, ascending degree,
/// computed by exact integer division of x^n - 1 by the lower-order factors.
const std::vector<BigInt>& cyclotomic_polynomial(long n);

/// An element of the cyclotomic field Q(zeta_N), stored as a polynomial in
/// zeta_N reduced modulo Phi_N.  Representations are canonical: two values
/// are equal iff order and coefficient vectors agree after alignment, where
/// alignment promotes along divisibility of ambient orders only.
class Cyclo {
 public:
  Cyclo() : order_(1), coeffs_(1, Rational(0)) {}
  Cyclo(int v) : order_(1), coeffs_(1, Rational(v)) {}
  Cyclo(long v) : order_(1), coeffs_(1, Rational(v)) {}
  Cyclo(const Rational& v) : order_(1), coeffs_(1, v) { coeffs_[0].canonicalize(); }

  /// zeta_order^power
  static Cyclo zeta(long order, long power = 1);
  /// Rational constant embedded in Q(zeta_order).
  static Cyclo rational_in(long order, const Rational& v);
  /// Polynomial in zeta_order with the given ascending coefficients; reduced.
  static Cyclo from_coeffs(long order, std::vector<Rational> coeffs);

  long order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Requires is_rational().
  Rational rational_value() const;

  /// Embed into Q(zeta_new_order); requires order() | new_order.
  Cyclo promoted(long new_order) const;

  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  Cyclo& operator/=(const Cyclo& o);
  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
  friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }

  /// Multiplicative inverse; throws DivisionByZeroError on zero.
  Cyclo inverse() const;

  friend bool operator==(const Cyclo& a, const Cyclo& b);
  friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

  /// Total order used for canonical tie-breaking (not a field order).
  static int compare(const Cyclo& a, const Cyclo& b);

  /// "1/2 + -3*z8^2" style; the ambient order is embedded in the variable
  /// name ("z8"), plain rationals print with no variable at all.
  std::string str() const;
  /// Inverse of str(); order_hint is used for pure-rational strings.
  static Cyclo parse(const std::string& text, long order_hint = 1);

 private:
  void reduce_();
  long order_;
  std::vector<Rational> coeffs_;  // size euler_phi(order_)
};

std::ostream& operator<<(std::ostream& os, const Cyclo& c);

/// Promote both values into a common field (divisibility only).
void align(Cyclo& a, Cyclo& b);

/// Detects c == q * zeta_order^k; returns (q, k) with the smallest such k.
std::optional<std::pair<Rational, long>> monomial_form(const Cyclo& c);

/// Exact rational n-th root if it exists.
std::optional<Rational> rational_nth_root(const Rational& q, long n);

/// All z in Q(zeta_field_order) with z^n == c, for c of monomial form.
/// Roots are of monomial form themselves; the list is sorted canonically.
std::vector<Cyclo> nth_roots_in_field(const Cyclo& c, long n, long field_order);

struct RootLift {
  Cyclo root;
  long order;  // ambient order of the (possibly enlarged) field
};

/// One solution of z^n == c, enlarging the ambient order when necessary.
/// Handles c of monomial form q * zeta^k with q a perfect n-th power up to
/// sign; returns nullopt otherwise.
std::optional<RootLift> nth_root_enlarging(const Cyclo& c, long n);

}  // namespace supergrade

namespace Eigen {

template <>
struct NumTraits<supergrade::Cyclo> : GenericNumTraits<supergrade::Cyclo> {
  typedef supergrade::Cyclo Real;
  typedef supergrade::Cyclo NonInteger;
  typedef supergrade::Cyclo Nested;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 120
  };
};

}  // namespace Eigen
