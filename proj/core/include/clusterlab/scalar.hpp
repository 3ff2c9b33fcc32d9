#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace clusterlab {

enum class ArithmeticMode { kExact, kFloat };

/// Exact rational, or an element a + b*sqrt(r) of Q(sqrt r), or a double.
///
/// Exact values carry at most one radicand r. Arithmetic between two exact
/// values with different non-trivial radicands, or between an exact and a
/// floating value, throws std::domain_error. A radicand that is a perfect
/// rational square is folded into the rational part at construction.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : rational_(value) {}  // NOLINT
  Scalar(const mpq_class& value) : rational_(value) { rational_.canonicalize(); }  // NOLINT

  /// rational + surd * sqrt(radicand); radicand must be positive.
  static Scalar with_surd(const mpq_class& rational, const mpq_class& surd, const mpq_class& radicand);
  static Scalar from_double(double value);
  /// Parses "p/q", an integer, a decimal, or "a+b*sqrt(r)" as written by to_string().
  static Scalar parse(std::string_view text);

  bool is_exact() const noexcept { return mode_ == ArithmeticMode::kExact; }
  ArithmeticMode mode() const noexcept { return mode_; }
  bool is_rational() const { return is_exact() && sgn(surd_) == 0; }
  bool is_zero() const;
  /// -1, 0 or +1; exact for exact values.
  int sign() const;

  const mpq_class& rational_part() const { return rational_; }
  const mpq_class& surd_part() const { return surd_; }
  const mpq_class& radicand() const { return radicand_; }
  double to_double() const;
  /// Exact rational value; throws if the value has a surd part or is a double.
  mpq_class to_rational() const;

  std::string to_string() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar pow(long exponent) const;

  /// Exact equality for exact values, bitwise equality for doubles.
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  void align_with(const Scalar& o);
  void normalize();

  ArithmeticMode mode_ = ArithmeticMode::kExact;
  mpq_class rational_ = 0;
  mpq_class surd_ = 0;
  mpq_class radicand_ = 0;
  double float_ = 0.0;
};

/// Parses an exact rational parameter ("2", "1/2", "0.45").
mpq_class parse_mpq(std::string_view text);
std::string mpq_to_string(const mpq_class& q);

/// |a - b| <= rel_tol * max(|a|, |b|), evaluated in double precision.
bool relative_close(const Scalar& a, const Scalar& b, double rel_tol);

}  // namespace clusterlab
