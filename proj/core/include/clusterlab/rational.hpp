#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace clusterlab {

__extension__ typedef __int128 Int128;

/// Exact rational with 64-bit numerator and denominator.
///
/// Used for lattice geometry (embedded coordinates, generator matrices,
/// direction vectors) where values stay small. Every operation is carried
/// out in 128-bit intermediates and throws std::overflow_error when the
/// reduced result does not fit. Weighted sums use GMP instead (see scalar.hpp).
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT: implicit by design of the arithmetic
  Rational(std::int64_t num, std::int64_t den);

  /// Accepts "p", "p/q" and plain decimals such as "-1.25".
  static Rational parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }
  bool is_zero() const noexcept { return num_ == 0; }
  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

  Rational abs() const { return num_ < 0 ? -*this : *this; }
  std::int64_t floor() const;
  std::int64_t ceil() const;
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

 private:
  static Rational from_wide(Int128 num, Int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

using RatVector = std::vector<Rational>;

/// Square matrix stored row-major.
struct RatMatrix {
  int n = 0;
  std::vector<Rational> data;

  RatMatrix() = default;
  explicit RatMatrix(int size) : n(size), data(static_cast<std::size_t>(size) * size) {}
  static RatMatrix identity(int size);
  /// Builds a matrix whose columns are the given vectors.
  static RatMatrix from_columns(const std::vector<RatVector>& columns);

  Rational& at(int row, int col) { return data[static_cast<std::size_t>(row) * n + col]; }
  const Rational& at(int row, int col) const { return data[static_cast<std::size_t>(row) * n + col]; }
  RatVector column(int col) const;

  Rational determinant() const;
  /// Throws InvalidArgument if singular.
  RatMatrix inverse() const;
  RatVector apply(const RatVector& v) const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;
};

RatVector operator+(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a, const RatVector& b);
Rational dot(const RatVector& a, const RatVector& b);
/// Sup norm, max |x_k|.
Rational sup_norm(const RatVector& v);
std::strong_ordering lex_compare(const RatVector& a, const RatVector& b);

}  // namespace clusterlab
