#include "clusterlab/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "clusterlab/errors.hpp"

namespace clusterlab {
namespace {

Int128 gcd128(Int128 a, Int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(Int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Rational Rational::from_wide(Int128 num, Int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits64(num) || !fits64(den)) throw std::overflow_error("rational overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational::Rational(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t n = parse_int(text.substr(0, slash));
    std::int64_t d = parse_int(text.substr(slash + 1));
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(n, d);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (negative) whole.remove_prefix(1);
    if (frac.size() > 17) throw ParseError("too many decimals in '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::int64_t w = whole.empty() ? 0 : parse_int(whole);
    std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    if (w < 0 || f < 0) throw ParseError("malformed decimal '" + std::string(text) + "'");
    Rational r = Rational(w) + Rational(f, scale);
    return negative ? -r : r;
  }
  return Rational(parse_int(text));
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rational::ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return from_wide(-static_cast<Int128>(num_), den_); }

Rational& Rational::operator+=(const Rational& o) {
  *this = from_wide(static_cast<Int128>(num_) * o.den_ + static_cast<Int128>(o.num_) * den_,
                    static_cast<Int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  *this = from_wide(static_cast<Int128>(num_) * o.den_ - static_cast<Int128>(o.num_) * den_,
                    static_cast<Int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  *this = from_wide(static_cast<Int128>(num_) * o.num_, static_cast<Int128>(den_) * o.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  *this = from_wide(static_cast<Int128>(num_) * o.den_, static_cast<Int128>(den_) * o.num_);
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  Int128 lhs = static_cast<Int128>(a.num_) * b.den_;
  Int128 rhs = static_cast<Int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

RatMatrix RatMatrix::identity(int size) {
  RatMatrix m(size);
  for (int i = 0; i < size; ++i) m.at(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_columns(const std::vector<RatVector>& columns) {
  const int n = static_cast<int>(columns.size());
  RatMatrix m(n);
  for (int c = 0; c < n; ++c) {
    if (static_cast<int>(columns[c].size()) != n) throw InvalidArgument("generator matrix is not square");
    for (int r = 0; r < n; ++r) m.at(r, c) = columns[c][r];
  }
  return m;
}

RatVector RatMatrix::column(int col) const {
  RatVector v(n);
  for (int r = 0; r < n; ++r) v[r] = at(r, col);
  return v;
}

Rational RatMatrix::determinant() const {
  RatMatrix m = *this;
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r) {
      if (!m.at(r, c).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != c) {
      for (int k = 0; k < n; ++k) std::swap(m.at(pivot, k), m.at(c, k));
      det = -det;
    }
    det *= m.at(c, c);
    for (int r = c + 1; r < n; ++r) {
      Rational f = m.at(r, c) / m.at(c, c);
      if (f.is_zero()) continue;
      for (int k = c; k < n; ++k) m.at(r, k) -= f * m.at(c, k);
    }
  }
  return det;
}

RatMatrix RatMatrix::inverse() const {
  RatMatrix m = *this;
  RatMatrix inv = identity(n);
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r) {
      if (!m.at(r, c).is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw InvalidArgument("generator matrix is singular");
    if (pivot != c) {
      for (int k = 0; k < n; ++k) {
        std::swap(m.at(pivot, k), m.at(c, k));
        std::swap(inv.at(pivot, k), inv.at(c, k));
      }
    }
    Rational p = m.at(c, c);
    for (int k = 0; k < n; ++k) {
      m.at(c, k) /= p;
      inv.at(c, k) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m.at(r, c).is_zero()) continue;
      Rational f = m.at(r, c);
      for (int k = 0; k < n; ++k) {
        m.at(r, k) -= f * m.at(c, k);
        inv.at(r, k) -= f * inv.at(c, k);
      }
    }
  }
  return inv;
}

RatVector RatMatrix::apply(const RatVector& v) const {
  RatVector out(n);
  for (int r = 0; r < n; ++r) {
    Rational acc = 0;
    for (int c = 0; c < n; ++c) {
      if (!at(r, c).is_zero() && !v[c].is_zero()) acc += at(r, c) * v[c];
    }
    out[r] = acc;
  }
  return out;
}

RatVector operator+(const RatVector& a, const RatVector& b) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVector operator-(const RatVector& a, const RatVector& b) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

Rational sup_norm(const RatVector& v) {
  Rational m = 0;
  for (const auto& x : v) m = std::max(m, x.abs());
  return m;
}

std::strong_ordering lex_compare(const RatVector& a, const RatVector& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return a.size() <=> b.size();
}

}  // namespace clusterlab
