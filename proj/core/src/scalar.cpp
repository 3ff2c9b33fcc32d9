#include "clusterlab/scalar.hpp"

#include <cmath>
#include <stdexcept>

#include "clusterlab/errors.hpp"
#include "clusterlab/rational.hpp"

namespace clusterlab {
namespace {

// Returns true and sets root when q is the square of a rational.
bool rational_sqrt(const mpq_class& q, mpq_class& root) {
  if (sgn(q) < 0) return false;
  mpz_class n = q.get_num();
  mpz_class d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  root = mpq_class(rn, rd);
  root.canonicalize();
  return true;
}

std::string trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

mpq_class parse_mpq(std::string_view text) {
  std::string t = trim(text);
  if (t.empty()) throw ParseError("empty number");
  if (t.find('.') != std::string::npos || t.find('e') != std::string::npos ||
      t.find('E') != std::string::npos) {
    if (t.find_first_of("eE") != std::string::npos) throw ParseError("exponent notation is not exact: '" + t + "'");
    Rational r = Rational::parse(t);
    return mpq_class(mpz_class(static_cast<long>(r.num())), mpz_class(static_cast<long>(r.den())));
  }
  mpq_class q;
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  if (q.set_str(t, 10) != 0) throw ParseError("not a rational: '" + t + "'");
  if (t.find('/') != std::string::npos && q.get_den() == 0) throw ParseError("zero denominator: '" + t + "'");
  q.canonicalize();
  return q;
}

std::string mpq_to_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_str(10);
}

Scalar Scalar::with_surd(const mpq_class& rational, const mpq_class& surd, const mpq_class& radicand) {
  if (sgn(radicand) <= 0) throw std::domain_error("radicand must be positive");
  Scalar s;
  s.rational_ = rational;
  s.surd_ = surd;
  s.radicand_ = radicand;
  s.rational_.canonicalize();
  s.surd_.canonicalize();
  s.radicand_.canonicalize();
  s.normalize();
  return s;
}

Scalar Scalar::from_double(double value) {
  Scalar s;
  s.mode_ = ArithmeticMode::kFloat;
  s.float_ = value;
  return s;
}

Scalar Scalar::parse(std::string_view text) {
  std::string t = trim(text);
  auto pos = t.find("*sqrt(");
  if (pos == std::string::npos) return Scalar(parse_mpq(t));
  if (t.back() != ')') throw ParseError("malformed surd: '" + t + "'");
  mpq_class radicand = parse_mpq(t.substr(pos + 6, t.size() - pos - 7));
  // Split "<a>+<b>" or "<a>-<b>" at the last sign before the surd coefficient.
  std::string head = t.substr(0, pos);
  std::size_t split = std::string::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if ((head[i] == '+' || head[i] == '-') && head[i - 1] != '/' ) {
      split = i;
      break;
    }
  }
  mpq_class a = 0;
  mpq_class b;
  if (split == std::string::npos) {
    b = parse_mpq(head);
  } else {
    a = parse_mpq(head.substr(0, split));
    b = parse_mpq(head.substr(split));
  }
  return with_surd(a, b, radicand);
}

void Scalar::normalize() {
  if (mode_ != ArithmeticMode::kExact) return;
  if (sgn(surd_) == 0) {
    radicand_ = 0;
    return;
  }
  mpq_class root;
  if (rational_sqrt(radicand_, root)) {
    rational_ += surd_ * root;
    surd_ = 0;
    radicand_ = 0;
  }
}

bool Scalar::is_zero() const {
  if (!is_exact()) return float_ == 0.0;
  return sgn(rational_) == 0 && sgn(surd_) == 0;
}

int Scalar::sign() const {
  if (!is_exact()) return (float_ > 0) - (float_ < 0);
  int sa = sgn(rational_);
  int sb = sgn(surd_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // a and b*sqrt(r) have opposite signs: compare a^2 with b^2 r.
  mpq_class lhs = rational_ * rational_;
  mpq_class rhs = surd_ * surd_ * radicand_;
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  return c > 0 ? sa : sb;
}

double Scalar::to_double() const {
  if (!is_exact()) return float_;
  double v = rational_.get_d();
  if (sgn(surd_) != 0) v += surd_.get_d() * std::sqrt(radicand_.get_d());
  return v;
}

mpq_class Scalar::to_rational() const {
  if (!is_rational()) throw std::domain_error("scalar is not rational: " + to_string());
  return rational_;
}

std::string Scalar::to_string() const {
  if (!is_exact()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", float_);
    return buf;
  }
  if (sgn(surd_) == 0) return rational_.get_str();
  std::string out;
  if (sgn(rational_) != 0) {
    out = rational_.get_str();
    if (sgn(surd_) > 0) out += "+";
  }
  out += surd_.get_str() + "*sqrt(" + radicand_.get_str() + ")";
  return out;
}

void Scalar::align_with(const Scalar& o) {
  if (mode_ != o.mode_) throw std::domain_error("mixed exact and floating-point arithmetic");
  if (!is_exact()) return;
  if (sgn(o.surd_) == 0) return;
  if (sgn(surd_) == 0) {
    radicand_ = o.radicand_;
    return;
  }
  if (radicand_ != o.radicand_) throw std::domain_error("mixed square-root extensions");
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.rational_ = -s.rational_;
  s.surd_ = -s.surd_;
  s.float_ = -s.float_;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  align_with(o);
  if (!is_exact()) {
    float_ += o.float_;
    return *this;
  }
  rational_ += o.rational_;
  surd_ += o.surd_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  align_with(o);
  if (!is_exact()) {
    float_ *= o.float_;
    return *this;
  }
  // (a + b s)(c + d s) = (ac + bd r) + (ad + bc) s
  mpq_class a = rational_, b = surd_;
  const mpq_class c = o.rational_;
  const mpq_class d = o.surd_;
  rational_ = a * c + b * d * radicand_;
  surd_ = a * d + b * c;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  align_with(o);
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (!is_exact()) {
    float_ /= o.float_;
    return *this;
  }
  // 1/(c + d s) = (c - d s) / (c^2 - d^2 r)
  mpq_class norm = o.rational_ * o.rational_ - o.surd_ * o.surd_ * radicand_;
  Scalar conj = o;
  conj.surd_ = -conj.surd_;
  *this *= conj;
  rational_ /= norm;
  surd_ /= norm;
  normalize();
  return *this;
}

Scalar Scalar::pow(long exponent) const {
  if (exponent < 0) {
    Scalar one = is_exact() ? Scalar(1L) : Scalar::from_double(1.0);
    return (one / *this).pow(-exponent);
  }
  Scalar result = is_exact() ? Scalar(1L) : Scalar::from_double(1.0);
  Scalar base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.mode_ != b.mode_) return false;
  if (!a.is_exact()) return a.float_ == b.float_;
  if (a.rational_ != b.rational_ || a.surd_ != b.surd_) return false;
  return sgn(a.surd_) == 0 || a.radicand_ == b.radicand_;
}

bool relative_close(const Scalar& a, const Scalar& b, double rel_tol) {
  double x = a.to_double();
  double y = b.to_double();
  double scale = std::max(std::abs(x), std::abs(y));
  return std::abs(x - y) <= rel_tol * scale;
}

}  // namespace clusterlab
