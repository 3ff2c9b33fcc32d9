#include <stdexcept>

#include "clusterlab/errors.hpp"
#include "clusterlab/rational.hpp"
#include "clusterlab/scalar.hpp"
#include "doctest.h"

using namespace clusterlab;

TEST_CASE("rational arithmetic reduces") {
  Rational a(6, -4);
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK(a + Rational(1, 2) == Rational(-1));
  CHECK(a * Rational(2, 3) == Rational(-1));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational::parse("-1.25") == Rational(-5, 4));
  CHECK(Rational::parse("3/9").to_string() == "1/3");
}

TEST_CASE("rational overflow is detected") {
  Rational big(INT64_MAX / 2 + 1);
  CHECK_THROWS_AS(big * Rational(4), std::overflow_error);
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("matrix inverse and determinant") {
  RatMatrix m = RatMatrix::from_columns({{1, 0}, {Rational(1, 2), 1}});
  CHECK(m.determinant() == Rational(1));
  RatMatrix inv = m.inverse();
  RatVector x = inv.apply(m.apply({3, 5}));
  CHECK(x == RatVector{3, 5});
  CHECK_THROWS_AS(RatMatrix::from_columns({{1, 2}, {2, 4}}).inverse(), InvalidArgument);
}

TEST_CASE("scalar surds stay exact") {
  Scalar s = Scalar::with_surd(0, mpq_class(7, 3), mpq_class(3, 10));
  Scalar sq = s * s;
  CHECK(sq.is_rational());
  CHECK(sq.to_rational() == mpq_class(49, 30));
  CHECK(s.pow(2) == sq);
  CHECK(s.pow(4) == sq * sq);
  CHECK(s.pow(3) == sq * s);
  CHECK_FALSE(s.pow(3).is_rational());
}

TEST_CASE("scalar self multiplication") {
  Scalar s = Scalar::with_surd(1, 2, 5);
  Scalar t = s;
  t *= t;
  CHECK(t == Scalar::with_surd(21, 4, 5));
}

TEST_CASE("scalar division and perfect squares") {
  Scalar a = Scalar::with_surd(1, 1, 2);
  CHECK((Scalar(1L) / a) * a == Scalar(1L));
  Scalar b = Scalar::with_surd(0, 3, mpq_class(4, 9));
  CHECK(b.is_rational());
  CHECK(b.to_rational() == 2);
}

TEST_CASE("scalar sign is exact") {
  CHECK(Scalar::with_surd(-1, 1, 2).sign() == 1);
  CHECK(Scalar::with_surd(2, -1, 4).is_zero());
  CHECK(Scalar::with_surd(1, -1, 2).sign() == -1);
}

TEST_CASE("mixing extensions or modes throws") {
  Scalar a = Scalar::with_surd(0, 1, 2);
  Scalar b = Scalar::with_surd(0, 1, 3);
  CHECK_THROWS_AS(a + b, std::domain_error);
  CHECK_THROWS_AS(Scalar(1L) + Scalar::from_double(1.0), std::domain_error);
}

TEST_CASE("scalar text roundtrip") {
  for (const Scalar& s : {Scalar(mpq_class(-3, 7)), Scalar::with_surd(mpq_class(1, 2), -3, 7), Scalar::with_surd(0, 2, 3)}) {
    CHECK(Scalar::parse(s.to_string()) == s);
  }
  CHECK(parse_mpq("0.45") == mpq_class(9, 20));
  CHECK(mpq_to_string(mpq_class(4, 2)) == "2");
}

TEST_CASE("relative closeness") {
  CHECK(relative_close(Scalar(mpq_class(1, 3)), Scalar::from_double(1.0 / 3.0), 1e-12));
  CHECK_FALSE(relative_close(Scalar(1L), Scalar(2L), 1e-3));
}
