#include <cmath>

#include "clusterlab/analysis.hpp"
#include "clusterlab/errors.hpp"
#include "doctest.h"

using namespace clusterlab;

namespace {

SeriesTable series(std::vector<long> values, int first = 1) {
  SeriesTable s;
  s.lattice = "z2";
  s.cls = "site-animal";
  s.measure = "sites";
  s.weights = "unit";
  for (std::size_t i = 0; i < values.size(); ++i) s.rows.push_back({first + static_cast<int>(i), Scalar(values[i])});
  return s;
}

}  // namespace

TEST_CASE("growth report") {
  auto rows = growth_report(series({1, 2, 6, 19}));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].ratio == Scalar(2L));
  CHECK(rows[2].ratio == Scalar(mpq_class(19, 6)));
  CHECK_FALSE(rows[3].has_ratio);
  CHECK(rows[1].root == doctest::Approx(std::sqrt(2.0)));
  CHECK(rows[2].free_energy == doctest::Approx(std::log(6.0) / 3));
}

TEST_CASE("ratio diagnostic on a geometric series vanishes") {
  for (const auto& r : ratio_diagnostic(series({3, 6, 12, 24, 48}))) CHECK(r.r.is_zero());
  auto rows = ratio_diagnostic(series({1, 2, 6, 19, 63}));
  REQUIRE(rows.size() == 3);
  // n * ((v2/v1)^2 - v3/v1) at n = 1.
  CHECK(rows[0].r == Scalar(-2L));
  CHECK(rows[2].running_max >= rows[1].running_max);
}

TEST_CASE("compare classes") {
  auto rows = compare_classes(series({1, 2, 6, 19}), series({1, 2, 6, 22}));
  CHECK_FALSE(rows[2].strict_less);
  CHECK(rows[3].strict_less);
  CHECK(rows[3].ratio == Scalar(mpq_class(19, 22)));
  CHECK_THROWS_AS(compare_classes(series({1, 2}), series({1, 2, 3})), InvalidArgument);
}

TEST_CASE("malformed series are rejected") {
  CHECK_THROWS_AS(growth_report(series({1, 0, 3})), InvalidArgument);
  CHECK_THROWS_AS(growth_report(series({1})), InvalidArgument);
  CHECK_THROWS_AS(ratio_diagnostic(series({1, 2})), InvalidArgument);
  SeriesTable gap = series({1, 2, 3});
  gap.rows[2].n = 5;
  CHECK_THROWS_AS(ratio_diagnostic(gap), InvalidArgument);
  gap.rows[2].n = 2;
  CHECK_THROWS_AS(gap.check(), InvalidArgument);
}
