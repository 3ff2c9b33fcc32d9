#include <random>

#include "brute.hpp"
#include "clusterlab/enumerate.hpp"
#include "clusterlab/errors.hpp"
#include "clusterlab/pattern.hpp"
#include "clusterlab/weights.hpp"
#include "doctest.h"
#include "properties.hpp"

using namespace clusterlab;

namespace {

SiteRef at(int x, int y) { return SiteRef{make_cell({x, y}), 0}; }

Window square_window(int lo, int hi) {
  Window w;
  w.lo = make_cell({lo, lo});
  w.hi = make_cell({hi, hi});
  return w;
}

}  // namespace

TEST_CASE("pattern sets must be disjoint and p1 non-empty") {
  CHECK_THROWS_AS(Pattern(ElementSet{}, ElementSet({at(0, 0)}, {})), InvalidArgument);
  CHECK_THROWS_AS(Pattern(ElementSet({at(0, 0)}, {}), ElementSet({at(0, 0)}, {})), InvalidArgument);
}

TEST_CASE("missing north neighbour on the square lattice") {
  Pattern p = missing_north_neighbor(*hypercubic(2));
  CHECK(p.p1 == ElementSet({at(0, 0)}, {}));
  CHECK(p.p2 == ElementSet({at(0, 1)}, {}));
  Cluster column = Cluster::from_sites(hypercubic(2), ClusterClass::kSiteAnimal, {at(0, 0), at(0, 1), at(0, 2)});
  CHECK(occurrences(column, p) == std::vector<Cell>{make_cell({0, 2})});
  CHECK(occurs_at(column, p, make_cell({0, 2})));
  CHECK_FALSE(occurs_at(column, p, make_cell({0, 1})));
}

TEST_CASE("occurrences agree with the brute-force scan") {
  for (const char* name : {"z2", "tri", "kagome"}) {
    LatticePtr L = builtin_lattice(name);
    std::vector<Pattern> patterns = {missing_north_neighbor(*L), single_site_pattern(0)};
    for (ClusterClass cls : {ClusterClass::kSiteAnimal, ClusterClass::kBondAnimal}) {
      UVPair uv = builtin_uv(L, cls, WeightModel::unit());
      patterns.push_back(uv.u);
      patterns.push_back(uv.v);
      EnumTask t{L, cls, SizeMeasure::kSites, 40};
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Cluster g = random_cluster(t, 40, seed);
        for (const Pattern& p : patterns) CHECK(occurrences(g, p) == testing::brute_occurrences(g, p));
      }
      std::mt19937_64 rng(3);
      Cluster g = grow_cluster(Cluster(L, cls, uv.u.p1), SizeMeasure::kSites, 60, rng, uv.u.p2);
      CHECK(occurrences(g, uv.u) == testing::brute_occurrences(g, uv.u));
      CHECK_FALSE(occurrences(g, uv.u).empty());
    }
  }
}

TEST_CASE("builtin U/V pair on the square lattice") {
  LatticePtr z2 = hypercubic(2);
  for (ClusterClass cls : {ClusterClass::kSiteAnimal, ClusterClass::kBondAnimal, ClusterClass::kBondTree}) {
    UVPair uv = builtin_uv(z2, cls, WeightModel::collapse(2, mpq_class(1, 2)));
    INFO(class_name(cls));
    CHECK_NOTHROW(check_uv_pair(uv));
    CHECK(uv.u.p1.sites.size() == 17);
    CHECK(uv.v.p1.sites.size() == 18);
    CHECK(set_union(uv.u.p1, uv.u.p2).sites.size() == 25);
    CHECK(uv.theta == Scalar(mpq_class(1, 4)));
    CHECK(uv.applies_to(cls));
    CHECK(validate(Cluster(z2, cls, uv.u.p1)));
    CHECK(validate(Cluster(z2, cls, uv.v.p1)));
  }
  CHECK(builtin_uv(z2, ClusterClass::kSiteAnimal, WeightModel::unit()).theta == Scalar(1L));
}

TEST_CASE("user pairs are checked") {
  UVPair uv;
  uv.u = Pattern(ElementSet({at(0, 0)}, {}), ElementSet({at(1, 0)}, {}));
  uv.v = Pattern(ElementSet({at(0, 0), at(1, 0)}, {}), ElementSet{});
  CHECK_NOTHROW(check_uv_pair(uv));
  uv.v = Pattern(ElementSet({at(0, 0), at(0, 1)}, {}), ElementSet{});
  CHECK_THROWS_AS(check_uv_pair(uv), InvalidArgument);
  uv.v = Pattern(ElementSet({at(0, 0), at(1, 0)}, {}), ElementSet{});
  uv.theta = 0L;
  CHECK_THROWS_AS(check_uv_pair(uv), InvalidArgument);
}

TEST_CASE("flip needs an occurrence") {
  LatticePtr z2 = hypercubic(2);
  UVPair uv = builtin_uv(z2, ClusterClass::kSiteAnimal, WeightModel::unit());
  Cluster g(z2, ClusterClass::kSiteAnimal, uv.u.p1);
  CHECK_THROWS_AS(flip(g, make_cell({1, 0}), uv, FlipDirection::kUToV), InvalidArgument);
  Cluster h = flip(g, Cell{}, uv, FlipDirection::kUToV);
  CHECK(h == Cluster(z2, ClusterClass::kSiteAnimal, uv.v.p1));
}

TEST_CASE("flip properties on other lattices") {
  for (const char* name : {"tri", "z3", "kagome"}) {
    LatticePtr L = builtin_lattice(name);
    for (ClusterClass cls : {ClusterClass::kSiteAnimal, ClusterClass::kBondAnimal, ClusterClass::kBondTree}) {
      auto run = testing::flip_properties(L, cls, WeightModel::collapse(3, mpq_class(2, 5)), 40, 80, 17);
      INFO(name << " " << class_name(cls) << " " << (run.findings.empty() ? "" : run.findings.front()));
      CHECK(run.findings.empty());
      CHECK(run.checks >= 40);
    }
  }
}

TEST_CASE("insert properties on other lattices") {
  for (const char* name : {"tri", "z3", "kagome", "hex"}) {
    LatticePtr L = builtin_lattice(name);
    for (ClusterClass cls : {ClusterClass::kSiteAnimal, ClusterClass::kBondAnimal, ClusterClass::kBondTree}) {
      auto run = testing::insert_properties(L, cls, 60, 40, 23);
      INFO(name << " " << class_name(cls) << " " << (run.findings.empty() ? "" : run.findings.front()));
      CHECK(run.findings.empty());
    }
  }
}

TEST_CASE("insert rejects sites outside the cluster") {
  LatticePtr z2 = hypercubic(2);
  TransformSpec spec = builtin_transform(z2, ClusterClass::kSiteAnimal);
  Cluster g = Cluster::from_sites(z2, ClusterClass::kSiteAnimal, {at(0, 0)});
  CHECK_THROWS_AS(insert_pattern(g, at(4, 4), spec), InvalidArgument);
  InsertResult r = insert_pattern(g, at(0, 0), spec);
  CHECK(occurs_at(r.cluster, spec.pattern, r.shift));
  CHECK(spec.kappa > 0);
}

TEST_CASE("spanning completion") {
  LatticePtr z2 = hypercubic(2);
  Cluster host = Cluster::from_sites(z2, ClusterClass::kBondAnimal, {at(0, 0), at(1, 0), at(0, 1), at(1, 1)});
  Cluster tree = spanning_completion(ElementSet{}, host);
  CHECK(tree.n_bonds() == 3);
  CHECK(validate(tree.with_class(ClusterClass::kBondTree)));
  ElementSet cycle({}, host.bonds());
  CHECK_THROWS_AS(spanning_completion(cycle, host), InvalidArgument);

  ElementSet keep({}, {BondRef::between(at(0, 1), at(1, 1))});
  Cluster with = spanning_completion(keep, host);
  CHECK(with.contains(BondRef::between(at(0, 1), at(1, 1))));

  LatticePtr z2d = z2->with_direction({1, 1});
  Cluster dhost = Cluster::from_sites(z2d, ClusterClass::kDirectedBondAnimal, host.sites());
  Cluster dtree = spanning_completion(ElementSet{}, dhost);
  CHECK(validate(dtree.with_class(ClusterClass::kDirectedBondTree)));
}

TEST_CASE("pattern histograms and tail sums") {
  LatticePtr z2 = hypercubic(2);
  EnumTask t{z2, ClusterClass::kBondAnimal, SizeMeasure::kSites, 6};
  Pattern p = missing_north_neighbor(*z2);
  auto hist = pattern_histograms(t, {p});
  auto counts = count_clusters(t);
  for (int n = 1; n <= 6; ++n) {
    std::uint64_t total = 0;
    std::uint64_t at_most_one = 0;
    for (const auto& [k, c] : hist[n]) {
      total += c;
      CHECK(k.occurrences[0] >= 1);
      if (k.occurrences[0] <= 1) at_most_one += c;
    }
    CHECK(total == counts[n]);
    std::uint64_t brute = 0;
    enumerate_clusters(t, n, [&](const Cluster& g) { brute += testing::brute_occurrences(g, p).size() <= 1 ? 1 : 0; });
    CHECK(at_most_one == brute);
    CHECK(tail_sum(t, p, 1, WeightModel::unit(), n) == Scalar(mpq_class(std::to_string(brute))));
    CHECK(tail_sum(t, p, 0, WeightModel::unit(), n).is_zero());
  }
}

TEST_CASE("full occupancy table below the size of U") {
  LatticePtr z2 = hypercubic(2);
  EnumTask t{z2, ClusterClass::kSiteAnimal, SizeMeasure::kSites, 8};
  UVPair uv = builtin_uv(z2, t.cls, WeightModel::unit());
  OccupancyTable table = occupancy_table(t, uv, WeightModel::unit(), 1, 8);
  auto counts = count_clusters(t);
  for (const auto& [k, v] : table.entries) {
    CHECK(k.a == 0);
    CHECK(k.b == 0);
    CHECK(v == Scalar(mpq_class(std::to_string(counts[k.n]))));
  }
  CHECK(table.entries.size() == 8);
  for (const auto& r : verify_flip_identity(table, uv.theta, 1, 8)) CHECK(r.residual.is_zero());
}

TEST_CASE("smallest window holds exactly U and V") {
  LatticePtr z2 = hypercubic(2);
  EnumTask t{z2, ClusterClass::kSiteAnimal, SizeMeasure::kSites, 25};
  WeightModel w = WeightModel::collapse(2, mpq_class(1, 2));
  UVPair uv = builtin_uv(z2, t.cls, w);
  OccupancyTable table = window_occupancy_table(t, uv, w, square_window(-2, 2), 1, 25);
  REQUIRE(table.entries.size() == 2);
  CHECK(table.at(17, 1, 0) == weight(Cluster(z2, t.cls, uv.u.p1), w));
  CHECK(table.at(18, 0, 1) == weight(Cluster(z2, t.cls, uv.v.p1), w));
  auto res = verify_flip_identity(table, uv.theta, 1, 25);
  REQUIRE(res.size() == 1);
  CHECK(res[0].residual.is_zero());
}

TEST_CASE("window identity on a 6x6 window, both entry points") {
  LatticePtr z2 = hypercubic(2);
  EnumTask t{z2, ClusterClass::kSiteAnimal, SizeMeasure::kSites, 36};
  WeightModel w = WeightModel::collapse(2, mpq_class(1, 2));
  UVPair uv = builtin_uv(z2, t.cls, w);
  Window win = square_window(-2, 3);
  OccupancyTable table = window_occupancy_table(t, uv, w, win, 1, 36);
  auto res = verify_flip_identity(table, uv.theta, 1, 36);
  CHECK(res.size() == 12);
  for (const auto& r : res) CHECK(r.residual.is_zero());

  OccupancyTable at18 = window_occupancy_table(t, uv, w, win, 18, 18);
  OccupancyTable at19 = window_occupancy_table(t, uv, w, win, 19, 19);
  auto split = verify_flip_identity(at18, at19, uv.theta, 18);
  CHECK_FALSE(split.empty());
  for (const auto& r : split) CHECK(r.residual.is_zero());

  OccupancyTable other = window_occupancy_table(t, uv, WeightModel::unit(), win, 19, 19);
  CHECK_THROWS_AS(verify_flip_identity(at18, other, uv.theta, 18), InvalidArgument);
}

TEST_CASE("a wrong theta leaves residuals") {
  LatticePtr z2 = hypercubic(2);
  EnumTask t{z2, ClusterClass::kSiteAnimal, SizeMeasure::kSites, 25};
  UVPair uv = builtin_uv(z2, t.cls, WeightModel::unit());
  OccupancyTable table = window_occupancy_table(t, uv, WeightModel::unit(), square_window(-2, 2), 1, 25);
  auto res = verify_flip_identity(table, Scalar(2L), 1, 25);
  REQUIRE(res.size() == 1);
  CHECK_FALSE(res[0].residual.is_zero());
  CHECK_THROWS_AS(verify_flip_identity(table, Scalar(0L), 1, 25), InvalidArgument);
}

TEST_CASE("window ensembles reject bond classes; small windows are empty") {
  LatticePtr z2 = hypercubic(2);
  UVPair uv = builtin_uv(z2, ClusterClass::kBondAnimal, WeightModel::unit());
  EnumTask t{z2, ClusterClass::kBondAnimal, SizeMeasure::kSites, 25};
  CHECK_THROWS_AS(window_occupancy_table(t, uv, WeightModel::unit(), square_window(-2, 2), 1, 25), InvalidArgument);
  EnumTask s{z2, ClusterClass::kSiteAnimal, SizeMeasure::kSites, 25};
  UVPair suv = builtin_uv(z2, s.cls, WeightModel::unit());
  CHECK(window_occupancy_table(s, suv, WeightModel::unit(), square_window(-1, 1), 1, 9).entries.empty());
}
