#include <algorithm>
#include <cstdlib>

#include "brute.hpp"
#include "clusterlab/enumerate.hpp"
#include "clusterlab/errors.hpp"
#include "doctest.h"
#include "known_counts.hpp"

using namespace clusterlab;

namespace {

const ClusterClass kAll[] = {ClusterClass::kBondAnimal,         ClusterClass::kSiteAnimal,
                             ClusterClass::kBondTree,           ClusterClass::kDirectedBondAnimal,
                             ClusterClass::kDirectedSiteAnimal, ClusterClass::kDirectedBondTree};

EnumTask task_for(const char* lattice, ClusterClass cls, SizeMeasure m, int n) {
  LatticePtr L = builtin_lattice(lattice);
  if (is_directed(cls)) {
    L = L->with_direction(std::string(lattice) == "kagome" ? RatVector{1, 3} : default_direction(*L));
  }
  return EnumTask{L, cls, m, n};
}

void check_prefix(const std::vector<std::uint64_t>& counts, const std::vector<std::uint64_t>& known) {
  for (std::size_t k = 1; k < counts.size() && k <= known.size(); ++k) {
    INFO("n=" << k);
    CHECK(counts[k] == known[k - 1]);
  }
}

}  // namespace

TEST_CASE("published counts") {
  check_prefix(count_clusters(task_for("z2", ClusterClass::kSiteAnimal, SizeMeasure::kSites, 12)),
               testing::kSquareSiteAnimals);
  check_prefix(count_clusters(task_for("z2", ClusterClass::kBondAnimal, SizeMeasure::kBonds, 8)),
               testing::kSquareBondAnimalsByBonds);
  check_prefix(count_clusters(task_for("z2", ClusterClass::kDirectedSiteAnimal, SizeMeasure::kSites, 9)),
               testing::kSquareDirectedSiteAnimals);
  check_prefix(count_clusters(task_for("tri", ClusterClass::kSiteAnimal, SizeMeasure::kSites, 8)),
               testing::kTriangularSiteAnimals);
  check_prefix(count_clusters(task_for("z3", ClusterClass::kSiteAnimal, SizeMeasure::kSites, 6)),
               testing::kCubicSiteAnimals);
  auto ba = count_clusters(task_for("z2", ClusterClass::kBondAnimal, SizeMeasure::kSites, 4));
  CHECK(ba[4] == testing::kSquareBondAnimalsBySites4);
  auto bt = count_clusters(task_for("z2", ClusterClass::kBondTree, SizeMeasure::kSites, 4));
  CHECK(bt[4] == testing::kSquareBondTreesBySites4);
}

TEST_CASE("search agrees with brute-force counts by sites") {
  for (const char* lattice : {"z2", "tri", "hex", "kagome"}) {
    for (ClusterClass cls : kAll) {
      const int n = std::string(lattice) == "z2" ? 6 : 5;
      EnumTask t = task_for(lattice, cls, SizeMeasure::kSites, n);
      INFO(lattice << " " << class_name(cls));
      CHECK(count_clusters(t) == [&] {
        auto v = testing::brute_counts_by_sites(t.lattice, cls, n);
        v[0] = 0;
        return v;
      }());
    }
  }
}

TEST_CASE("search agrees with the oracle key by key") {
  for (const char* lattice : {"z2", "tri", "kagome", "dead_end"}) {
    for (ClusterClass cls : kAll) {
      for (SizeMeasure m : {SizeMeasure::kSites, SizeMeasure::kBonds}) {
        if (is_site_class(cls) && m == SizeMeasure::kBonds) continue;
        EnumTask t = task_for(lattice, cls, m, 4);
        for (int n = 1; n <= 4; ++n) {
          std::vector<std::string> keys;
          enumerate_clusters(t, n, [&](const Cluster& g) {
            CHECK(validate(g));
            CHECK(g.size(m) == static_cast<std::size_t>(n));
            keys.push_back(canonical_key(g));
          });
          std::sort(keys.begin(), keys.end());
          INFO(lattice << " " << class_name(cls) << " by " << measure_name(m) << " n=" << n);
          CHECK(keys == oracle_enumerate(t, n));
        }
      }
    }
  }
}

TEST_CASE("thread count does not change output or order") {
  EnumTask t = task_for("z2", ClusterClass::kBondAnimal, SizeMeasure::kSites, 7);
  std::vector<std::string> one, four;
  EnumOptions o1, o4;
  o4.threads = 4;
  o4.split_depth = 3;
  enumerate_clusters(t, 7, [&](const Cluster& g) { one.push_back(canonical_key(g)); }, o1);
  enumerate_clusters(t, 7, [&](const Cluster& g) { four.push_back(canonical_key(g)); }, o4);
  CHECK(one == four);
  CHECK(count_clusters(t, o1) == count_clusters(t, o4));
  CHECK(statistics_histograms(t, o1) == statistics_histograms(t, o4));
}

TEST_CASE("histogram totals match counts") {
  EnumTask t = task_for("tri", ClusterClass::kBondTree, SizeMeasure::kSites, 6);
  auto counts = count_clusters(t);
  auto hist = statistics_histograms(t);
  for (int n = 1; n <= 6; ++n) {
    std::uint64_t total = 0;
    for (const auto& [k, c] : hist[n]) {
      CHECK(k.sites == n);
      CHECK(k.bonds == n - 1);
      total += c;
    }
    CHECK(total == counts[n]);
  }
}

TEST_CASE("node budget raises a resource error") {
  EnumTask t = task_for("z2", ClusterClass::kSiteAnimal, SizeMeasure::kSites, 40);
  EnumOptions o;
  o.node_budget = 10000;
  CHECK_THROWS_AS(count_clusters(t, o), ResourceLimitError);
  o.threads = 3;
  CHECK_THROWS_AS(count_clusters(t, o), ResourceLimitError);
}

TEST_CASE("oracle state cap raises a resource error") {
  EnumTask t = task_for("z2", ClusterClass::kSiteAnimal, SizeMeasure::kSites, 8);
  CHECK_THROWS_AS(oracle_enumerate(t, 8, 100), ResourceLimitError);
}

TEST_CASE("malformed tasks are rejected") {
  CHECK_THROWS_AS(check_task(EnumTask{hypercubic(2), ClusterClass::kDirectedSiteAnimal, SizeMeasure::kSites, 3}),
                  InvalidArgument);
  CHECK_THROWS_AS(check_task(EnumTask{hypercubic(2), ClusterClass::kSiteAnimal, SizeMeasure::kSites, 0}),
                  InvalidArgument);
}

TEST_CASE("random clusters are valid, canonical and reproducible") {
  for (ClusterClass cls : kAll) {
    EnumTask t = task_for("tri", cls, SizeMeasure::kSites, 30);
    Cluster a = random_cluster(t, 30, 99);
    CHECK(validate(a));
    CHECK(a.canonical());
    CHECK(a.n_sites() == 30);
    CHECK(random_cluster(t, 30, 99) == a);
  }
}
