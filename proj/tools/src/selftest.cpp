#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <string>
#include <vector>

#include "cli.hpp"
#include "clusterlab/enumerate.hpp"
#include "clusterlab/errors.hpp"
#include "clusterlab/pattern.hpp"
#include "clusterlab/percolation.hpp"
#include "clusterlab/weights.hpp"

namespace clusterlab::cli {

namespace {

struct SuiteOutcome {
  bool ok = true;
  std::uint64_t checks = 0;
  std::string detail;
};

SuiteOutcome oracle_suite(int threads) {
  SuiteOutcome r;
  LatticePtr z2 = hypercubic(2);
  LatticePtr z2d = z2->with_direction(default_direction(*z2));
  EnumOptions o;
  o.threads = threads;
  const ClusterClass classes[] = {ClusterClass::kBondAnimal,         ClusterClass::kSiteAnimal,
                                  ClusterClass::kBondTree,           ClusterClass::kDirectedBondAnimal,
                                  ClusterClass::kDirectedSiteAnimal, ClusterClass::kDirectedBondTree};
  for (ClusterClass cls : classes) {
    for (SizeMeasure m : {SizeMeasure::kSites, SizeMeasure::kBonds}) {
      if (is_site_class(cls) && m == SizeMeasure::kBonds) continue;
      const int n_max = m == SizeMeasure::kSites ? 5 : 4;
      EnumTask t{is_directed(cls) ? z2d : z2, cls, m, n_max};
      for (int n = 1; n <= n_max; ++n) {
        std::vector<std::string> keys;
        enumerate_clusters(t, n, [&](const Cluster& g) { keys.push_back(canonical_key(g)); }, o);
        std::sort(keys.begin(), keys.end());
        ++r.checks;
        if (keys != oracle_enumerate(t, n)) {
          r.ok = false;
          r.detail = std::string(class_name(cls)) + " by " + std::string(measure_name(m)) + " n=" + std::to_string(n);
          return r;
        }
      }
    }
  }
  return r;
}

SuiteOutcome euler_suite(int threads) {
  SuiteOutcome r;
  EnumOptions o;
  o.threads = threads;
  for (int d : {2, 3}) {
    for (ClusterClass cls : {ClusterClass::kBondAnimal, ClusterClass::kSiteAnimal, ClusterClass::kBondTree}) {
      EnumTask t{hypercubic(d), cls, SizeMeasure::kSites, d == 2 ? 7 : 5};
      auto hist = statistics_histograms(t, o);
      for (int n = 1; n <= t.n_max; ++n) {
        for (const auto& [k, count] : hist[n]) {
          r.checks += count;
          if (2 * d * k.sites != 2 * k.bonds + 2 * k.mono + k.solv) {
            r.ok = false;
            r.detail = "d=" + std::to_string(d) + " " + std::string(class_name(cls)) + " n=" + std::to_string(n);
            return r;
          }
        }
      }
    }
  }
  return r;
}

SuiteOutcome percolation_suite(bool inject, int threads) {
  SuiteOutcome r;
  PercolationOptions po;
  po.enumeration.threads = threads;
  po.corrupt_weight_table = inject;
  for (const char* p : {"3/10", "1/2", "7/10"}) {
    try {
      auto rows = exact_size_distribution(hypercubic(2), parse_mpq(p), 6, po);
      r.checks += rows.size();
    } catch (const InternalMismatch& e) {
      r.ok = false;
      r.detail = std::string("p=") + p + ": " + e.what();
      return r;
    }
  }
  return r;
}

SuiteOutcome window_suite() {
  SuiteOutcome r;
  EnumTask t{hypercubic(2), ClusterClass::kSiteAnimal, SizeMeasure::kSites, 36};
  for (const WeightModel& w : {WeightModel::unit(), WeightModel::collapse(2, mpq_class(1, 2))}) {
    UVPair uv = builtin_uv(t.lattice, t.cls, w);
    Window win;
    win.lo = make_cell({-2, -2});
    win.hi = make_cell({3, 3});
    OccupancyTable table = window_occupancy_table(t, uv, w, win, 1, 36);
    for (const auto& x : verify_flip_identity(table, uv.theta, 1, 36)) {
      ++r.checks;
      if (!x.residual.is_zero()) {
        r.ok = false;
        r.detail = w.describe() + " n=" + std::to_string(x.n) + " a=" + std::to_string(x.a) + " b=" + std::to_string(x.b);
        return r;
      }
    }
  }
  return r;
}

}  // namespace

int selftest(const SelftestOptions& options, std::ostream& report) {
  struct Suite {
    const char* name;
    std::function<SuiteOutcome()> run;
  };
  const int threads = options.threads;
  const std::vector<Suite> suites = {
      {"oracle-equivalence", [&] { return oracle_suite(threads); }},
      {"euler-identity", [&] { return euler_suite(threads); }},
      {"percolation-forms", [&] { return percolation_suite(options.inject_percolation_fault, threads); }},
      {"window-flip-identity", [] { return window_suite(); }},
  };
  int failed = 0;
  for (const auto& s : suites) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteOutcome r;
    try {
      r = s.run();
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!r.ok) ++failed;
    report << (r.ok ? "PASS " : "FAIL ") << s.name << " checks=" << r.checks << " time=" << std::fixed
           << std::setprecision(3) << secs << "s" << std::defaultfloat;
    if (!r.detail.empty()) report << " detail=\"" << r.detail << "\"";
    report << "\n";
  }
  report << (failed == 0 ? "selftest: all suites passed" : "selftest: " + std::to_string(failed) + " suite(s) failed")
         << "\n";
  return failed;
}

}  // namespace clusterlab::cli
