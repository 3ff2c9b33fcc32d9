#include "properties.hpp"

#include <algorithm>
#include <random>

#include "clusterlab/enumerate.hpp"
#include "clusterlab/errors.hpp"

namespace clusterlab::testing {

namespace {

std::string describe(const Cluster& g) { return to_text(g); }

bool bond_touches(const BondRef& b, const ElementSet& sites) { return sites.contains(b.a) || sites.contains(b.b); }

}  // namespace

PropertyRun flip_properties(LatticePtr lattice, ClusterClass cls, const WeightModel& w, int clusters, int n_max,
                            std::uint64_t seed) {
  PropertyRun run;
  const UVPair uv = builtin_uv(lattice, cls, w);
  const Cluster start(lattice, cls, uv.u.p1);
  const int n_min = static_cast<int>(start.n_sites());
  const int n_hi = std::max(n_min, n_max);
  std::mt19937_64 rng(seed);
  for (int c = 0; c < clusters; ++c) {
    const int n = std::uniform_int_distribution<int>(n_min, n_hi)(rng);
    Cluster g = grow_cluster(start, SizeMeasure::kSites, n, rng, uv.u.p2);
    ++run.cases;
    const auto u_occ = occurrences(g, uv.u);
    const auto v_occ = occurrences(g, uv.v);
    if (u_occ.empty()) {
      run.findings.push_back("grown cluster lost its U occurrence: " + describe(g));
      continue;
    }
    const Scalar wg = weight(g, w);
    for (const Cell& x : u_occ) {
      ++run.checks;
      Cluster h = g;
      try {
        h = flip(g, x, uv, FlipDirection::kUToV);
      } catch (const AxiomViolation& e) {
        run.findings.push_back(std::string("flip invalid: ") + e.what());
        continue;
      }
      if (auto rep = validate(h); !rep) run.findings.push_back("flip result invalid: " + rep.to_string());
      if (h.n_sites() != g.n_sites() + 1) run.findings.push_back("flip did not add one site: " + describe(g));
      if (!(weight(h, w) == wg * uv.theta)) run.findings.push_back("flip weight ratio is not theta: " + describe(g));
      if (occurrences(h, uv.u).size() + 1 != u_occ.size()) run.findings.push_back("U count did not drop by one: " + describe(g));
      if (occurrences(h, uv.v).size() != v_occ.size() + 1) run.findings.push_back("V count did not rise by one: " + describe(g));
      if (!occurs_at(h, uv.v, x)) run.findings.push_back("no V occurrence at the flip cell: " + describe(g));
      try {
        if (!(flip(h, x, uv, FlipDirection::kVToU) == g)) run.findings.push_back("double flip differs: " + describe(g));
      } catch (const std::exception& e) {
        run.findings.push_back(std::string("reverse flip failed: ") + e.what());
      }
    }
  }
  return run;
}

PropertyRun insert_properties(LatticePtr lattice, ClusterClass cls, int pairs, int n_max, std::uint64_t seed) {
  PropertyRun run;
  if (is_directed(cls) && !lattice->directed()) lattice = lattice->with_direction(default_direction(*lattice));
  const TransformSpec spec = builtin_transform(lattice, cls);
  const EnumTask task{lattice, cls, SizeMeasure::kSites, n_max};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < pairs; ++c) {
    const int n = std::uniform_int_distribution<int>(1, n_max)(rng);
    const Cluster g = random_cluster(task, n, rng());
    const SiteRef y = g.sites()[std::uniform_int_distribution<std::size_t>(0, g.n_sites() - 1)(rng)];
    ++run.cases;
    InsertResult r{g, Cell{}};
    try {
      r = insert_pattern(g, y, spec);
    } catch (const std::exception& e) {
      run.findings.push_back(std::string("insert failed: ") + e.what() + " on " + describe(g));
      continue;
    }
    run.checks += 4;
    const Cluster& h = r.cluster;
    if (auto rep = validate(h); !rep) run.findings.push_back("insert result invalid: " + rep.to_string() + " on " + describe(g));
    if (!occurs_at(h, spec.pattern, r.shift)) run.findings.push_back("pattern missing at t: " + describe(g));
    const ElementSet region = spec.variants[y.offset].frame.translated(r.shift);
    if (!region.contains(y)) run.findings.push_back("y outside D + t: " + describe(g));
    bool same_outside = true;
    for (const auto& s : g.sites()) same_outside = same_outside && (region.contains(s) || h.contains(s));
    for (const auto& s : h.sites()) same_outside = same_outside && (region.contains(s) || g.contains(s));
    for (const auto& b : g.bonds()) same_outside = same_outside && (region.contains(b) || bond_touches(b, region) || h.contains(b));
    for (const auto& b : h.bonds()) same_outside = same_outside && (region.contains(b) || bond_touches(b, region) || g.contains(b));
    if (!same_outside) run.findings.push_back("cluster changed outside D + t: " + describe(g));
    const long delta = static_cast<long>(h.n_sites()) - static_cast<long>(g.n_sites());
    if (delta > spec.kappa || -delta > spec.kappa) run.findings.push_back("size change exceeds kappa: " + describe(g));
  }
  return run;
}

}  // namespace clusterlab::testing
