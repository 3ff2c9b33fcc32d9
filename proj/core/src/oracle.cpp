#include <algorithm>
#include <unordered_set>

#include "clusterlab/enumerate.hpp"
#include "clusterlab/errors.hpp"

namespace clusterlab {

namespace {

std::vector<Cluster> one_step(const Cluster& g) {
  const LatticeSpec& L = g.lattice();
  std::vector<Cluster> out;
  const bool site_class = is_site_class(g.cluster_class());
  for (const auto& s : g.sites()) {
    for (const auto& [far, bond] : L.neighbors(s)) {
      if (site_class) {
        if (g.contains(far)) continue;
        std::vector<SiteRef> sites = g.sites();
        sites.push_back(far);
        std::sort(sites.begin(), sites.end());
        out.push_back(Cluster::from_sites(g.lattice_ptr(), g.cluster_class(), std::move(sites)));
      } else {
        if (g.contains(bond)) continue;
        ElementSet e = g.elements();
        e.insert(bond);
        e.insert(far);
        out.emplace_back(g.lattice_ptr(), g.cluster_class(), std::move(e));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> oracle_enumerate(const EnumTask& task, int n, std::size_t state_cap) {
  EnumTask t = task;
  t.n_max = n;
  check_task(t);
  std::unordered_set<std::string> accepted;
  std::unordered_set<std::string> rejected;
  std::vector<std::string> frontier;
  std::vector<std::string> result;

  auto consider = [&](const Cluster& raw, std::vector<std::string>& next) {
    if (static_cast<int>(raw.size(task.measure)) > n) return;
    Cluster g = canonicalize(raw).cluster;
    std::string key = canonical_key(g);
    if (accepted.count(key) || rejected.count(key)) return;
    if (accepted.size() + rejected.size() >= state_cap) {
      throw ResourceLimitError("oracle state cap of " + std::to_string(state_cap) + " exceeded",
                               accepted.size());
    }
    if (!validate(g)) {
      rejected.insert(std::move(key));
      return;
    }
    if (static_cast<int>(g.size(task.measure)) == n) result.push_back(key);
    accepted.insert(key);
    next.push_back(std::move(key));
  };

  for (int i = 0; i < task.lattice->num_offsets(); ++i) {
    Cluster seed(task.lattice, task.cls, std::vector<SiteRef>{SiteRef{Cell{}, i}}, {});
    consider(seed, frontier);
  }
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (const auto& key : frontier) {
      Cluster g = decode_key(task.lattice, key);
      for (const auto& h : one_step(g)) consider(h, next);
    }
    frontier = std::move(next);
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace clusterlab
