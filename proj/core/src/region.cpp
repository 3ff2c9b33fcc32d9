#include "region.hpp"

#include <algorithm>
#include <deque>

namespace clusterlab::detail {

int region_hops(ClusterClass, SizeMeasure measure, int n) {
  return measure == SizeMeasure::kSites ? n - 1 : n;
}

Region build_region(const LatticeSpec& lattice, int root_offset, bool directed, int hops) {
  Region r;
  r.root = SiteRef{Cell{}, root_offset};
  std::vector<int> dist;
  r.sites.push_back(r.root);
  dist.push_back(0);
  r.site_index.emplace(r.root, 0);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (dist[v] >= hops) continue;
    const SiteRef s = r.sites[v];
    for (const auto& inc : lattice.incidences(s.offset)) {
      SiteRef far{s.cell + inc.delta, inc.other};
      if (directed ? !inc.up : lattice.compare_lex(far, r.root) <= 0) continue;
      if (r.site_index.count(far)) continue;
      int id = static_cast<int>(r.sites.size());
      r.sites.push_back(far);
      dist.push_back(dist[v] + 1);
      r.site_index.emplace(far, id);
      queue.push_back(id);
    }
  }
  const int n = static_cast<int>(r.sites.size());
  r.links.assign(n, {});
  r.degree.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    const SiteRef s = r.sites[v];
    r.degree[v] = lattice.degree(s.offset);
    for (const auto& inc : lattice.incidences(s.offset)) {
      SiteRef far{s.cell + inc.delta, inc.other};
      int w = r.find(far);
      if (w < 0) continue;
      BondRef b = BondRef::between(s, far);
      int id;
      if (auto it = r.bond_index.find(b); it != r.bond_index.end()) {
        id = it->second;
      } else {
        id = static_cast<int>(r.bonds.size());
        r.bonds.push_back(b);
        if (directed) r.bond_ends.emplace_back(inc.up ? v : w, inc.up ? w : v);
        else r.bond_ends.emplace_back(std::min(v, w), std::max(v, w));
        r.bond_index.emplace(b, id);
      }
      r.links[v].push_back(Region::Link{w, id, inc.up});
    }
  }
  return r;
}

}  // namespace clusterlab::detail
