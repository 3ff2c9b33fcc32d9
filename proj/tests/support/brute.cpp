#include "brute.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace clusterlab::testing {

namespace {

using SiteSet = std::vector<SiteRef>;

SiteSet normalized(SiteSet s) {
  std::sort(s.begin(), s.end());
  const Cell c = s.front().cell;
  for (auto& x : s) x.cell = x.cell - c;
  return s;
}

std::vector<SiteSet> fixed_site_animals(const LatticeSpec& L, int n_max, std::vector<std::vector<SiteSet>>& by_size) {
  by_size.assign(n_max + 1, {});
  std::set<SiteSet> layer;
  for (int i = 0; i < L.num_offsets(); ++i) layer.insert({SiteRef{Cell{}, i}});
  for (int k = 1; k <= n_max; ++k) {
    by_size[k].assign(layer.begin(), layer.end());
    if (k == n_max) break;
    std::set<SiteSet> next;
    for (const auto& s : layer) {
      for (const auto& x : s) {
        for (const auto& [nb, bond] : L.neighbors(x)) {
          (void)bond;
          if (std::find(s.begin(), s.end(), nb) != s.end()) continue;
          SiteSet t = s;
          t.push_back(nb);
          next.insert(normalized(t));
        }
      }
    }
    layer = std::move(next);
  }
  return by_size[n_max];
}

int find(std::vector<int>& parent, int a) {
  while (parent[a] != a) a = parent[a] = parent[parent[a]];
  return a;
}

bool spans(const SiteSet& sites, const std::vector<BondRef>& bonds, std::uint32_t mask, int& used) {
  std::vector<int> parent(sites.size());
  std::iota(parent.begin(), parent.end(), 0);
  int components = static_cast<int>(sites.size());
  used = 0;
  for (std::size_t b = 0; b < bonds.size(); ++b) {
    if (!(mask >> b & 1U)) continue;
    ++used;
    int x = static_cast<int>(std::lower_bound(sites.begin(), sites.end(), bonds[b].a) - sites.begin());
    int y = static_cast<int>(std::lower_bound(sites.begin(), sites.end(), bonds[b].b) - sites.begin());
    x = find(parent, x);
    y = find(parent, y);
    if (x != y) {
      parent[x] = y;
      --components;
    }
  }
  return components == 1;
}

bool directed_ok(const LatticeSpec& L, const SiteSet& sites, const std::vector<BondRef>& bonds, std::uint32_t mask) {
  // Unique lowest site, and every site reachable from it by upward bonds.
  std::vector<std::int64_t> h;
  for (const auto& s : sites) h.push_back(L.height(s));
  auto lo = std::min_element(h.begin(), h.end());
  if (std::count(h.begin(), h.end(), *lo) != 1) return false;
  std::vector<char> seen(sites.size(), 0);
  std::vector<int> stack = {static_cast<int>(lo - h.begin())};
  seen[stack.back()] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (std::size_t b = 0; b < bonds.size(); ++b) {
      if (!(mask >> b & 1U)) continue;
      int x = static_cast<int>(std::lower_bound(sites.begin(), sites.end(), bonds[b].a) - sites.begin());
      int y = static_cast<int>(std::lower_bound(sites.begin(), sites.end(), bonds[b].b) - sites.begin());
      if (h[x] > h[y]) std::swap(x, y);
      if (x == u && h[y] > h[x] && !seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

}  // namespace

std::vector<std::uint64_t> brute_counts_by_sites(LatticePtr lattice, ClusterClass cls, int n_max) {
  const LatticeSpec& L = *lattice;
  std::vector<std::vector<SiteSet>> by_size;
  fixed_site_animals(L, n_max, by_size);
  std::vector<std::uint64_t> counts(n_max + 1, 0);
  for (int k = 1; k <= n_max; ++k) {
    for (const auto& sites : by_size[k]) {
      std::vector<BondRef> bonds = induced_bonds(L, sites);
      const std::uint32_t all = bonds.size() >= 32 ? 0xffffffffU : (1U << bonds.size()) - 1;
      if (is_site_class(cls)) {
        int used = 0;
        if (!is_directed(cls) || directed_ok(L, sites, bonds, all)) counts[k] += spans(sites, bonds, all, used) ? 1 : 0;
        continue;
      }
      for (std::uint32_t mask = 0;; ++mask) {
        int used = 0;
        if (spans(sites, bonds, mask, used)) {
          bool ok = !is_tree(cls) || used == k - 1;
          if (ok && is_directed(cls)) ok = directed_ok(L, sites, bonds, mask);
          if (ok) ++counts[k];
        }
        if (mask == all) break;
      }
    }
  }
  return counts;
}

std::vector<Cell> brute_occurrences(const Cluster& g, const Pattern& p) {
  std::set<Cell> candidates;
  const SiteRef probe = !p.p1.sites.empty() ? p.p1.sites.front() : p.p1.bonds.front().a;
  for (const auto& s : g.sites()) {
    if (s.offset == probe.offset) candidates.insert(s.cell - probe.cell);
  }
  std::vector<Cell> out;
  for (const Cell& x : candidates) {
    bool ok = true;
    for (const auto& s : p.p1.sites) ok = ok && g.contains(s + x);
    for (const auto& b : p.p1.bonds) ok = ok && g.contains(b + x);
    for (const auto& s : p.p2.sites) ok = ok && !g.contains(s + x);
    for (const auto& b : p.p2.bonds) ok = ok && !g.contains(b + x);
    if (ok) out.push_back(x);
  }
  return out;
}

LocalStatistics brute_statistics(const Cluster& g) {
  const LatticeSpec& L = g.lattice();
  LocalStatistics st;
  st.n_sites = static_cast<std::int64_t>(g.n_sites());
  st.n_bonds = static_cast<std::int64_t>(g.n_bonds());
  for (const auto& s : g.sites()) {
    for (const auto& [nb, bond] : L.neighbors(s)) {
      if (!g.contains(nb)) {
        ++st.solv;
      } else if (!g.contains(bond)) {
        ++st.mono;
      }
    }
  }
  st.mono /= 2;
  st.cyc = st.n_bonds - st.n_sites + 1;
  return st;
}

}  // namespace clusterlab::testing
