#pragma once

#include <unordered_map>
#include <vector>

#include "clusterlab/cluster.hpp"

namespace clusterlab::detail {

/// The finite part of the lattice that clusters rooted at one site can reach,
/// with local integer indices. Site 0 is the root.
struct Region {
  struct Link {
    int site;
    int bond;
    bool up;  // height increases from the owning site to `site`
  };

  SiteRef root;
  std::vector<SiteRef> sites;
  std::vector<BondRef> bonds;
  std::vector<std::pair<int, int>> bond_ends;  // (tail, head) when directed, else (lower, higher)
  std::vector<std::vector<Link>> links;        // lattice neighbours inside the region
  std::vector<int> degree;                     // full lattice degree
  std::unordered_map<SiteRef, int, SiteHash> site_index;
  std::unordered_map<BondRef, int, BondHash> bond_index;

  int find(const SiteRef& s) const {
    auto it = site_index.find(s);
    return it == site_index.end() ? -1 : it->second;
  }
  int find(const BondRef& b) const {
    auto it = bond_index.find(b);
    return it == bond_index.end() ? -1 : it->second;
  }
};

/// Sites reachable from (0, root_offset) in at most `hops` steps, moving only
/// to lexicographically larger sites than the root (undirected) or only
/// upwards (directed).
Region build_region(const LatticeSpec& lattice, int root_offset, bool directed, int hops);

/// Hop radius sufficient for clusters of size n.
int region_hops(ClusterClass cls, SizeMeasure measure, int n);

}  // namespace clusterlab::detail
