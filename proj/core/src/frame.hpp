#pragma once

#include <optional>
#include <vector>

#include "clusterlab/cluster.hpp"

namespace clusterlab::detail {

/// Sup-norm frame around a ray leaving a_1.
struct Frame {
  SiteRef x0;
  std::vector<SiteRef> ray;  // x1, x2, ... until well past the frame
  BondRef first_bond;        // between x0 and x1
  std::vector<SiteRef> nbrs; // neighbours of x0 other than x1
  std::int64_t m0 = 0;
  std::int64_t m1 = 0;
  ElementSet frame;          // D
  ElementSet boundary;       // shell sites and bonds between them
  ElementSet template_set;   // ray inside D plus the shell
  std::optional<SiteRef> low;   // unique lowest shell site (directed)
  std::optional<SiteRef> high;  // unique highest shell site (directed)
};

Frame build_frame(const LatticeSpec& lattice, ClusterClass cls);

/// All lattice bonds between listed sites, merged into e.
void add_induced_bonds(const LatticeSpec& lattice, ElementSet& e);

}  // namespace clusterlab::detail
