#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clusterlab/pattern.hpp"
#include "clusterlab/weights.hpp"

namespace clusterlab::testing {

struct PropertyRun {
  std::uint64_t cases = 0;
  std::uint64_t checks = 0;
  std::vector<std::string> findings;
};

/// Grows `clusters` random clusters around a U occurrence (sizes from |U1|
/// up to max(|U1|, n_max), measured by sites) and flips every U occurrence.
PropertyRun flip_properties(LatticePtr lattice, ClusterClass cls, const WeightModel& w, int clusters, int n_max,
                            std::uint64_t seed);

/// insert_pattern on `pairs` random (G, y) with sizes 1..n_max.
PropertyRun insert_properties(LatticePtr lattice, ClusterClass cls, int pairs, int n_max, std::uint64_t seed);

}  // namespace clusterlab::testing
