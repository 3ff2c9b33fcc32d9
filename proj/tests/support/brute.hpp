#pragma once

#include <cstdint>
#include <vector>

#include "clusterlab/cluster.hpp"
#include "clusterlab/pattern.hpp"

namespace clusterlab::testing {

/// Counts by sites, computed without the search engine or the oracle: every
/// fixed site animal is listed by naive growth with set deduplication, then
/// bond subsets of its induced graph are checked one by one.
/// counts[k] for k = 1..n_max (index 0 unused).
std::vector<std::uint64_t> brute_counts_by_sites(LatticePtr lattice, ClusterClass cls, int n_max);

/// Occurrence cells found by scanning candidate translates element by element.
std::vector<Cell> brute_occurrences(const Cluster& g, const Pattern& p);

/// Bonds, contacts and perimeter counted from the neighbour lists.
LocalStatistics brute_statistics(const Cluster& g);

}  // namespace clusterlab::testing
