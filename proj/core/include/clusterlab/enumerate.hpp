#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "clusterlab/cluster.hpp"

namespace clusterlab {

struct EnumTask {
  LatticePtr lattice;
  ClusterClass cls = ClusterClass::kSiteAnimal;
  SizeMeasure measure = SizeMeasure::kSites;
  int n_max = 1;
};

/// Throws InvalidArgument when the task is malformed (directed class on a
/// lattice without direction, n_max < 1).
void check_task(const EnumTask& task);

/// 10^9 expansions, or the value of CLUSTERLAB_BUDGET when set.
std::uint64_t default_node_budget();

struct EnumOptions {
  int threads = 1;
  int split_depth = 2;
  std::uint64_t node_budget = default_node_budget();
};

using ClusterVisitor = std::function<void(const Cluster&)>;

/// Visits every canonical cluster of size n once. Delivery is serialized and
/// in the same order for every thread count. Returns the number visited.
std::uint64_t enumerate_clusters(const EnumTask& task, int n, const ClusterVisitor& visitor,
                                 const EnumOptions& options = {});

/// counts[k] = number of canonical clusters of size k, for k = 0..task.n_max.
std::vector<std::uint64_t> count_clusters(const EnumTask& task, const EnumOptions& options = {});

struct StatKey {
  std::int32_t sites = 0;
  std::int32_t bonds = 0;
  std::int32_t mono = 0;
  std::int32_t solv = 0;

  friend auto operator<=>(const StatKey&, const StatKey&) = default;
  friend bool operator==(const StatKey&, const StatKey&) = default;
};

using StatHistogram = std::map<StatKey, std::uint64_t>;

/// histograms[k] counts canonical clusters of size k by local statistics.
std::vector<StatHistogram> statistics_histograms(const EnumTask& task, const EnumOptions& options = {});

/// Independent breadth-first oracle: grows clusters one element at a time
/// from single sites, canonicalizes, validates and deduplicates by key.
/// Returns the sorted keys of all canonical clusters of size n.
std::vector<std::string> oracle_enumerate(const EnumTask& task, int n, std::size_t state_cap = 20'000'000);

/// Grows `start` at fixed position to size n by random single-element
/// additions that keep the class valid and avoid `forbidden`. Biased, not
/// uniform. Throws ResourceLimitError when the retry budget runs out.
Cluster grow_cluster(const Cluster& start, SizeMeasure measure, int n, std::mt19937_64& rng,
                     const ElementSet& forbidden = {});

/// A valid canonical cluster of size n, deterministic in seed.
Cluster random_cluster(const EnumTask& task, int n, std::uint64_t seed);

}  // namespace clusterlab
