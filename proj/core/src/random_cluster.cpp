#include <algorithm>
#include <unordered_set>

#include "clusterlab/enumerate.hpp"
#include "clusterlab/errors.hpp"

namespace clusterlab {

namespace {

constexpr int kAttemptsPerStep = 4000;

class Grower {
 public:
  Grower(const Cluster& start, SizeMeasure measure, const ElementSet& forbidden)
      : L_(start.lattice()), cls_(start.cluster_class()), measure_(measure), forbidden_(forbidden) {
    for (const auto& s : start.sites()) add_site(s);
    for (const auto& b : start.bonds()) bonds_.insert(b);
  }

  int size() const {
    return static_cast<int>(measure_ == SizeMeasure::kSites ? site_list_.size() : bonds_.size());
  }

  /// One random addition; false when the proposal was rejected.
  bool step(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<std::size_t> pick_site(0, site_list_.size() - 1);
    const SiteRef s = site_list_[pick_site(rng)];
    const auto& inc = L_.incidences(s.offset);
    if (inc.empty()) return false;
    std::uniform_int_distribution<std::size_t> pick_inc(0, inc.size() - 1);
    const Incidence& in = inc[pick_inc(rng)];
    const SiteRef far{s.cell + in.delta, in.other};
    const BondRef bond = BondRef::between(s, far);
    if (is_directed(cls_) && !in.up) return false;
    const bool fresh = !sites_.count(far);

    if (is_site_class(cls_)) {
      if (!fresh || forbidden_.contains(far)) return false;
      std::vector<BondRef> added;
      for (const auto& [nb, b] : L_.neighbors(far)) {
        if (!sites_.count(nb)) continue;
        if (forbidden_.contains(b)) return false;
        added.push_back(b);
      }
      if (measure_ == SizeMeasure::kBonds && size() + static_cast<int>(added.size()) > n) return false;
      add_site(far);
      for (const auto& b : added) bonds_.insert(b);
      return true;
    }

    if (bonds_.count(bond) || forbidden_.contains(bond)) return false;
    if (fresh && forbidden_.contains(far)) return false;
    if (!fresh && is_tree(cls_)) return false;
    if (!fresh) {
      // Extra bonds between present sites do not change the site count.
      if (measure_ == SizeMeasure::kSites && std::uniform_int_distribution<int>(0, 3)(rng) != 0) return false;
    } else if (measure_ == SizeMeasure::kSites && size() + 1 > n) {
      return false;
    }
    if (measure_ == SizeMeasure::kBonds && size() + 1 > n) return false;
    if (fresh) add_site(far);
    bonds_.insert(bond);
    return true;
  }

  Cluster result(const LatticePtr& lattice) const {
    return Cluster(lattice, cls_, site_list_, std::vector<BondRef>(bonds_.begin(), bonds_.end()));
  }

 private:
  void add_site(const SiteRef& s) {
    if (sites_.insert(s).second) site_list_.push_back(s);
  }

  const LatticeSpec& L_;
  ClusterClass cls_;
  SizeMeasure measure_;
  const ElementSet& forbidden_;
  std::unordered_set<SiteRef, SiteHash> sites_;
  std::vector<SiteRef> site_list_;
  std::unordered_set<BondRef, BondHash> bonds_;
};

}  // namespace

Cluster grow_cluster(const Cluster& start, SizeMeasure measure, int n, std::mt19937_64& rng,
                     const ElementSet& forbidden) {
  if (static_cast<int>(start.size(measure)) > n) throw InvalidArgument("start cluster is larger than the target size");
  const int restarts = 8;
  for (int round = 0; round < restarts; ++round) {
    Grower g(start, measure, forbidden);
    long budget = static_cast<long>(kAttemptsPerStep) * (n + 1);
    while (g.size() < n && budget-- > 0) g.step(rng, n);
    if (g.size() == n) return g.result(start.lattice_ptr());
  }
  throw ResourceLimitError("random growth ran out of retries before reaching size " + std::to_string(n), 0);
}

Cluster random_cluster(const EnumTask& task, int n, std::uint64_t seed) {
  EnumTask t = task;
  t.n_max = std::max(1, n);
  check_task(t);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, task.lattice->num_offsets() - 1);
  Cluster start(task.lattice, task.cls, std::vector<SiteRef>{SiteRef{Cell{}, pick(rng)}}, {});
  Cluster g = canonicalize(grow_cluster(start, task.measure, n, rng)).cluster;
  if (auto report = validate(g); !report) throw InternalMismatch("random cluster invalid: " + report.to_string());
  return g;
}

}  // namespace clusterlab
