#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "clusterlab/enumerate.hpp"
#include "clusterlab/errors.hpp"
#include "region.hpp"

namespace clusterlab::detail {

/// Shared node budget; workers report in batches.
class Budget {
 public:
  explicit Budget(std::uint64_t limit) : limit_(limit) {}
  void charge(std::uint64_t nodes) {
    std::uint64_t total = used_.fetch_add(nodes, std::memory_order_relaxed) + nodes;
    if (total > limit_) {
      throw ResourceLimitError("node budget of " + std::to_string(limit_) + " expansions exceeded", total);
    }
  }
  std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }

 private:
  std::uint64_t limit_;
  std::atomic<std::uint64_t> used_{0};
};

/// Incremental state of the current cluster during the search.
struct SearchState {
  int sites = 0;
  int bonds = 0;
  int induced = 0;
  int degsum = 0;
  std::vector<int> site_stack;  // present sites in insertion order
  std::vector<int> bond_stack;  // present bonds (bond classes only)

  int mono() const { return induced - bonds; }
  int solv() const { return degsum - 2 * induced; }
};

/// Connected-subgraph search with a fixed root and an untried list kept as a
/// contiguous suffix of one buffer. Grows sites for site classes and bonds
/// for bond classes; each valid cluster containing the root is produced once.
///
/// Sink must provide `void node(const SearchState&)`.
template <class Sink>
class Engine {
 public:
  Engine(const Region& region, ClusterClass cls, SizeMeasure measure, int n_max, Budget& budget, Sink& sink)
      : r_(region),
        site_mode_(is_site_class(cls)),
        tree_(is_tree(cls)),
        directed_(is_directed(cls)),
        by_sites_(measure == SizeMeasure::kSites),
        n_max_(n_max),
        budget_(budget),
        sink_(&sink) {
    const std::size_t nsites = r_.sites.size();
    const std::size_t nbonds = r_.bonds.size();
    site_present_.assign(nsites, 0);
    bond_present_.assign(nbonds, 0);
    seen_.assign(site_mode_ ? nsites : nbonds, 0);
    present_nbrs_.assign(nsites, 0);
    buf_.resize(site_mode_ ? nsites : nbonds);
  }

  void set_sink(Sink& sink) { sink_ = &sink; }
  const SearchState& state() const { return st_; }
  const std::vector<char>& site_present() const { return site_present_; }
  const std::vector<char>& bond_present() const { return bond_present_; }

  /// Full search; split_depth < 0 explores everything, otherwise nodes at
  /// depth split_depth are reported to `paths` instead of being expanded.
  void run(int split_depth, std::vector<std::vector<int>>* paths) {
    int hi = start();
    if (split_depth == 0) {
      paths->push_back({});
    } else {
      visit();
      path_.clear();
      rec(0, hi, 0, split_depth, paths);
    }
    finish_root();
    flush();
  }

  /// Replays a recorded path and explores the subtree below it; the node at
  /// the end of the path is visited too.
  void run_path(const std::vector<int>& path) {
    int lo = 0;
    int hi = start();
    struct Step {
      int e, hi_before, hi_after;
    };
    std::vector<Step> steps;
    for (int i : path) {
      int e = buf_[i];
      if (!try_add(e)) throw InternalMismatch("search path replay failed");
      int hi2 = push_neighbors(e, hi);
      steps.push_back({e, hi, hi2});
      lo = i + 1;
      hi = hi2;
    }
    visit();
    rec(lo, hi, static_cast<int>(path.size()), -1, nullptr);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      unmark(it->hi_before, it->hi_after);
      remove(it->e);
    }
    finish_root();
    flush();
  }

 private:
  int start() {
    add_site(0);
    if (site_mode_) seen_[0] = 1;
    root_hi_ = site_mode_ ? push_site_frontier(0, 0) : push_bond_frontier(0, 0);
    return root_hi_;
  }

  void finish_root() {
    if (site_mode_) seen_[0] = 0;
    unmark(0, root_hi_);
    remove_site(0);
  }

  void rec(int lo, int hi, int depth, int split_depth, std::vector<std::vector<int>>* paths) {
    for (int i = lo; i < hi; ++i) {
      int e = buf_[i];
      if (!try_add(e)) continue;
      int hi2 = push_neighbors(e, hi);
      path_.push_back(i);
      if (depth + 1 == split_depth) {
        paths->push_back(path_);
      } else {
        visit();
        rec(i + 1, hi2, depth + 1, split_depth, paths);
      }
      path_.pop_back();
      unmark(hi, hi2);
      remove(e);
    }
  }

  void visit() {
    sink_->node(st_);
    if (++pending_ >= 4096) flush();
  }

  void flush() {
    if (pending_) {
      std::uint64_t p = pending_;
      pending_ = 0;
      budget_.charge(p);
    }
  }

  // Adds element e if it keeps the cluster valid and within the size bound.
  bool try_add(int e) {
    if (site_mode_) {
      int extra = present_nbrs_[e];
      if (by_sites_ ? st_.sites + 1 > n_max_ : st_.induced + extra > n_max_) return false;
      add_site(e);
      st_.bonds = st_.induced;
      return true;
    }
    auto [x, y] = r_.bond_ends[e];
    int fresh = -1;
    if (!site_present_[x]) fresh = x;
    if (!site_present_[y]) fresh = y;
    if (tree_ && fresh < 0) return false;
    if (directed_ && tree_ && site_present_[y]) return false;
    if (by_sites_ ? (fresh >= 0 && st_.sites + 1 > n_max_) : st_.bonds + 1 > n_max_) return false;
    if (fresh >= 0) add_site(fresh);
    bond_present_[e] = 1;
    st_.bonds += 1;
    st_.bond_stack.push_back(e);
    fresh_.push_back(fresh);
    return true;
  }

  void remove(int e) {
    if (site_mode_) {
      remove_site(e);
      st_.bonds = st_.induced;
      return;
    }
    int fresh = fresh_.back();
    fresh_.pop_back();
    st_.bond_stack.pop_back();
    st_.bonds -= 1;
    bond_present_[e] = 0;
    if (fresh >= 0) remove_site(fresh);
  }

  void add_site(int s) {
    site_present_[s] = 1;
    st_.sites += 1;
    st_.degsum += r_.degree[s];
    st_.induced += present_nbrs_[s];
    for (const auto& l : r_.links[s]) ++present_nbrs_[l.site];
    st_.site_stack.push_back(s);
  }

  void remove_site(int s) {
    st_.site_stack.pop_back();
    for (const auto& l : r_.links[s]) --present_nbrs_[l.site];
    st_.induced -= present_nbrs_[s];
    st_.degsum -= r_.degree[s];
    st_.sites -= 1;
    site_present_[s] = 0;
  }

  int push_neighbors(int e, int hi) {
    if (site_mode_) return push_site_frontier(e, hi);
    int fresh = fresh_.back();
    return fresh >= 0 ? push_bond_frontier(fresh, hi) : hi;
  }

  int push_site_frontier(int s, int hi) {
    for (const auto& l : r_.links[s]) {
      if (directed_ && !l.up) continue;
      if (seen_[l.site]) continue;
      seen_[l.site] = 1;
      buf_[hi++] = l.site;
    }
    return hi;
  }

  int push_bond_frontier(int s, int hi) {
    for (const auto& l : r_.links[s]) {
      if (directed_ && !l.up) continue;
      if (seen_[l.bond]) continue;
      seen_[l.bond] = 1;
      buf_[hi++] = l.bond;
    }
    return hi;
  }

  void unmark(int lo, int hi) {
    for (int i = lo; i < hi; ++i) seen_[buf_[i]] = 0;
  }

  const Region& r_;
  bool site_mode_;
  bool tree_;
  bool directed_;
  bool by_sites_;
  int n_max_;
  Budget& budget_;
  Sink* sink_;
  SearchState st_;
  std::vector<char> site_present_;
  std::vector<char> bond_present_;
  std::vector<char> seen_;
  std::vector<int> present_nbrs_;
  std::vector<int> buf_;
  std::vector<int> fresh_;
  std::vector<int> path_;
  int root_hi_ = 0;
  std::uint64_t pending_ = 0;
};

}  // namespace clusterlab::detail
