#include "clusterlab/enumerate.hpp"

#include <array>
#include <cstdlib>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_map>

#include "clusterlab/pattern.hpp"
#include "engine.hpp"

namespace clusterlab {

void check_task(const EnumTask& task) {
  if (!task.lattice) throw InvalidArgument("task has no lattice");
  if (task.n_max < 1) throw InvalidArgument("n must be at least 1");
  if (is_directed(task.cls) && !task.lattice->directed()) {
    throw InvalidArgument("directed class needs a lattice direction");
  }
}

std::uint64_t default_node_budget() {
  if (const char* env = std::getenv("CLUSTERLAB_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1'000'000'000ULL;
}

namespace detail {

struct CountSink {
  bool by_sites = true;
  std::vector<std::uint64_t> counts;

  void node(const SearchState& st) { ++counts[by_sites ? st.sites : st.bonds]; }
};

struct HistSink {
  bool by_sites = true;
  std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> hist;

  void node(const SearchState& st) {
    std::uint64_t key = (static_cast<std::uint64_t>(st.sites) << 48) | (static_cast<std::uint64_t>(st.bonds) << 32) |
                        (static_cast<std::uint64_t>(st.mono()) << 16) | static_cast<std::uint64_t>(st.solv());
    ++hist[by_sites ? st.sites : st.bonds][key];
  }
};

class ClusterSink {
 public:
  ClusterSink(const Region& region, const EnumTask& task, int n, const ClusterVisitor* direct)
      : region_(&region), task_(&task), n_(n), direct_(direct), mark_(region.sites.size(), 0) {}

  void node(const SearchState& st) {
    int size = task_->measure == SizeMeasure::kSites ? st.sites : st.bonds;
    if (size != n_) return;
    Cluster g = materialize(st);
    if (direct_) (*direct_)(g);
    else buffer.push_back(std::move(g));
  }

  std::vector<Cluster> buffer;

 private:
  Cluster materialize(const SearchState& st) {
    const Region& r = *region_;
    std::vector<SiteRef> sites;
    std::vector<BondRef> bonds;
    sites.reserve(st.site_stack.size());
    for (int s : st.site_stack) sites.push_back(r.sites[s]);
    if (is_site_class(task_->cls)) {
      for (int s : st.site_stack) mark_[s] = 1;
      for (int s : st.site_stack) {
        for (const auto& l : r.links[s]) {
          if (mark_[l.site] && s < l.site) bonds.push_back(r.bonds[l.bond]);
        }
      }
      for (int s : st.site_stack) mark_[s] = 0;
    } else {
      bonds.reserve(st.bond_stack.size());
      for (int b : st.bond_stack) bonds.push_back(r.bonds[b]);
    }
    Cluster g(task_->lattice, task_->cls, std::move(sites), std::move(bonds));
    if (is_directed(task_->cls)) return canonicalize(g).cluster;
    return g;
  }

  const Region* region_;
  const EnumTask* task_;
  int n_;
  const ClusterVisitor* direct_;
  std::vector<char> mark_;
};

/// Counts occurrences of up to two patterns at every node.
class PatternSink {
 public:
  struct Probe {
    bool possible = true;
    std::vector<int> req_sites, forb_sites;
    std::vector<std::array<int, 3>> req_bonds, forb_bonds;  // (bond, end, end), -1 when outside the region
  };

  PatternSink(const Region& region, const EnumTask& task, const std::vector<Pattern>& patterns)
      : region_(&region),
        by_sites_(task.measure == SizeMeasure::kSites),
        site_class_(is_site_class(task.cls)),
        site_mark_(region.sites.size(), 0),
        bond_mark_(region.bonds.size(), 0) {
    hist.resize(task.n_max + 1);
    const Region& r = region;
    probes_.resize(patterns.size());
    for (std::size_t k = 0; k < patterns.size(); ++k) {
      const Pattern& p = patterns[k];
      const SiteRef anchor = p.p1.sites.empty() ? p.p1.bonds.front().a : p.p1.sites.front();
      probes_[k].resize(r.sites.size());
      for (std::size_t s = 0; s < r.sites.size(); ++s) {
        Probe& pr = probes_[k][s];
        if (r.sites[s].offset != anchor.offset) {
          pr.possible = false;
          continue;
        }
        const Cell x = r.sites[s].cell - anchor.cell;
        for (const auto& e : p.p1.sites) {
          int i = r.find(e + x);
          if (i < 0) pr.possible = false;
          pr.req_sites.push_back(i);
        }
        for (const auto& e : p.p2.sites) {
          if (int i = r.find(e + x); i >= 0) pr.forb_sites.push_back(i);
        }
        auto bond_entry = [&](const BondRef& b) {
          BondRef bt = b + x;
          return std::array<int, 3>{r.find(bt), r.find(bt.a), r.find(bt.b)};
        };
        for (const auto& e : p.p1.bonds) {
          auto be = bond_entry(e);
          if (site_class_ ? (be[1] < 0 || be[2] < 0) : be[0] < 0) pr.possible = false;
          pr.req_bonds.push_back(be);
        }
        for (const auto& e : p.p2.bonds) {
          auto be = bond_entry(e);
          if (site_class_ ? (be[1] >= 0 && be[2] >= 0) : be[0] >= 0) pr.forb_bonds.push_back(be);
        }
      }
    }
  }

  std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> hist;

  void node(const SearchState& st) {
    for (int s : st.site_stack) site_mark_[s] = 1;
    for (int b : st.bond_stack) bond_mark_[b] = 1;
    std::uint64_t occ[2] = {0, 0};
    for (std::size_t k = 0; k < probes_.size(); ++k) {
      for (int s : st.site_stack) {
        if (matches(probes_[k][s])) ++occ[k];
      }
    }
    for (int s : st.site_stack) site_mark_[s] = 0;
    for (int b : st.bond_stack) bond_mark_[b] = 0;
    const int bonds = site_class_ ? st.induced : st.bonds;
    std::uint64_t key = (occ[0] << 54) | (occ[1] << 44) | (static_cast<std::uint64_t>(st.sites) << 34) |
                        (static_cast<std::uint64_t>(bonds) << 23) | (static_cast<std::uint64_t>(st.mono()) << 12) |
                        static_cast<std::uint64_t>(st.solv());
    ++hist[by_sites_ ? st.sites : st.bonds][key];
  }

 private:
  bool present(const std::array<int, 3>& b) const {
    if (site_class_) return b[1] >= 0 && b[2] >= 0 && site_mark_[b[1]] && site_mark_[b[2]];
    return b[0] >= 0 && bond_mark_[b[0]];
  }
  bool matches(const Probe& p) const {
    if (!p.possible) return false;
    for (int i : p.req_sites) {
      if (!site_mark_[i]) return false;
    }
    for (const auto& b : p.req_bonds) {
      if (!present(b)) return false;
    }
    for (int i : p.forb_sites) {
      if (site_mark_[i]) return false;
    }
    for (const auto& b : p.forb_bonds) {
      if (present(b)) return false;
    }
    return true;
  }

  const Region* region_;
  bool by_sites_;
  bool site_class_;
  std::vector<std::vector<Probe>> probes_;
  std::vector<char> site_mark_;
  std::vector<char> bond_mark_;
};

/// Runs the search for every root offset, split into subtrees at a fixed
/// depth. `make_sink(offset)` builds a sink; `commit(sink)` receives sinks in
/// a fixed order (driver sinks first, then subtrees in order), independent of
/// the number of threads.
template <class Sink, class MakeSink, class Commit>
void drive(const EnumTask& task, int n_max, const EnumOptions& options, MakeSink make_sink, Commit commit) {
  check_task(task);
  const int J = task.lattice->num_offsets();
  const bool directed = is_directed(task.cls);
  std::vector<Region> regions;
  regions.reserve(J);
  for (int i = 0; i < J; ++i) {
    regions.push_back(build_region(*task.lattice, i, directed, region_hops(task.cls, task.measure, n_max)));
  }
  Budget budget(options.node_budget);
  const int split = std::max(0, options.split_depth);

  struct Job {
    int offset;
    std::vector<int> path;
  };
  std::vector<Job> jobs;
  for (int i = 0; i < J; ++i) {
    Sink sink = make_sink(regions[i]);
    std::vector<std::vector<int>> paths;
    Engine<Sink> engine(regions[i], task.cls, task.measure, n_max, budget, sink);
    engine.run(split, &paths);
    commit(sink);
    for (auto& p : paths) jobs.push_back(Job{i, std::move(p)});
  }

  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(jobs.size())));
  if (threads <= 1) {
    std::vector<std::unique_ptr<Engine<Sink>>> engines(J);
    for (const auto& job : jobs) {
      Sink sink = make_sink(regions[job.offset]);
      auto& engine = engines[job.offset];
      if (!engine) engine = std::make_unique<Engine<Sink>>(regions[job.offset], task.cls, task.measure, n_max, budget, sink);
      engine->set_sink(sink);
      engine->run_path(job.path);
      commit(sink);
    }
    return;
  }

  std::vector<std::optional<Sink>> done(jobs.size());
  std::size_t next_commit = 0;
  std::atomic<std::size_t> next_job{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mu;

  auto worker = [&]() {
    std::vector<std::unique_ptr<Engine<Sink>>> engines(J);
    try {
      while (!failed.load()) {
        std::size_t t = next_job.fetch_add(1);
        if (t >= jobs.size()) break;
        const Job& job = jobs[t];
        Sink sink = make_sink(regions[job.offset]);
        auto& engine = engines[job.offset];
        if (!engine) engine = std::make_unique<Engine<Sink>>(regions[job.offset], task.cls, task.measure, n_max, budget, sink);
        engine->set_sink(sink);
        engine->run_path(job.path);
        std::lock_guard<std::mutex> lock(mu);
        done[t].emplace(std::move(sink));
        while (next_commit < done.size() && done[next_commit]) {
          commit(*done[next_commit]);
          done[next_commit].reset();
          ++next_commit;
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
      failed.store(true);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

std::uint64_t enumerate_clusters(const EnumTask& task, int n, const ClusterVisitor& visitor,
                                 const EnumOptions& options) {
  EnumTask t = task;
  t.n_max = n;
  std::uint64_t visited = 0;
  const bool direct = options.threads <= 1;
  ClusterVisitor counting = [&](const Cluster& g) {
    ++visited;
    visitor(g);
  };
  detail::drive<detail::ClusterSink>(
      t, n, options,
      [&](const detail::Region& r) { return detail::ClusterSink(r, t, n, direct ? &counting : nullptr); },
      [&](detail::ClusterSink& sink) {
        for (const auto& g : sink.buffer) counting(g);
        sink.buffer.clear();
      });
  return visited;
}

std::vector<std::uint64_t> count_clusters(const EnumTask& task, const EnumOptions& options) {
  std::vector<std::uint64_t> counts(task.n_max + 1, 0);
  const bool by_sites = task.measure == SizeMeasure::kSites;
  detail::drive<detail::CountSink>(
      task, task.n_max, options,
      [&](const detail::Region&) { return detail::CountSink{by_sites, std::vector<std::uint64_t>(task.n_max + 1, 0)}; },
      [&](detail::CountSink& sink) {
        for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += sink.counts[k];
      });
  return counts;
}

std::vector<StatHistogram> statistics_histograms(const EnumTask& task, const EnumOptions& options) {
  std::vector<StatHistogram> out(task.n_max + 1);
  const bool by_sites = task.measure == SizeMeasure::kSites;
  detail::drive<detail::HistSink>(
      task, task.n_max, options,
      [&](const detail::Region&) {
        return detail::HistSink{by_sites, std::vector<std::unordered_map<std::uint64_t, std::uint64_t>>(task.n_max + 1)};
      },
      [&](detail::HistSink& sink) {
        for (std::size_t k = 0; k < out.size(); ++k) {
          for (const auto& [key, count] : sink.hist[k]) {
            StatKey sk;
            sk.sites = static_cast<std::int32_t>((key >> 48) & 0xffff);
            sk.bonds = static_cast<std::int32_t>((key >> 32) & 0xffff);
            sk.mono = static_cast<std::int32_t>((key >> 16) & 0xffff);
            sk.solv = static_cast<std::int32_t>(key & 0xffff);
            out[k][sk] += count;
          }
        }
      });
  return out;
}

std::vector<PatternHistogram> pattern_histograms(const EnumTask& task, const std::vector<Pattern>& patterns,
                                                 const EnumOptions& options) {
  if (patterns.empty() || patterns.size() > 2) throw InvalidArgument("between one and two patterns are supported");
  if (task.n_max > 1000) throw InvalidArgument("n too large for pattern statistics");
  std::vector<PatternHistogram> out(task.n_max + 1);
  detail::drive<detail::PatternSink>(
      task, task.n_max, options, [&](const detail::Region& r) { return detail::PatternSink(r, task, patterns); },
      [&](detail::PatternSink& sink) {
        for (std::size_t n = 0; n < out.size(); ++n) {
          for (const auto& [key, count] : sink.hist[n]) {
            PatternStatKey k;
            k.occurrences.push_back(static_cast<int>(key >> 54));
            if (patterns.size() > 1) k.occurrences.push_back(static_cast<int>((key >> 44) & 0x3ff));
            k.stats.sites = static_cast<std::int32_t>((key >> 34) & 0x3ff);
            k.stats.bonds = static_cast<std::int32_t>((key >> 23) & 0x7ff);
            k.stats.mono = static_cast<std::int32_t>((key >> 12) & 0x7ff);
            k.stats.solv = static_cast<std::int32_t>(key & 0xfff);
            out[n][k] += count;
          }
          sink.hist[n].clear();
        }
      });
  return out;
}

}  // namespace clusterlab
