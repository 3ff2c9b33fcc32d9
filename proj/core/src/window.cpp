#include <algorithm>
#include <array>
#include <bit>
#include <unordered_map>

#include "clusterlab/errors.hpp"
#include "clusterlab/pattern.hpp"

namespace clusterlab {

namespace {

template <int W>
struct Mask {
  std::array<std::uint64_t, W> w{};

  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  bool covers(const Mask& m) const {
    for (int k = 0; k < W; ++k) {
      if ((w[k] & m.w[k]) != m.w[k]) return false;
    }
    return true;
  }
  bool meets(const Mask& m) const {
    for (int k = 0; k < W; ++k) {
      if (w[k] & m.w[k]) return true;
    }
    return false;
  }
  int count_and(const Mask& m) const {
    int c = 0;
    for (int k = 0; k < W; ++k) c += std::popcount(w[k] & m.w[k]);
    return c;
  }
};

struct Placement {
  std::vector<int> u1, u2, v1, v2;  // window-local site indices (absent ones dropped from *2)
};

struct WindowGeometry {
  std::vector<SiteRef> sites;
  std::vector<std::vector<int>> nbrs;
  std::vector<std::vector<int>> up;  // neighbours with larger height
  std::vector<int> degree;
  std::vector<std::int64_t> height;
  std::vector<Placement> placements;
  std::vector<std::vector<char>> frame_member;  // frame_member[k][site]
};

std::uint64_t pack(int n, int a, int b, int induced, int solv) {
  return (static_cast<std::uint64_t>(n) << 56) | (static_cast<std::uint64_t>(a) << 48) |
         (static_cast<std::uint64_t>(b) << 40) | (static_cast<std::uint64_t>(induced) << 20) |
         static_cast<std::uint64_t>(solv);
}

template <int W>
class WindowSearch {
 public:
  WindowSearch(const WindowGeometry& g, bool directed, int n_lo, int n_hi)
      : g_(g), directed_(directed), n_lo_(n_lo), n_hi_(n_hi) {
    const int P = static_cast<int>(g.placements.size());
    for (int k = 0; k < P; ++k) {
      Mask<W> m[4];
      const Placement& p = g.placements[k];
      for (int s : p.u1) m[0].set(s);
      for (int s : p.u2) m[1].set(s);
      for (int s : p.v1) m[2].set(s);
      for (int s : p.v2) m[3].set(s);
      u1_.push_back(m[0]);
      u2_.push_back(m[1]);
      v1_.push_back(m[2]);
      v2_.push_back(m[3]);
    }
    for (const auto& list : g.nbrs) {
      Mask<W> m;
      for (int s : list) m.set(s);
      nbr_.push_back(m);
    }
  }

  std::unordered_map<std::uint64_t, std::uint64_t> hist;
  std::uint64_t nodes = 0;

  void run(int k, bool v_side) {
    k_ = k;
    v_side_ = v_side;
    const Placement& p = g_.placements[k];
    const std::vector<int>& core = v_side ? p.v1 : p.u1;
    const std::size_t n = g_.sites.size();
    seen_.assign(n, 0);
    buf_.assign(n + 1, 0);
    mask_ = Mask<W>{};
    size_ = 0;
    induced_ = 0;
    degsum_ = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (g_.frame_member[k][s]) seen_[s] = 1;
    }
    for (int s : core) add(s);
    int hi = 0;
    for (int s : core) hi = push(s, hi);
    emit();
    if (size_ < n_hi_) rec(0, hi);
  }

 private:
  void add(int s) {
    induced_ += mask_.count_and(nbr_[s]);
    degsum_ += g_.degree[s];
    mask_.set(s);
    ++size_;
  }
  void remove(int s) {
    mask_.reset(s);
    induced_ -= mask_.count_and(nbr_[s]);
    degsum_ -= g_.degree[s];
    --size_;
  }
  int push(int s, int hi) {
    for (int t : g_.nbrs[s]) {
      if (!seen_[t]) {
        seen_[t] = 1;
        buf_[hi++] = t;
      }
    }
    return hi;
  }

  void rec(int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      const int s = buf_[i];
      add(s);
      ++nodes;
      emit();
      if (size_ < n_hi_) {
        int hi2 = push(s, hi);
        rec(i + 1, hi2);
        for (int j = hi; j < hi2; ++j) seen_[buf_[j]] = 0;
      }
      remove(s);
    }
  }

  bool occurs(const Mask<W>& p1, const Mask<W>& p2) const { return mask_.covers(p1) && !mask_.meets(p2); }

  bool directed_ok() const {
    int root = -1;
    std::int64_t best = 0;
    int ties = 0;
    for (int s = 0; s < static_cast<int>(g_.sites.size()); ++s) {
      if (!mask_.test(s)) continue;
      if (root < 0 || g_.height[s] < best) {
        root = s;
        best = g_.height[s];
        ties = 1;
      } else if (g_.height[s] == best) {
        ++ties;
      }
    }
    if (ties != 1) return false;
    Mask<W> reached;
    reached.set(root);
    std::vector<int> stack{root};
    int count = 1;
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      for (int t : g_.up[s]) {
        if (mask_.test(t) && !reached.test(t)) {
          reached.set(t);
          stack.push_back(t);
          ++count;
        }
      }
    }
    return count == size_;
  }

  void emit() {
    if (size_ < n_lo_) return;
    int a = 0, b = 0;
    bool first_found = false;
    for (int j = 0; j < static_cast<int>(u1_.size()); ++j) {
      bool ou = occurs(u1_[j], u2_[j]);
      bool ov = occurs(v1_[j], v2_[j]);
      if (!first_found && (ou || ov)) {
        first_found = true;
        bool mine = j == k_ && (v_side_ ? (!ou && ov) : ou);
        if (!mine) return;
      }
      a += ou;
      b += ov;
    }
    if (directed_ && !directed_ok()) return;
    ++hist[pack(size_, a, b, induced_, degsum_ - 2 * induced_)];
  }

  const WindowGeometry& g_;
  bool directed_;
  int n_lo_, n_hi_;
  std::vector<Mask<W>> u1_, u2_, v1_, v2_, nbr_;
  Mask<W> mask_;
  std::vector<char> seen_;
  std::vector<int> buf_;
  int size_ = 0;
  int induced_ = 0;
  int degsum_ = 0;
  int k_ = 0;
  bool v_side_ = false;
};

template <int W>
std::unordered_map<std::uint64_t, std::uint64_t> run_window(const WindowGeometry& g, bool directed, int n_lo, int n_hi) {
  WindowSearch<W> search(g, directed, n_lo, n_hi);
  for (int k = 0; k < static_cast<int>(g.placements.size()); ++k) {
    search.run(k, false);
    search.run(k, true);
  }
  return std::move(search.hist);
}

}  // namespace

OccupancyTable window_occupancy_table(const EnumTask& task, const UVPair& uv, const WeightModel& w,
                                      const Window& window, int n_lo, int n_hi) {
  check_task(EnumTask{task.lattice, task.cls, task.measure, std::max(1, n_hi)});
  if (!is_site_class(task.cls) || task.measure != SizeMeasure::kSites) {
    throw InvalidArgument("window ensembles support site animals measured by sites");
  }
  if (n_lo < 1 || n_hi < n_lo || n_hi > 255) throw InvalidArgument("bad size range");
  const LatticeSpec& L = *task.lattice;
  const int d = L.dimension();

  WindowGeometry g;
  {
    Cell c = window.lo;
    for (int i = 0; i < d; ++i) {
      if (window.hi[i] < window.lo[i]) throw InvalidArgument("empty window");
    }
    while (true) {
      for (int o = 0; o < L.num_offsets(); ++o) g.sites.push_back(SiteRef{c, o});
      int i = 0;
      while (i < d && c[i] == window.hi[i]) {
        c[i] = window.lo[i];
        ++i;
      }
      if (i == d) break;
      ++c[i];
    }
  }
  std::sort(g.sites.begin(), g.sites.end());
  if (g.sites.size() > 256) throw InvalidArgument("window has more than 256 sites");
  auto index = [&](const SiteRef& s) {
    auto it = std::lower_bound(g.sites.begin(), g.sites.end(), s);
    return it != g.sites.end() && *it == s ? static_cast<int>(it - g.sites.begin()) : -1;
  };
  g.nbrs.resize(g.sites.size());
  g.up.resize(g.sites.size());
  for (std::size_t s = 0; s < g.sites.size(); ++s) {
    g.degree.push_back(L.degree(g.sites[s].offset));
    g.height.push_back(L.directed() ? L.height(g.sites[s]) : 0);
    for (const auto& [far, bond] : L.neighbors(g.sites[s])) {
      int t = index(far);
      if (t < 0) continue;
      g.nbrs[s].push_back(t);
      if (L.directed() && L.height(far) > L.height(g.sites[s])) g.up[s].push_back(t);
    }
  }

  const SiteRef anchor = uv.u.p1.sites.front();
  for (const auto& s : g.sites) {
    if (s.offset != anchor.offset) continue;
    const Cell x = s.cell - anchor.cell;
    Placement p;
    bool inside = true;
    for (const auto& u : uv.u.p1.sites) {
      int i = index(u + x);
      if (i < 0) inside = false;
      p.u1.push_back(i);
    }
    if (!inside) continue;
    for (const auto& u : uv.v.p1.sites) {
      int i = index(u + x);
      if (i < 0) throw InvalidArgument("window holds U but not V at some placement");
      p.v1.push_back(i);
    }
    for (const auto& u : uv.u.p2.sites) {
      if (int i = index(u + x); i >= 0) p.u2.push_back(i);
    }
    for (const auto& u : uv.v.p2.sites) {
      if (int i = index(u + x); i >= 0) p.v2.push_back(i);
    }
    std::vector<char> member(g.sites.size(), 0);
    for (int i : p.u1) member[i] = 1;
    for (int i : p.u2) member[i] = 1;
    for (int i : p.v1) member[i] = 1;
    for (int i : p.v2) member[i] = 1;
    g.frame_member.push_back(std::move(member));
    g.placements.push_back(std::move(p));
  }

  std::unordered_map<std::uint64_t, std::uint64_t> hist;
  const bool directed = is_directed(task.cls);
  const std::size_t words = (g.sites.size() + 63) / 64;
  switch (words) {
    case 1: hist = run_window<1>(g, directed, n_lo, n_hi); break;
    case 2: hist = run_window<2>(g, directed, n_lo, n_hi); break;
    case 3: hist = run_window<3>(g, directed, n_lo, n_hi); break;
    default: hist = run_window<4>(g, directed, n_lo, n_hi); break;
  }

  OccupancyTable table;
  table.lattice = L.name();
  table.cls = task.cls;
  table.measure = task.measure;
  table.weights = w.describe();
  table.ensemble = window.describe(d);
  table.uv = uv.description;
  for (const auto& [key, count] : hist) {
    StatKey st;
    st.sites = static_cast<int>(key >> 56);
    st.bonds = static_cast<int>((key >> 20) & 0xfffff);
    st.mono = 0;
    st.solv = static_cast<int>(key & 0xfffff);
    OccupancyKey k{st.sites, static_cast<int>((key >> 48) & 0xff), static_cast<int>((key >> 40) & 0xff)};
    Scalar c = w.mode == ArithmeticMode::kExact ? Scalar(mpq_class(std::to_string(count)))
                                                : Scalar::from_double(static_cast<double>(count));
    Scalar v = weight_of(st, w) * c;
    auto it = table.entries.find(k);
    if (it == table.entries.end()) table.entries.emplace(k, v);
    else it->second += v;
  }
  return table;
}

}  // namespace clusterlab
