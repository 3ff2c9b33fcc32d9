#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "clusterlab/errors.hpp"
#include "clusterlab/pattern.hpp"
#include "frame.hpp"

namespace clusterlab {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

ClusterClass tree_class_of(ClusterClass c) {
  return is_directed(c) ? ClusterClass::kDirectedBondTree : ClusterClass::kBondTree;
}

/// Lower endpoint first.
std::pair<SiteRef, SiteRef> oriented(const LatticeSpec& L, const BondRef& b) {
  return L.height(b.a) <= L.height(b.b) ? std::make_pair(b.a, b.b) : std::make_pair(b.b, b.a);
}

/// Shortest downward path from `top` to each offset class, avoiding `avoid`
/// except at `top`. paths[i] lists sites from the class-i endpoint up to top.
std::vector<std::vector<SiteRef>> connectors(const LatticeSpec& L, const SiteRef& top, const ElementSet& avoid) {
  const int J = L.num_offsets();
  std::vector<std::vector<SiteRef>> paths(J);
  std::map<SiteRef, SiteRef> parent;
  std::vector<SiteRef> level{top};
  parent.emplace(top, top);
  int found = 0;
  auto record = [&](const SiteRef& s) {
    if (!paths[s.offset].empty()) return;
    std::vector<SiteRef> p{s};
    SiteRef cur = s;
    while (cur != top) {
      cur = parent.at(cur);
      p.push_back(cur);
    }
    paths[s.offset] = std::move(p);
    ++found;
  };
  record(top);
  for (int depth = 0; found < J && depth < 64 && !level.empty(); ++depth) {
    std::vector<SiteRef> next;
    for (const auto& s : level) {
      std::vector<SiteRef> below;
      for (const auto& [far, bond] : L.neighbors(s)) {
        if (L.height(far) < L.height(s) && !avoid.contains(far) && !parent.count(far)) below.push_back(far);
      }
      std::sort(below.begin(), below.end(), [&](const SiteRef& a, const SiteRef& b) { return L.compare_lex(a, b) < 0; });
      for (const auto& b : below) {
        if (parent.emplace(b, s).second) next.push_back(b);
      }
    }
    std::sort(next.begin(), next.end(), [&](const SiteRef& a, const SiteRef& b) { return L.compare_lex(a, b) < 0; });
    for (const auto& s : next) record(s);
    level = std::move(next);
  }
  if (found < J) throw InvalidArgument("no downward connector reaches every offset class");
  return paths;
}

int crossing_bonds(const LatticeSpec& L, const ElementSet& region) {
  int count = 0;
  for (const auto& s : region.sites) {
    for (const auto& [far, bond] : L.neighbors(s)) {
      if (!region.contains(far)) ++count;
    }
  }
  return count;
}

}  // namespace

Cluster spanning_completion(const ElementSet& partial, const Cluster& host) {
  if (!is_subset(partial, host.elements())) throw InvalidArgument("partial is not contained in host");
  const LatticeSpec& L = host.lattice();
  const auto& sites = host.sites();
  auto index = [&](const SiteRef& s) {
    return static_cast<std::size_t>(std::lower_bound(sites.begin(), sites.end(), s) - sites.begin());
  };
  std::vector<BondRef> chosen;

  if (is_directed(host.cluster_class())) {
    auto root = directed_root(host);
    if (!root) throw InvalidArgument("directed host has no unique root");
    std::vector<char> has_in(sites.size(), 0);
    for (const auto& b : partial.bonds) {
      auto [lo, hi] = oriented(L, b);
      if (L.height(lo) == L.height(hi)) throw InvalidArgument("partial contains a level bond");
      std::size_t h = index(hi);
      if (has_in[h]) throw InvalidArgument("partial gives a site two incoming bonds");
      has_in[h] = 1;
      chosen.push_back(b);
    }
    if (has_in[index(*root)]) throw InvalidArgument("partial gives the root an incoming bond");
    std::vector<std::optional<BondRef>> pick(sites.size());
    for (const auto& b : host.bonds()) {
      auto [lo, hi] = oriented(L, b);
      if (L.height(lo) == L.height(hi)) continue;
      std::size_t h = index(hi);
      if (has_in[h]) continue;
      if (!pick[h] || L.compare_lex(lo, oriented(L, *pick[h]).first) < 0) pick[h] = b;
    }
    for (std::size_t i = 0; i < sites.size(); ++i) {
      if (sites[i] == *root || has_in[i]) continue;
      if (!pick[i]) throw InvalidArgument("host site has no incoming bond");
      chosen.push_back(*pick[i]);
    }
  } else {
    UnionFind uf(sites.size());
    for (const auto& b : partial.bonds) {
      if (!uf.unite(index(b.a), index(b.b))) throw InvalidArgument("partial contains a cycle");
      chosen.push_back(b);
    }
    for (const auto& b : host.bonds()) {
      if (uf.unite(index(b.a), index(b.b))) chosen.push_back(b);
    }
    if (chosen.size() + 1 != sites.size()) throw InvalidArgument("host is not connected");
  }
  Cluster out(host.lattice_ptr(), tree_class_of(host.cluster_class()), sites, std::move(chosen));
  if (auto report = validate(out); !report) {
    throw InvalidArgument("spanning completion failed: " + report.to_string());
  }
  return out;
}

TransformSpec builtin_transform(LatticePtr lattice, ClusterClass cls) {
  const LatticeSpec& L = *lattice;
  detail::Frame f = detail::build_frame(L, cls);
  UVPair uv = builtin_uv(lattice, cls, WeightModel::unit());
  const ElementSet templ = uv.u.p1;

  TransformSpec spec;
  spec.lattice = lattice;
  spec.cls = cls;
  spec.frame = f.frame;
  spec.boundary = f.boundary;
  spec.template_set = templ;

  auto tree_core = [&](const ElementSet& t, const ElementSet& touch) {
    ElementSet core = t;
    for (const auto& b : t.bonds) {
      if (touch.contains(b.a) || touch.contains(b.b)) core.erase(b);
    }
    return core;
  };

  ElementSet p1 = is_tree(cls) ? tree_core(templ, ElementSet(f.boundary.sites, {})) : templ;
  spec.pattern = Pattern(p1, set_difference(f.frame, templ));

  const int J = L.num_offsets();
  std::vector<std::vector<SiteRef>> paths;
  if (is_directed(cls)) paths = connectors(L, *f.low, f.frame);
  int kappa = 0;
  for (int i = 0; i < J; ++i) {
    TransformSpec::Variant v;
    v.frame = f.frame;
    v.boundary = ElementSet(f.boundary.sites, {});
    v.template_set = templ;
    if (is_directed(cls)) {
      const auto& path = paths[i];
      v.anchor = path.front();
      for (std::size_t k = 0; k < path.size(); ++k) {
        v.frame.insert(path[k]);
        v.template_set.insert(path[k]);
        v.boundary.insert(path[k]);
        if (k + 1 < path.size()) {
          BondRef b = BondRef::between(path[k], path[k + 1]);
          v.frame.insert(b);
          v.template_set.insert(b);
        }
      }
    } else {
      std::optional<SiteRef> best;
      for (const auto& s : f.frame.sites) {
        if (s.offset != i) continue;
        if (!best) {
          best = s;
          continue;
        }
        auto c = L.sup_norm(s) <=> L.sup_norm(*best);
        if (c < 0 || (c == 0 && L.compare_lex(s, *best) < 0)) best = s;
      }
      if (!best) throw InvalidArgument("frame misses an offset class");
      v.anchor = *best;
    }
    kappa = std::max(kappa, static_cast<int>(v.frame.size()) + crossing_bonds(L, v.frame));
    spec.variants.push_back(std::move(v));
  }
  spec.kappa = kappa;
  return spec;
}

InsertResult insert_pattern(const Cluster& g, const SiteRef& y, const TransformSpec& spec) {
  if (!g.contains(y)) throw InvalidArgument("insertion site is not in the cluster");
  if (g.lattice_ptr() != spec.lattice && g.lattice().digest() != spec.lattice->digest()) {
    throw InvalidArgument("transform built for a different lattice");
  }
  if (g.cluster_class() != spec.cls) throw InvalidArgument("transform built for a different class");
  const auto& v = spec.variants.at(y.offset);
  const Cell t = y.cell - v.anchor.cell;
  const ElementSet frame = v.frame.translated(t);
  const ElementSet templ = v.template_set.translated(t);
  const ClusterClass cls = g.cluster_class();

  std::optional<Cluster> out;
  if (is_site_class(cls)) {
    std::vector<SiteRef> sites = set_union(set_difference(ElementSet(g.sites(), {}), ElementSet(frame.sites, {})),
                                           ElementSet(templ.sites, {}))
                                     .sites;
    out = Cluster::from_sites(g.lattice_ptr(), cls, std::move(sites));
  } else {
    ElementSet e = set_union(set_difference(g.elements(), frame), templ);
    if (!is_tree(cls)) {
      out = Cluster(g.lattice_ptr(), cls, std::move(e));
    } else {
      const ElementSet touch = v.boundary.translated(t);
      ElementSet partial = e;
      for (const auto& b : e.bonds) {
        if (frame.contains(b) && (touch.contains(b.a) || touch.contains(b.b))) partial.erase(b);
      }
      ClusterClass host_class = is_directed(cls) ? ClusterClass::kDirectedBondAnimal : ClusterClass::kBondAnimal;
      Cluster host(g.lattice_ptr(), host_class, e);
      if (auto report = validate(host); !report) {
        throw AxiomViolation("splice host is invalid: " + report.to_string());
      }
      try {
        out = spanning_completion(partial, host);
      } catch (const InvalidArgument& e) {
        throw AxiomViolation(std::string("splice completion failed: ") + e.what());
      }
    }
  }
  if (auto report = validate(*out); !report) {
    throw AxiomViolation("splice produced an invalid cluster: " + report.to_string());
  }
  return InsertResult{std::move(*out), t};
}

}  // namespace clusterlab
