#include "frame.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "clusterlab/errors.hpp"

namespace clusterlab::detail {

namespace {

constexpr int kMaxWidth = 16;

bool in_sorted(const std::vector<SiteRef>& v, const SiteRef& s) { return std::binary_search(v.begin(), v.end(), s); }

std::int64_t ceil_norm(const LatticeSpec& L, const SiteRef& s) { return L.sup_norm(s).ceil(); }

std::vector<SiteRef> build_ray(const LatticeSpec& L, bool directed, const SiteRef& x0, int length) {
  std::vector<SiteRef> ray;
  SiteRef cur = x0;
  for (int j = 0; j < length; ++j) {
    std::optional<SiteRef> best;
    for (const auto& [far, bond] : L.neighbors(cur)) {
      if (!best) {
        best = far;
        continue;
      }
      if (directed) {
        auto hf = L.height(far), hb = L.height(*best);
        if (hf < hb || (hf == hb && L.compare_lex(far, *best) < 0)) best = far;
      } else if (L.compare_lex(far, *best) > 0) {
        best = far;
      }
    }
    if (!best) throw InvalidArgument("lattice site without neighbours");
    bool advances = directed ? L.height(*best) < L.height(cur) : L.compare_lex(*best, cur) > 0;
    if (!advances) throw InvalidArgument("no self-avoiding ray leaves a_1 on this lattice");
    ray.push_back(*best);
    cur = *best;
  }
  return ray;
}

bool shell_ok(const LatticeSpec& L, bool directed, const std::vector<SiteRef>& shell, std::optional<SiteRef>& low,
              std::optional<SiteRef>& high) {
  if (shell.empty()) return false;
  auto adjacent_in_shell = [&](const SiteRef& s, bool up_only, bool down_only) {
    std::vector<SiteRef> out;
    for (const auto& [far, bond] : L.neighbors(s)) {
      if (!in_sorted(shell, far)) continue;
      if (up_only && L.height(far) <= L.height(s)) continue;
      if (down_only && L.height(far) >= L.height(s)) continue;
      out.push_back(far);
    }
    return out;
  };
  auto reach = [&](const SiteRef& start, bool up_only, bool down_only) {
    std::set<SiteRef> seen{start};
    std::queue<SiteRef> q;
    q.push(start);
    while (!q.empty()) {
      SiteRef s = q.front();
      q.pop();
      for (const auto& t : adjacent_in_shell(s, up_only, down_only)) {
        if (seen.insert(t).second) q.push(t);
      }
    }
    return seen.size();
  };
  if (!directed) return reach(shell.front(), false, false) == shell.size();
  auto by_height = [&](const SiteRef& a, const SiteRef& b) { return L.height(a) < L.height(b); };
  auto [mn, mx] = std::minmax_element(shell.begin(), shell.end(), by_height);
  auto hmin = L.height(*mn), hmax = L.height(*mx);
  if (std::count_if(shell.begin(), shell.end(), [&](const SiteRef& s) { return L.height(s) == hmin; }) != 1) return false;
  if (std::count_if(shell.begin(), shell.end(), [&](const SiteRef& s) { return L.height(s) == hmax; }) != 1) return false;
  if (reach(*mn, true, false) != shell.size()) return false;
  if (reach(*mx, false, true) != shell.size()) return false;
  low = *mn;
  high = *mx;
  return true;
}

}  // namespace

void add_induced_bonds(const LatticeSpec& lattice, ElementSet& e) {
  for (const auto& b : induced_bonds(lattice, e.sites)) e.insert(b);
}

Frame build_frame(const LatticeSpec& L, ClusterClass cls) {
  const bool directed = is_directed(cls);
  if (directed && !L.directed()) throw InvalidArgument("directed class needs a lattice direction");
  Frame f;
  f.x0 = SiteRef{Cell{}, 0};
  std::vector<SiteRef> probe = build_ray(L, directed, f.x0, 1);
  const SiteRef x1 = probe.front();
  f.first_bond = BondRef::between(f.x0, x1);
  for (const auto& [far, bond] : L.neighbors(f.x0)) {
    if (far != x1) f.nbrs.push_back(far);
  }
  std::sort(f.nbrs.begin(), f.nbrs.end());

  std::int64_t m = std::max(ceil_norm(L, f.x0), ceil_norm(L, x1));
  for (const auto& s : f.nbrs) m = std::max(m, ceil_norm(L, s));
  f.m0 = m + 1;

  for (int w = 0; w <= kMaxWidth; ++w) {
    const std::int64_t m1 = f.m0 + w;
    std::vector<SiteRef> sites = L.sites_within(Rational(m1));
    std::sort(sites.begin(), sites.end());
    std::vector<SiteRef> shell;
    bool separated = true;
    std::vector<char> offsets(L.num_offsets(), 0);
    for (const auto& s : sites) {
      offsets[s.offset] = 1;
      if (L.sup_norm(s) >= Rational(f.m0)) {
        shell.push_back(s);
        continue;
      }
      for (const auto& [far, bond] : L.neighbors(s)) {
        if (!in_sorted(sites, far)) separated = false;
      }
    }
    if (!separated || std::count(offsets.begin(), offsets.end(), 0) > 0) continue;
    std::optional<SiteRef> low, high;
    if (!shell_ok(L, directed, shell, low, high)) continue;

    f.m1 = m1;
    f.low = low;
    f.high = high;
    f.frame = ElementSet(sites, {});
    add_induced_bonds(L, f.frame);
    f.boundary = ElementSet(shell, {});
    add_induced_bonds(L, f.boundary);

    // The ray must leave the frame; follow it well past the outer radius.
    int length = 4 * static_cast<int>(m1 + 2) * std::max(1, L.num_offsets());
    f.ray = build_ray(L, directed, f.x0, length);
    if (L.sup_norm(f.ray.back()) <= Rational(m1)) throw InvalidArgument("ray does not leave the frame");
    for (std::size_t j = 1; j < f.ray.size(); ++j) {
      if (L.adjacent(f.x0, f.ray[j])) throw InvalidArgument("ray returns next to a_1");
    }

    ElementSet h = f.boundary;
    for (std::size_t j = 0; j < f.ray.size(); ++j) {
      if (!f.frame.contains(f.ray[j])) continue;
      h.insert(f.ray[j]);
      if (j + 1 < f.ray.size() && f.frame.contains(f.ray[j + 1])) h.insert(BondRef::between(f.ray[j], f.ray[j + 1]));
    }
    if (is_site_class(cls)) add_induced_bonds(L, h);
    for (const auto& s : f.nbrs) {
      if (h.contains(s)) throw InvalidArgument("template meets a neighbour of a_1");
    }
    if (h.contains(f.x0)) throw InvalidArgument("template contains a_1");
    f.template_set = std::move(h);
    return f;
  }
  throw InvalidArgument("no frame of width <= " + std::to_string(kMaxWidth) + " satisfies the shell conditions");
}

}  // namespace clusterlab::detail
