#include "clusterlab/pattern.hpp"

#include <algorithm>
#include <set>

#include "clusterlab/errors.hpp"

namespace clusterlab {

Pattern::Pattern(ElementSet required, ElementSet forbidden) : p1(std::move(required)), p2(std::move(forbidden)) {
  if (p1.empty()) throw InvalidArgument("pattern P1 must be nonempty");
  if (!disjoint(p1, p2)) throw InvalidArgument("pattern P1 and P2 overlap");
}

Pattern single_site_pattern(int offset) {
  return Pattern(ElementSet({SiteRef{Cell{}, offset}}, {}), {});
}

Pattern missing_north_neighbor(const LatticeSpec& lattice) {
  const SiteRef origin{Cell{}, 0};
  const int last = lattice.dimension() - 1;
  std::optional<SiteRef> best;
  for (const auto& [far, bond] : lattice.neighbors(origin)) {
    if (!best) {
      best = far;
      continue;
    }
    auto a = lattice.scaled(far)[last];
    auto b = lattice.scaled(*best)[last];
    if (a > b || (a == b && lattice.compare_lex(far, *best) < 0)) best = far;
  }
  if (!best) throw InvalidArgument("lattice site has no neighbours");
  return Pattern(ElementSet({origin}, {}), ElementSet({*best}, {}));
}

bool occurs_at(const Cluster& g, const Pattern& p, const Cell& x) {
  for (const auto& s : p.p1.sites) {
    if (!g.contains(s + x)) return false;
  }
  for (const auto& b : p.p1.bonds) {
    if (!g.contains(b + x)) return false;
  }
  for (const auto& s : p.p2.sites) {
    if (g.contains(s + x)) return false;
  }
  for (const auto& b : p.p2.bonds) {
    if (g.contains(b + x)) return false;
  }
  return true;
}

namespace {

Scalar same_mode(long v, const Scalar& like) { return like.is_exact() ? Scalar(v) : Scalar::from_double(v); }

SiteRef pattern_anchor(const Pattern& p) {
  return p.p1.sites.empty() ? p.p1.bonds.front().a : p.p1.sites.front();
}

}  // namespace

std::vector<Cell> occurrences(const Cluster& g, const Pattern& p) {
  const SiteRef anchor = pattern_anchor(p);
  std::vector<Cell> out;
  for (const auto& s : g.sites()) {
    if (s.offset != anchor.offset) continue;
    Cell x = s.cell - anchor.cell;
    if (occurs_at(g, p, x)) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool UVPair::applies_to(ClusterClass c) const {
  return classes.empty() || std::find(classes.begin(), classes.end(), c) != classes.end();
}

void check_uv_pair(const UVPair& uv) {
  if (!(set_union(uv.u.p1, uv.u.p2) == set_union(uv.v.p1, uv.v.p2))) {
    throw InvalidArgument("U and V must cover the same elements");
  }
  if (uv.theta.sign() <= 0) throw InvalidArgument("theta must be positive");
}

Cluster flip(const Cluster& g, const Cell& x, const UVPair& uv, FlipDirection direction) {
  const Pattern& from = direction == FlipDirection::kUToV ? uv.u : uv.v;
  const Pattern& to = direction == FlipDirection::kUToV ? uv.v : uv.u;
  if (!occurs_at(g, from, x)) throw InvalidArgument("flip position is not an occurrence");
  ElementSet e = set_union(set_difference(g.elements(), from.p1.translated(x)), to.p1.translated(x));
  Cluster out(g.lattice_ptr(), g.cluster_class(), std::move(e));
  if (auto report = validate(out); !report) {
    throw AxiomViolation("flip produced an invalid cluster: " + report.to_string());
  }
  return out;
}

Scalar tail_sum(const EnumTask& task, const Pattern& p, int m, const WeightModel& w, int n,
                const EnumOptions& options) {
  if (n > task.n_max) throw InvalidArgument("n exceeds the task's n_max");
  EnumTask t = task;
  t.n_max = n;
  auto hist = pattern_histograms(t, {p}, options);
  Scalar total = w.mode == ArithmeticMode::kExact ? Scalar(0) : Scalar::from_double(0);
  for (const auto& [key, count] : hist[n]) {
    if (key.occurrences[0] > m) continue;
    Scalar c = w.mode == ArithmeticMode::kExact ? Scalar(mpq_class(std::to_string(count)))
                                                : Scalar::from_double(static_cast<double>(count));
    total += weight_of(key.stats, w) * c;
  }
  return total;
}

Scalar OccupancyTable::at(int n, int a, int b) const {
  auto it = entries.find(OccupancyKey{n, a, b});
  if (it != entries.end()) return it->second;
  if (!entries.empty() && !entries.begin()->second.is_exact()) return Scalar::from_double(0);
  return Scalar(0);
}

OccupancyTable occupancy_table(const EnumTask& task, const UVPair& uv, const WeightModel& w, int n_lo, int n_hi,
                               const EnumOptions& options) {
  if (n_lo < 1 || n_hi < n_lo) throw InvalidArgument("bad size range");
  EnumTask t = task;
  t.n_max = n_hi;
  OccupancyTable table;
  table.lattice = task.lattice->name();
  table.cls = task.cls;
  table.measure = task.measure;
  table.weights = w.describe();
  table.ensemble = "full";
  table.uv = uv.description;
  auto hist = pattern_histograms(t, {uv.u, uv.v}, options);
  for (int n = n_lo; n <= n_hi; ++n) {
    for (const auto& [key, count] : hist[n]) {
      Scalar c = Scalar(mpq_class(std::to_string(count)));
      if (w.mode == ArithmeticMode::kFloat) c = Scalar::from_double(static_cast<double>(count));
      OccupancyKey k{n, key.occurrences[0], key.occurrences[1]};
      auto it = table.entries.find(k);
      Scalar v = weight_of(key.stats, w) * c;
      if (it == table.entries.end()) table.entries.emplace(k, v);
      else it->second += v;
    }
  }
  return table;
}

std::string Window::describe(int dimension) const {
  std::string s = "window(";
  for (int i = 0; i < dimension; ++i) {
    if (i) s += ",";
    s += std::to_string(lo[i]) + ".." + std::to_string(hi[i]);
  }
  return s + ")";
}

std::vector<FlipResidual> verify_flip_identity(const OccupancyTable& table, const Scalar& theta, int n_lo,
                                               int n_hi) {
  if (theta.sign() <= 0) throw InvalidArgument("theta must be positive");
  std::vector<FlipResidual> out;
  for (int n = n_lo; n < n_hi; ++n) {
    std::set<std::pair<int, int>> ab;
    for (const auto& [k, v] : table.entries) {
      if (k.n == n && k.a >= 1) ab.insert({k.a, k.b});
      if (k.n == n + 1 && k.b >= 1) ab.insert({k.a + 1, k.b - 1});
    }
    for (const auto& [a, b] : ab) {
      FlipResidual r;
      r.n = n;
      r.a = a;
      r.b = b;
      Scalar gn = table.at(n, a, b);
      Scalar gn1 = table.at(n + 1, a - 1, b + 1);
      r.lhs = same_mode(a, gn) * gn;
      r.rhs = same_mode(b + 1, gn1) / theta * gn1;
      r.residual = r.lhs - r.rhs;
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<FlipResidual> verify_flip_identity(const OccupancyTable& at_n, const OccupancyTable& at_n1,
                                               const Scalar& theta, int n) {
  if (at_n.lattice != at_n1.lattice || at_n.cls != at_n1.cls || at_n.measure != at_n1.measure ||
      at_n.weights != at_n1.weights || at_n.ensemble != at_n1.ensemble || at_n.uv != at_n1.uv) {
    throw InvalidArgument("occupancy tables have different metadata");
  }
  OccupancyTable merged = at_n;
  merged.entries.clear();
  for (const auto& [k, v] : at_n.entries) {
    if (k.n == n) merged.entries.emplace(k, v);
  }
  for (const auto& [k, v] : at_n1.entries) {
    if (k.n == n + 1) merged.entries.emplace(k, v);
  }
  return verify_flip_identity(merged, theta, n, n + 1);
}

}  // namespace clusterlab
