#include "clusterlab/cluster.hpp"

#include <algorithm>
#include <charconv>
#include <deque>

#include "clusterlab/errors.hpp"

namespace clusterlab {

bool is_directed(ClusterClass c) {
  return c == ClusterClass::kDirectedBondAnimal || c == ClusterClass::kDirectedSiteAnimal ||
         c == ClusterClass::kDirectedBondTree;
}

bool is_tree(ClusterClass c) { return c == ClusterClass::kBondTree || c == ClusterClass::kDirectedBondTree; }

bool is_site_class(ClusterClass c) {
  return c == ClusterClass::kSiteAnimal || c == ClusterClass::kDirectedSiteAnimal;
}

ClusterClass undirected_of(ClusterClass c) {
  switch (c) {
    case ClusterClass::kDirectedBondAnimal: return ClusterClass::kBondAnimal;
    case ClusterClass::kDirectedSiteAnimal: return ClusterClass::kSiteAnimal;
    case ClusterClass::kDirectedBondTree: return ClusterClass::kBondTree;
    default: return c;
  }
}

std::string_view class_name(ClusterClass c) {
  switch (c) {
    case ClusterClass::kBondAnimal: return "bond-animal";
    case ClusterClass::kSiteAnimal: return "site-animal";
    case ClusterClass::kBondTree: return "bond-tree";
    case ClusterClass::kDirectedBondAnimal: return "directed-bond-animal";
    case ClusterClass::kDirectedSiteAnimal: return "directed-site-animal";
    case ClusterClass::kDirectedBondTree: return "directed-bond-tree";
  }
  return "?";
}

ClusterClass parse_class(std::string_view name) {
  std::string n(name);
  std::replace(n.begin(), n.end(), '_', '-');
  for (ClusterClass c : kAllClasses) {
    if (class_name(c) == n) return c;
  }
  if (n == "ba") return ClusterClass::kBondAnimal;
  if (n == "sa") return ClusterClass::kSiteAnimal;
  if (n == "bt") return ClusterClass::kBondTree;
  throw InvalidArgument("unknown cluster class '" + std::string(name) + "'");
}

std::string_view measure_name(SizeMeasure m) { return m == SizeMeasure::kSites ? "sites" : "bonds"; }

SizeMeasure parse_measure(std::string_view name) {
  if (name == "sites") return SizeMeasure::kSites;
  if (name == "bonds") return SizeMeasure::kBonds;
  throw InvalidArgument("unknown size measure '" + std::string(name) + "'");
}

ElementSet::ElementSet(std::vector<SiteRef> s, std::vector<BondRef> b) : sites(std::move(s)), bonds(std::move(b)) {
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  std::sort(bonds.begin(), bonds.end());
  bonds.erase(std::unique(bonds.begin(), bonds.end()), bonds.end());
}

ElementSet ElementSet::from_elements(const std::vector<Element>& elements) {
  std::vector<SiteRef> s;
  std::vector<BondRef> b;
  for (const auto& e : elements) {
    if (const auto* site = std::get_if<SiteRef>(&e)) s.push_back(*site);
    else b.push_back(std::get<BondRef>(e));
  }
  return ElementSet(std::move(s), std::move(b));
}

bool ElementSet::contains(const SiteRef& s) const { return std::binary_search(sites.begin(), sites.end(), s); }
bool ElementSet::contains(const BondRef& b) const { return std::binary_search(bonds.begin(), bonds.end(), b); }

bool ElementSet::contains(const Element& e) const {
  if (const auto* s = std::get_if<SiteRef>(&e)) return contains(*s);
  return contains(std::get<BondRef>(e));
}

void ElementSet::insert(const Element& e) {
  if (const auto* s = std::get_if<SiteRef>(&e)) {
    auto it = std::lower_bound(sites.begin(), sites.end(), *s);
    if (it == sites.end() || *it != *s) sites.insert(it, *s);
  } else {
    const auto& b = std::get<BondRef>(e);
    auto it = std::lower_bound(bonds.begin(), bonds.end(), b);
    if (it == bonds.end() || *it != b) bonds.insert(it, b);
  }
}

void ElementSet::erase(const Element& e) {
  if (const auto* s = std::get_if<SiteRef>(&e)) {
    auto it = std::lower_bound(sites.begin(), sites.end(), *s);
    if (it != sites.end() && *it == *s) sites.erase(it);
  } else {
    const auto& b = std::get<BondRef>(e);
    auto it = std::lower_bound(bonds.begin(), bonds.end(), b);
    if (it != bonds.end() && *it == b) bonds.erase(it);
  }
}

ElementSet ElementSet::translated(const Cell& u) const {
  ElementSet out;
  out.sites.reserve(sites.size());
  out.bonds.reserve(bonds.size());
  for (const auto& s : sites) out.sites.push_back(s + u);
  for (const auto& b : bonds) out.bonds.push_back(b + u);
  return out;
}

std::vector<Element> ElementSet::elements() const {
  std::vector<Element> out(sites.begin(), sites.end());
  out.insert(out.end(), bonds.begin(), bonds.end());
  return out;
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_union(a.sites.begin(), a.sites.end(), b.sites.begin(), b.sites.end(), std::back_inserter(out.sites));
  std::set_union(a.bonds.begin(), a.bonds.end(), b.bonds.begin(), b.bonds.end(), std::back_inserter(out.bonds));
  return out;
}

ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_difference(a.sites.begin(), a.sites.end(), b.sites.begin(), b.sites.end(), std::back_inserter(out.sites));
  std::set_difference(a.bonds.begin(), a.bonds.end(), b.bonds.begin(), b.bonds.end(), std::back_inserter(out.bonds));
  return out;
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.sites.begin(), a.sites.end(), b.sites.begin(), b.sites.end(),
                        std::back_inserter(out.sites));
  std::set_intersection(a.bonds.begin(), a.bonds.end(), b.bonds.begin(), b.bonds.end(),
                        std::back_inserter(out.bonds));
  return out;
}

bool is_subset(const ElementSet& a, const ElementSet& b) {
  return std::includes(b.sites.begin(), b.sites.end(), a.sites.begin(), a.sites.end()) &&
         std::includes(b.bonds.begin(), b.bonds.end(), a.bonds.begin(), a.bonds.end());
}

bool disjoint(const ElementSet& a, const ElementSet& b) {
  return set_intersection(a, b).empty();
}

std::vector<BondRef> induced_bonds(const LatticeSpec& lattice, const std::vector<SiteRef>& sorted_sites) {
  std::vector<BondRef> out;
  for (const auto& s : sorted_sites) {
    for (const auto& inc : lattice.incidences(s.offset)) {
      SiteRef far{s.cell + inc.delta, inc.other};
      if (s < far && std::binary_search(sorted_sites.begin(), sorted_sites.end(), far)) {
        out.push_back(BondRef{s, far});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Cluster::Cluster(LatticePtr lattice, ClusterClass cls, ElementSet elements)
    : lattice_(std::move(lattice)), class_(cls), elements_(std::move(elements)) {
  if (!lattice_) throw InvalidArgument("cluster needs a lattice");
}

Cluster::Cluster(LatticePtr lattice, ClusterClass cls, std::vector<SiteRef> sites, std::vector<BondRef> bonds)
    : Cluster(std::move(lattice), cls, ElementSet(std::move(sites), std::move(bonds))) {}

Cluster Cluster::from_sites(LatticePtr lattice, ClusterClass cls, std::vector<SiteRef> sites) {
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  std::vector<BondRef> bonds = induced_bonds(*lattice, sites);
  ElementSet e;
  e.sites = std::move(sites);
  e.bonds = std::move(bonds);
  return Cluster(std::move(lattice), cls, std::move(e));
}

bool Cluster::canonical() const {
  if (elements_.sites.empty()) return false;
  return is_zero(lex_min_site(*this).cell);
}

Cluster Cluster::translated(const Cell& u) const { return Cluster(lattice_, class_, elements_.translated(u)); }

namespace {

std::string bond_text(const BondRef& b, int d) { return "<" + format_site(b.a, d) + "," + format_site(b.b, d) + ">"; }

}  // namespace

ValidationReport validate(const Cluster& g) {
  const LatticeSpec& L = g.lattice();
  const int d = L.dimension();
  const auto& sites = g.sites();
  const auto& bonds = g.bonds();
  auto fail = [](std::string inv, std::string witness) { return ValidationReport{false, std::move(inv), std::move(witness)}; };

  if (sites.empty()) return fail("cluster has no sites", "-");
  for (const auto& s : sites) {
    if (s.offset < 0 || s.offset >= L.num_offsets()) return fail("site offset out of range", format_site(s, d));
  }
  for (const auto& b : bonds) {
    if (!g.contains(b.a) || !g.contains(b.b)) return fail("bond endpoint is not a site of the cluster", bond_text(b, d));
    if (!L.adjacent(b.a, b.b)) return fail("bond is not a lattice bond", bond_text(b, d));
  }

  // Connectivity over the cluster's own bonds.
  std::vector<std::vector<int>> adj(sites.size());
  auto index_of = [&](const SiteRef& s) {
    return static_cast<int>(std::lower_bound(sites.begin(), sites.end(), s) - sites.begin());
  };
  for (const auto& b : bonds) {
    int i = index_of(b.a), j = index_of(b.b);
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<char> seen(sites.size(), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (!seen[i]) return fail("cluster is not connected", format_site(sites[i], d));
  }

  const ClusterClass cls = g.cluster_class();
  if (is_site_class(cls)) {
    for (const auto& s : sites) {
      for (const auto& [far, bond] : L.neighbors(s)) {
        if (g.contains(far) && !g.contains(bond)) return fail("site animal is missing an induced bond", bond_text(bond, d));
      }
    }
  }
  if (is_tree(cls) && bonds.size() + 1 != sites.size()) {
    return fail("tree contains a cycle", bonds.empty() ? "-" : bond_text(bonds.back(), d));
  }
  if (is_directed(cls)) {
    if (!L.directed()) return fail("directed class on a lattice without direction", L.name());
    std::vector<std::int64_t> h(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) h[i] = L.height(sites[i]);
    auto min_it = std::min_element(h.begin(), h.end());
    if (std::count(h.begin(), h.end(), *min_it) != 1) {
      return fail("directed cluster has no unique root", format_site(sites[min_it - h.begin()], d));
    }
    int root = static_cast<int>(min_it - h.begin());
    std::fill(seen.begin(), seen.end(), 0);
    queue.assign(1, root);
    seen[root] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : adj[v]) {
        if (!seen[w] && h[w] > h[v]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    for (std::size_t i = 0; i < sites.size(); ++i) {
      if (!seen[i]) return fail("site is not reachable from the root by a directed path", format_site(sites[i], d));
    }
  }
  return ValidationReport{};
}

SiteRef lex_min_site(const Cluster& g) {
  if (g.sites().empty()) throw InvalidArgument("empty cluster");
  const LatticeSpec& L = g.lattice();
  SiteRef best = g.sites().front();
  for (const auto& s : g.sites()) {
    if (L.compare_lex(s, best) < 0) best = s;
  }
  return best;
}

std::optional<SiteRef> directed_root(const Cluster& g) {
  const LatticeSpec& L = g.lattice();
  if (!L.directed() || g.sites().empty()) return std::nullopt;
  std::optional<SiteRef> best;
  std::int64_t best_h = 0;
  bool tie = false;
  for (const auto& s : g.sites()) {
    std::int64_t h = L.height(s);
    if (!best || h < best_h) {
      best = s;
      best_h = h;
      tie = false;
    } else if (h == best_h) {
      tie = true;
    }
  }
  if (tie) return std::nullopt;
  return best;
}

Canonicalized canonicalize(const Cluster& g) {
  Cell shift = lex_min_site(g).cell;
  if (is_zero(shift)) return Canonicalized{g, shift};
  return Canonicalized{g.translated(-shift), shift};
}

LocalStatistics local_statistics(const Cluster& g) {
  const LatticeSpec& L = g.lattice();
  LocalStatistics st;
  st.n_sites = static_cast<std::int64_t>(g.n_sites());
  st.n_bonds = static_cast<std::int64_t>(g.n_bonds());
  std::int64_t induced2 = 0;
  std::int64_t degsum = 0;
  for (const auto& s : g.sites()) {
    degsum += L.degree(s.offset);
    for (const auto& inc : L.incidences(s.offset)) {
      if (g.contains(SiteRef{s.cell + inc.delta, inc.other})) ++induced2;
    }
  }
  std::int64_t induced = induced2 / 2;
  st.mono = induced - st.n_bonds;
  st.solv = degsum - 2 * induced;
  st.cyc = st.n_bonds - st.n_sites + 1;
  return st;
}

namespace {

void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

std::uint64_t get_varint(std::string_view key, std::size_t& pos) {
  std::uint64_t v = 0;
  int shift = 0;
  while (true) {
    if (pos >= key.size() || shift > 63) throw ParseError("truncated cluster key");
    auto byte = static_cast<unsigned char>(key[pos++]);
    v |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
    if (!(byte & 0x80)) return v;
    shift += 7;
  }
}

std::uint64_t zigzag(std::int64_t v) { return (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63); }
std::int64_t unzigzag(std::uint64_t v) { return static_cast<std::int64_t>(v >> 1) ^ -static_cast<std::int64_t>(v & 1); }

}  // namespace

std::string canonical_key(const Cluster& g) {
  if (!g.canonical()) throw InvalidArgument("canonical_key needs a canonical cluster");
  const int d = g.lattice().dimension();
  const auto& sites = g.sites();
  std::string out;
  out.reserve(2 + sites.size() * (1 + d) + g.n_bonds() * 2);
  out.push_back(static_cast<char>(g.cluster_class()));
  put_varint(out, sites.size());
  for (const auto& s : sites) {
    put_varint(out, static_cast<std::uint64_t>(s.offset));
    for (int k = 0; k < d; ++k) put_varint(out, zigzag(s.cell[k]));
  }
  put_varint(out, g.n_bonds());
  for (const auto& b : g.bonds()) {
    put_varint(out, static_cast<std::uint64_t>(std::lower_bound(sites.begin(), sites.end(), b.a) - sites.begin()));
    put_varint(out, static_cast<std::uint64_t>(std::lower_bound(sites.begin(), sites.end(), b.b) - sites.begin()));
  }
  return out;
}

Cluster decode_key(LatticePtr lattice, std::string_view key) {
  if (key.empty()) throw ParseError("empty cluster key");
  const int d = lattice->dimension();
  std::size_t pos = 0;
  auto cls_byte = static_cast<unsigned char>(key[pos++]);
  if (cls_byte >= kAllClasses.size()) throw ParseError("bad class byte in cluster key");
  std::vector<SiteRef> sites(get_varint(key, pos));
  for (auto& s : sites) {
    s.offset = static_cast<std::int32_t>(get_varint(key, pos));
    for (int k = 0; k < d; ++k) s.cell[k] = static_cast<std::int32_t>(unzigzag(get_varint(key, pos)));
  }
  std::vector<BondRef> bonds(get_varint(key, pos));
  for (auto& b : bonds) {
    std::uint64_t i = get_varint(key, pos);
    std::uint64_t j = get_varint(key, pos);
    if (i >= sites.size() || j >= sites.size()) throw ParseError("bond index out of range in cluster key");
    b = BondRef::between(sites[i], sites[j]);
  }
  if (pos != key.size()) throw ParseError("trailing bytes in cluster key");
  return Cluster(std::move(lattice), static_cast<ClusterClass>(cls_byte), std::move(sites), std::move(bonds));
}

std::string format_site(const SiteRef& s, int dimension) {
  std::string out = "(" + std::to_string(s.offset + 1);
  for (int k = 0; k < dimension; ++k) out += "," + std::to_string(s.cell[k]);
  return out + ")";
}

std::string to_text(const Cluster& g) {
  const int d = g.lattice().dimension();
  std::string out(class_name(g.cluster_class()));
  for (const auto& s : g.sites()) out += ";site" + format_site(s, d);
  for (const auto& b : g.bonds()) {
    std::string a = format_site(b.a, d);
    std::string c = format_site(b.b, d);
    out += ";bond(" + a.substr(1, a.size() - 2) + "|" + c.substr(1, c.size() - 2) + ")";
  }
  return out;
}

namespace {

SiteRef parse_site_fields(std::string_view body, const LatticeSpec& lattice) {
  std::vector<std::int64_t> v;
  std::size_t start = 0;
  while (start <= body.size()) {
    std::size_t comma = body.find(',', start);
    if (comma == std::string_view::npos) comma = body.size();
    std::string_view tok = body.substr(start, comma - start);
    std::int64_t x = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
    if (ec != std::errc{} || p != tok.data() + tok.size()) throw ParseError("bad integer '" + std::string(tok) + "'");
    v.push_back(x);
    start = comma + 1;
  }
  if (static_cast<int>(v.size()) != lattice.dimension() + 1) throw ParseError("site has wrong number of fields");
  if (v[0] < 1 || v[0] > lattice.num_offsets()) throw ParseError("offset index out of range");
  SiteRef s;
  s.offset = static_cast<std::int32_t>(v[0] - 1);
  for (int k = 0; k < lattice.dimension(); ++k) s.cell[k] = static_cast<std::int32_t>(v[k + 1]);
  return s;
}

}  // namespace

Cluster parse_cluster_text(LatticePtr lattice, std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.remove_suffix(1);
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t semi = text.find(';', start);
    if (semi == std::string_view::npos) semi = text.size();
    parts.push_back(text.substr(start, semi - start));
    start = semi + 1;
  }
  if (parts.empty() || parts[0].empty()) throw ParseError("cluster text has no class");
  ClusterClass cls;
  try {
    cls = parse_class(parts[0]);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  std::vector<SiteRef> sites;
  std::vector<BondRef> bonds;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    std::string_view p = parts[i];
    if (p.empty()) continue;
    if (p.back() != ')') throw ParseError("malformed element '" + std::string(p) + "'");
    if (p.substr(0, 5) == "site(") {
      sites.push_back(parse_site_fields(p.substr(5, p.size() - 6), *lattice));
    } else if (p.substr(0, 5) == "bond(") {
      std::string_view body = p.substr(5, p.size() - 6);
      auto bar = body.find('|');
      if (bar == std::string_view::npos) throw ParseError("bond needs '|' between endpoints");
      SiteRef a = parse_site_fields(body.substr(0, bar), *lattice);
      SiteRef b = parse_site_fields(body.substr(bar + 1), *lattice);
      bonds.push_back(BondRef::between(a, b));
    } else {
      throw ParseError("unknown element '" + std::string(p) + "'");
    }
  }
  return Cluster(std::move(lattice), cls, std::move(sites), std::move(bonds));
}

}  // namespace clusterlab
