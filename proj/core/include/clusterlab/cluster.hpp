#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clusterlab/lattice.hpp"

namespace clusterlab {

enum class ClusterClass : std::uint8_t {
  kBondAnimal,
  kSiteAnimal,
  kBondTree,
  kDirectedBondAnimal,
  kDirectedSiteAnimal,
  kDirectedBondTree,
};

enum class SizeMeasure : std::uint8_t { kSites, kBonds };

inline constexpr std::array<ClusterClass, 6> kAllClasses = {
    ClusterClass::kBondAnimal,         ClusterClass::kSiteAnimal,         ClusterClass::kBondTree,
    ClusterClass::kDirectedBondAnimal, ClusterClass::kDirectedSiteAnimal, ClusterClass::kDirectedBondTree,
};

bool is_directed(ClusterClass c);
bool is_tree(ClusterClass c);
/// Site animals: bonds are induced by sites.
bool is_site_class(ClusterClass c);
ClusterClass undirected_of(ClusterClass c);

/// "bond-animal", "site-animal", "bond-tree", "directed-bond-animal", ...
std::string_view class_name(ClusterClass c);
ClusterClass parse_class(std::string_view name);
std::string_view measure_name(SizeMeasure m);
SizeMeasure parse_measure(std::string_view name);

/// Sorted, duplicate-free sets of sites and bonds.
struct ElementSet {
  std::vector<SiteRef> sites;
  std::vector<BondRef> bonds;

  ElementSet() = default;
  ElementSet(std::vector<SiteRef> s, std::vector<BondRef> b);
  static ElementSet from_elements(const std::vector<Element>& elements);

  bool contains(const SiteRef& s) const;
  bool contains(const BondRef& b) const;
  bool contains(const Element& e) const;
  void insert(const Element& e);
  void erase(const Element& e);
  ElementSet translated(const Cell& u) const;
  std::vector<Element> elements() const;
  std::size_t size() const { return sites.size() + bonds.size(); }
  bool empty() const { return sites.empty() && bonds.empty(); }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
};

ElementSet set_union(const ElementSet& a, const ElementSet& b);
ElementSet set_difference(const ElementSet& a, const ElementSet& b);
ElementSet set_intersection(const ElementSet& a, const ElementSet& b);
bool is_subset(const ElementSet& a, const ElementSet& b);
bool disjoint(const ElementSet& a, const ElementSet& b);

/// All lattice bonds with both endpoints in a sorted site list.
std::vector<BondRef> induced_bonds(const LatticeSpec& lattice, const std::vector<SiteRef>& sorted_sites);

/// Finite set of sites and bonds of one lattice, tagged with a class.
/// Construction does not validate; call validate().
class Cluster {
 public:
  Cluster(LatticePtr lattice, ClusterClass cls, ElementSet elements);
  Cluster(LatticePtr lattice, ClusterClass cls, std::vector<SiteRef> sites, std::vector<BondRef> bonds);
  /// Sites plus every lattice bond between them.
  static Cluster from_sites(LatticePtr lattice, ClusterClass cls, std::vector<SiteRef> sites);

  const LatticePtr& lattice_ptr() const noexcept { return lattice_; }
  const LatticeSpec& lattice() const noexcept { return *lattice_; }
  ClusterClass cluster_class() const noexcept { return class_; }
  const ElementSet& elements() const noexcept { return elements_; }
  const std::vector<SiteRef>& sites() const noexcept { return elements_.sites; }
  const std::vector<BondRef>& bonds() const noexcept { return elements_.bonds; }
  std::size_t n_sites() const noexcept { return elements_.sites.size(); }
  std::size_t n_bonds() const noexcept { return elements_.bonds.size(); }
  std::size_t size(SizeMeasure m) const noexcept { return m == SizeMeasure::kSites ? n_sites() : n_bonds(); }

  bool contains(const SiteRef& s) const { return elements_.contains(s); }
  bool contains(const BondRef& b) const { return elements_.contains(b); }
  bool contains(const Element& e) const { return elements_.contains(e); }

  /// True when the lexicographically smallest site lies in cell 0.
  bool canonical() const;
  Cluster translated(const Cell& u) const;
  Cluster with_class(ClusterClass cls) const { return Cluster(lattice_, cls, elements_); }

  friend bool operator==(const Cluster& a, const Cluster& b) {
    return a.lattice_ == b.lattice_ && a.class_ == b.class_ && a.elements_ == b.elements_;
  }

 private:
  LatticePtr lattice_;
  ClusterClass class_;
  ElementSet elements_;
};

struct ValidationReport {
  bool ok = true;
  std::string invariant;
  std::string witness;

  explicit operator bool() const noexcept { return ok; }
  std::string to_string() const { return ok ? "ok" : invariant + " (" + witness + ")"; }
};

ValidationReport validate(const Cluster& g);

struct Canonicalized {
  Cluster cluster;
  Cell shift;  // g == cluster + shift
};

/// Translates g so that its lexicographically smallest site is some a_i.
Canonicalized canonicalize(const Cluster& g);

struct LocalStatistics {
  std::int64_t n_sites = 0;
  std::int64_t n_bonds = 0;
  std::int64_t mono = 0;
  std::int64_t solv = 0;
  std::int64_t cyc = 0;

  friend bool operator==(const LocalStatistics&, const LocalStatistics&) = default;
};

LocalStatistics local_statistics(const Cluster& g);

SiteRef lex_min_site(const Cluster& g);
/// Unique direction-minimal site, if any.
std::optional<SiteRef> directed_root(const Cluster& g);

/// Injective byte encoding of a canonical cluster. Throws InvalidArgument
/// for non-canonical input.
std::string canonical_key(const Cluster& g);
Cluster decode_key(LatticePtr lattice, std::string_view key);

/// "(i,c1,..,cd)" with a 1-based offset index.
std::string format_site(const SiteRef& s, int dimension);
/// "class;site(i,c..);...;bond(i,c..|j,c..);..."
std::string to_text(const Cluster& g);
Cluster parse_cluster_text(LatticePtr lattice, std::string_view text);

}  // namespace clusterlab
