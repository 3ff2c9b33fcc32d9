#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "clusterlab/cluster.hpp"
#include "clusterlab/enumerate.hpp"
#include "clusterlab/scalar.hpp"
#include "clusterlab/weights.hpp"

namespace clusterlab {

/// Elements required present (p1) and required absent (p2).
struct Pattern {
  ElementSet p1;
  ElementSet p2;

  Pattern() = default;
  /// Throws InvalidArgument when p1 is empty or the sets overlap.
  Pattern(ElementSet required, ElementSet forbidden);

  Pattern translated(const Cell& u) const { return Pattern(p1.translated(u), p2.translated(u)); }
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// The single site a_offset.
Pattern single_site_pattern(int offset = 0);
/// a_1 present, its neighbour with the largest last embedded coordinate
/// absent. On Z^2 this is a site whose north neighbour is missing.
Pattern missing_north_neighbor(const LatticeSpec& lattice);

bool occurs_at(const Cluster& g, const Pattern& p, const Cell& x);
/// Sorted cells x with p1 + x in g and p2 + x disjoint from g.
std::vector<Cell> occurrences(const Cluster& g, const Pattern& p);

/// A pair of patterns for the local U/V exchange. U and V cover the same
/// element set; flipping U to V adds one unit of size and scales the weight
/// by theta.
struct UVPair {
  Pattern u;
  Pattern v;
  Scalar theta = 1;
  std::vector<ClusterClass> classes;
  /// Frame data of builtin pairs (empty for user pairs).
  ElementSet frame;
  ElementSet boundary;
  ElementSet template_set;
  std::string description;

  bool applies_to(ClusterClass c) const;
};

/// Throws InvalidArgument unless u.p1 + u.p2 == v.p1 + v.p2 and theta > 0.
void check_uv_pair(const UVPair& uv);

/// Frame-and-ray pair for animals and bond trees on a builtin lattice.
/// Throws InvalidArgument when no frame can be built.
UVPair builtin_uv(LatticePtr lattice, ClusterClass cls, const WeightModel& w);

enum class FlipDirection { kUToV, kVToU };

/// (g \ (A1 + x)) + (B1 + x) with (A, B) = (U, V) or (V, U). The result is
/// not canonicalized. Throws InvalidArgument when x is not an occurrence and
/// AxiomViolation when the result is not a valid cluster.
Cluster flip(const Cluster& g, const Cell& x, const UVPair& uv, FlipDirection direction);

/// Local splice that creates a pattern occurrence near a given site.
struct TransformSpec {
  struct Variant {
    ElementSet frame;       // D, or D plus a connector path for directed classes
    ElementSet boundary;    // elements whose bonds may be rebuilt for trees
    ElementSet template_set;
    SiteRef anchor;         // t(y) = y.cell - anchor.cell for y of this offset
  };

  LatticePtr lattice;
  ClusterClass cls = ClusterClass::kSiteAnimal;
  Pattern pattern;
  ElementSet frame;
  ElementSet boundary;
  ElementSet template_set;
  std::vector<Variant> variants;  // one per offset class
  int kappa = 0;
};

TransformSpec builtin_transform(LatticePtr lattice, ClusterClass cls);

struct InsertResult {
  Cluster cluster;
  Cell shift;  // t
};

/// G' = (G \ (D + t)) + (template + t), repaired to a tree for tree classes.
/// Throws InvalidArgument when y is not a site of g and AxiomViolation when
/// the splice is invalid.
InsertResult insert_pattern(const Cluster& g, const SiteRef& y, const TransformSpec& spec);

/// A spanning tree of host containing partial. Undirected: partial must be
/// acyclic. Directed: partial has at most one incoming bond per site and the
/// result is rooted at the host's root. Throws InvalidArgument otherwise.
Cluster spanning_completion(const ElementSet& partial, const Cluster& host);

/// Occurrence counts of several patterns together with local statistics.
struct PatternStatKey {
  std::vector<int> occurrences;
  StatKey stats;

  friend auto operator<=>(const PatternStatKey&, const PatternStatKey&) = default;
  friend bool operator==(const PatternStatKey&, const PatternStatKey&) = default;
};
using PatternHistogram = std::map<PatternStatKey, std::uint64_t>;

/// histograms[n] over canonical clusters of size n, n = 0..task.n_max.
std::vector<PatternHistogram> pattern_histograms(const EnumTask& task, const std::vector<Pattern>& patterns,
                                                 const EnumOptions& options = {});

/// Weighted sum over canonical clusters of size n with at most m occurrences.
Scalar tail_sum(const EnumTask& task, const Pattern& p, int m, const WeightModel& w, int n,
                const EnumOptions& options = {});

struct OccupancyKey {
  int n = 0;
  int a = 0;
  int b = 0;
  friend auto operator<=>(const OccupancyKey&, const OccupancyKey&) = default;
  friend bool operator==(const OccupancyKey&, const OccupancyKey&) = default;
};

/// Weighted sums by size n, number a of U occurrences and b of V occurrences.
struct OccupancyTable {
  std::string lattice;
  ClusterClass cls = ClusterClass::kSiteAnimal;
  SizeMeasure measure = SizeMeasure::kSites;
  std::string weights;
  std::string ensemble;
  std::string uv;
  std::map<OccupancyKey, Scalar> entries;

  Scalar at(int n, int a, int b) const;
};

/// Full ensemble: canonical clusters with n_lo <= n <= n_hi.
OccupancyTable occupancy_table(const EnumTask& task, const UVPair& uv, const WeightModel& w, int n_lo, int n_hi,
                               const EnumOptions& options = {});

/// Inclusive box of cells; a site belongs to the window when its cell does.
struct Window {
  Cell lo{};
  Cell hi{};
  std::string describe(int dimension) const;
};

/// Window ensemble for site classes: every fixed cluster with all sites in
/// the window and at least one U or V occurrence placed inside the window.
/// Occurrences count only placements x with U1 + x inside the window.
OccupancyTable window_occupancy_table(const EnumTask& task, const UVPair& uv, const WeightModel& w,
                                      const Window& window, int n_lo, int n_hi);

struct FlipResidual {
  int n = 0;
  int a = 0;
  int b = 0;
  Scalar lhs;
  Scalar rhs;
  Scalar residual;
};

/// a*G_n(a,b) - (b+1)/theta * G_{n+1}(a-1,b+1) for every a >= 1 on either
/// side, over sizes n with n and n+1 both covered by the table.
std::vector<FlipResidual> verify_flip_identity(const OccupancyTable& table, const Scalar& theta, int n_lo,
                                               int n_hi);
/// Same check across two tables, one holding size n and one size n+1.
/// Throws InvalidArgument when their metadata differ.
std::vector<FlipResidual> verify_flip_identity(const OccupancyTable& at_n, const OccupancyTable& at_n1,
                                               const Scalar& theta, int n);

}  // namespace clusterlab
