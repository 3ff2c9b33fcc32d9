#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "clusterlab/rational.hpp"

namespace clusterlab {

inline constexpr int kMaxDim = 8;

/// Integer coordinates in the translation group; entries past the lattice
/// dimension are always zero.
using Cell = std::array<std::int32_t, kMaxDim>;

Cell operator+(const Cell& a, const Cell& b);
Cell operator-(const Cell& a, const Cell& b);
Cell operator-(const Cell& a);
Cell make_cell(std::initializer_list<std::int32_t> coords);
bool is_zero(const Cell& c);

/// A site A*cell + a_offset. Offsets are 0-based here; every text, JSON and
/// CLI format uses 1-based offsets.
struct SiteRef {
  Cell cell{};
  std::int32_t offset = 0;

  friend auto operator<=>(const SiteRef&, const SiteRef&) = default;
  friend bool operator==(const SiteRef&, const SiteRef&) = default;
};

SiteRef operator+(const SiteRef& s, const Cell& u);
SiteRef operator-(const SiteRef& s, const Cell& u);

/// Unordered pair of sites stored with a < b.
struct BondRef {
  SiteRef a;
  SiteRef b;

  static BondRef between(const SiteRef& x, const SiteRef& y);
  const SiteRef& other(const SiteRef& s) const { return s == a ? b : a; }
  bool touches(const SiteRef& s) const { return s == a || s == b; }

  friend auto operator<=>(const BondRef&, const BondRef&) = default;
  friend bool operator==(const BondRef&, const BondRef&) = default;
};

BondRef operator+(const BondRef& b, const Cell& u);

using Element = std::variant<SiteRef, BondRef>;
Element operator+(const Element& e, const Cell& u);

struct CellHash {
  std::size_t operator()(const Cell& c) const noexcept;
};
struct SiteHash {
  std::size_t operator()(const SiteRef& s) const noexcept;
};
struct BondHash {
  std::size_t operator()(const BondRef& b) const noexcept;
};

/// Bond class <(0, i), (u, j)> and all of its translates.
struct BondGenerator {
  int i = 0;
  int j = 0;
  Cell u{};

  friend auto operator<=>(const BondGenerator&, const BondGenerator&) = default;
  friend bool operator==(const BondGenerator&, const BondGenerator&) = default;
};

/// Raw description of a periodic lattice, before validation.
struct LatticeData {
  std::string name;
  int dimension = 0;
  std::vector<RatVector> generators;  // columns of A
  std::vector<RatVector> offsets;     // a_1 = 0 first
  std::vector<BondGenerator> bonds;
  std::optional<RatVector> direction;
};

struct ValidationOptions {
  bool check_connectivity = true;
  /// Outer search radius R in embedded sup norm; 0 selects 8 * max generator norm.
  Rational outer_radius = 0;
  /// Sites within R - inner_margin must be reached; 0 selects R / 2.
  Rational inner_margin = 0;
};

/// One lattice bond seen from a site of a given offset class.
struct Incidence {
  Cell delta{};       // cell of the far endpoint relative to the near one
  int other = 0;      // offset of the far endpoint
  bool up = false;    // direction.far > direction.near (directed lattices only)
};

/// Scaled embedded coordinates: embedding multiplied by a common denominator.
using ScaledPoint = std::array<std::int64_t, kMaxDim>;

class LatticeSpec;
using LatticePtr = std::shared_ptr<const LatticeSpec>;

/// Immutable periodic lattice with exact rational geometry.
class LatticeSpec {
 public:
  /// Validates the data and precomputes incidences. Throws InvalidArgument.
  static LatticePtr create(LatticeData data, const ValidationOptions& options = {});

  /// Same lattice with a (new) direction vector.
  LatticePtr with_direction(const RatVector& v) const;

  const std::string& name() const noexcept { return data_.name; }
  int dimension() const noexcept { return data_.dimension; }
  int num_offsets() const noexcept { return static_cast<int>(data_.offsets.size()); }
  const LatticeData& data() const noexcept { return data_; }
  const RatMatrix& generator_matrix() const noexcept { return a_; }
  const std::vector<RatVector>& offsets() const noexcept { return data_.offsets; }
  const std::vector<BondGenerator>& bond_generators() const noexcept { return data_.bonds; }
  const std::optional<RatVector>& direction() const noexcept { return data_.direction; }
  bool directed() const noexcept { return data_.direction.has_value(); }

  int degree(int offset) const { return static_cast<int>(incidences_[offset].size()); }
  int max_degree() const noexcept { return max_degree_; }
  const std::vector<Incidence>& incidences(int offset) const { return incidences_[offset]; }

  /// Incident bonds of s, sorted by embedded coordinates of the far endpoint.
  std::vector<std::pair<SiteRef, BondRef>> neighbors(const SiteRef& s) const;
  void for_each_neighbor(const SiteRef& s, const std::function<void(const SiteRef&, bool up)>& fn) const;
  bool adjacent(const SiteRef& x, const SiteRef& y) const;

  RatVector embed(const SiteRef& s) const;
  ScaledPoint scaled(const SiteRef& s) const;
  std::int64_t scale() const noexcept { return scale_; }
  /// direction . x times a positive constant; requires a direction.
  std::int64_t height(const SiteRef& s) const;
  std::strong_ordering compare_lex(const SiteRef& x, const SiteRef& y) const;
  /// Sup norm of the embedded position (exact).
  Rational sup_norm(const SiteRef& s) const;

  /// The site at embedded point x, if any.
  std::optional<SiteRef> locate(const RatVector& x) const;
  /// All sites whose embedded sup norm is at most radius, sorted lexicographically.
  std::vector<SiteRef> sites_within(const Rational& radius) const;

  /// Max sup norm over generator columns.
  Rational generator_norm() const;
  /// Max sup norm of a bond displacement.
  Rational bond_length() const;

  /// Stable textual serialization used for digests.
  std::string canonical_text() const;
  std::uint64_t digest() const;

  void check_connectivity(const Rational& outer, const Rational& inner) const;

 private:
  LatticeSpec() = default;
  void prepare();

  LatticeData data_;
  RatMatrix a_;
  RatMatrix a_inv_;
  std::int64_t scale_ = 1;
  std::array<std::int64_t, kMaxDim * kMaxDim> a_scaled_{};
  std::vector<ScaledPoint> offset_scaled_;
  ScaledPoint direction_scaled_{};
  std::vector<std::vector<Incidence>> incidences_;
  int max_degree_ = 0;
};

/// Brings (i, j, u) to the form whose smaller endpoint sits in cell 0.
BondGenerator normalize_bond_generator(const BondGenerator& g);

/// Bond generators for every pair (a_i, a_i + delta) with delta in the
/// candidate displacement list that lands on a site and satisfies keep(x, y).
std::vector<BondGenerator> bonds_from_displacements(
    const LatticeData& partial, const std::vector<RatVector>& displacements,
    const std::function<bool(const RatVector&, const RatVector&)>& keep);

/// FNV-1a 64-bit hash.
std::uint64_t fnv1a64(std::string_view text);

// Builtin lattices.
LatticePtr hypercubic(int d);
LatticePtr triangular();
LatticePtr hexagonal();
LatticePtr kagome();
LatticePtr rectangular(int r1, int r2);
enum class SpreadNorm { kSup, kL1, kL2 };
LatticePtr spread_out(int d, int range, SpreadNorm norm = SpreadNorm::kSup);
LatticePtr dead_end();
LatticePtr bcc();
/// Sites with coordinate sum divisible by 3 and diagonal (+-1,+-1,+-1) bonds;
/// every site has degree 2, so it is built without the connectivity check.
LatticePtr bcc_literal();
LatticePtr fcc();
/// Slab of Z^d: coordinates d-k+1..d confined to [0, bounds[m]].
LatticePtr slab(int d, const std::vector<int>& bounds);

/// Parses "z2", "z3", "hyp:D", "tri", "hex", "kagome", "rect:R1,R2",
/// "spread:D,M[,sup|l1|l2]", "dead_end", "bcc", "bcc_literal", "fcc",
/// "slab:D,B1[,B2...]".
LatticePtr builtin_lattice(std::string_view spec);
std::vector<std::string> builtin_lattice_names();

/// Parses a comma-separated rational vector ("1,1" or "1/2,1").
RatVector parse_rat_vector(std::string_view text);

/// The all-ones direction if no bond is orthogonal to it; throws otherwise.
RatVector default_direction(const LatticeSpec& lattice);

}  // namespace clusterlab
