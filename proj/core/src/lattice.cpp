#include "clusterlab/lattice.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "clusterlab/errors.hpp"

namespace clusterlab {

Cell operator+(const Cell& a, const Cell& b) {
  Cell r;
  for (int k = 0; k < kMaxDim; ++k) r[k] = a[k] + b[k];
  return r;
}

Cell operator-(const Cell& a, const Cell& b) {
  Cell r;
  for (int k = 0; k < kMaxDim; ++k) r[k] = a[k] - b[k];
  return r;
}

Cell operator-(const Cell& a) {
  Cell r;
  for (int k = 0; k < kMaxDim; ++k) r[k] = -a[k];
  return r;
}

Cell make_cell(std::initializer_list<std::int32_t> coords) {
  if (coords.size() > static_cast<std::size_t>(kMaxDim)) throw InvalidArgument("too many coordinates");
  Cell c{};
  std::copy(coords.begin(), coords.end(), c.begin());
  return c;
}

bool is_zero(const Cell& c) {
  return std::all_of(c.begin(), c.end(), [](std::int32_t v) { return v == 0; });
}

SiteRef operator+(const SiteRef& s, const Cell& u) { return SiteRef{s.cell + u, s.offset}; }
SiteRef operator-(const SiteRef& s, const Cell& u) { return SiteRef{s.cell - u, s.offset}; }

BondRef BondRef::between(const SiteRef& x, const SiteRef& y) {
  return x < y ? BondRef{x, y} : BondRef{y, x};
}

BondRef operator+(const BondRef& b, const Cell& u) { return BondRef{b.a + u, b.b + u}; }

Element operator+(const Element& e, const Cell& u) {
  if (const auto* s = std::get_if<SiteRef>(&e)) return *s + u;
  return std::get<BondRef>(e) + u;
}

namespace {

inline std::size_t mix(std::size_t h, std::uint64_t v) {
  v ^= v >> 33;
  v *= 0xff51afd7ed558ccdULL;
  v ^= v >> 33;
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

bool integral(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_integer(); });
}

std::string vec_text(const RatVector& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ",";
    out += v[k].to_string();
  }
  return out;
}

}  // namespace

std::size_t CellHash::operator()(const Cell& c) const noexcept {
  std::size_t h = 0;
  for (auto v : c) h = mix(h, static_cast<std::uint32_t>(v));
  return h;
}

std::size_t SiteHash::operator()(const SiteRef& s) const noexcept {
  return mix(CellHash{}(s.cell), static_cast<std::uint32_t>(s.offset));
}

std::size_t BondHash::operator()(const BondRef& b) const noexcept {
  return mix(SiteHash{}(b.a), SiteHash{}(b.b));
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

BondGenerator normalize_bond_generator(const BondGenerator& g) {
  SiteRef x{Cell{}, g.i};
  SiteRef y{g.u, g.j};
  if (y < x) return BondGenerator{g.j, g.i, -g.u};
  return g;
}

LatticePtr LatticeSpec::create(LatticeData data, const ValidationOptions& options) {
  std::shared_ptr<LatticeSpec> spec(new LatticeSpec());
  spec->data_ = std::move(data);
  spec->prepare();
  if (options.check_connectivity) {
    Rational outer = options.outer_radius.is_zero() ? Rational(8) * spec->generator_norm() : options.outer_radius;
    Rational inner = options.inner_margin.is_zero() ? outer / Rational(2) : options.inner_margin;
    spec->check_connectivity(outer, inner);
  }
  return spec;
}

LatticePtr LatticeSpec::with_direction(const RatVector& v) const {
  LatticeData copy = data_;
  copy.direction = v;
  return create(std::move(copy), ValidationOptions{false});
}

void LatticeSpec::prepare() {
  const int d = data_.dimension;
  if (d < 1 || d > kMaxDim) throw InvalidArgument("dimension must be in 1.." + std::to_string(kMaxDim));
  if (static_cast<int>(data_.generators.size()) != d) throw InvalidArgument("need exactly d generators");
  for (const auto& g : data_.generators) {
    if (static_cast<int>(g.size()) != d) throw InvalidArgument("generator has wrong length");
  }
  if (data_.offsets.empty()) throw InvalidArgument("at least one offset is required");
  for (const auto& a : data_.offsets) {
    if (static_cast<int>(a.size()) != d) throw InvalidArgument("offset has wrong length");
  }
  if (!std::all_of(data_.offsets[0].begin(), data_.offsets[0].end(), [](const Rational& r) { return r.is_zero(); })) {
    throw InvalidArgument("the first offset must be the origin");
  }
  a_ = RatMatrix::from_columns(data_.generators);
  if (a_.determinant().is_zero()) throw InvalidArgument("generators are linearly dependent");
  a_inv_ = a_.inverse();

  const int J = num_offsets();
  for (int i = 0; i < J; ++i) {
    for (int j = i + 1; j < J; ++j) {
      if (integral(a_inv_.apply(data_.offsets[i] - data_.offsets[j]))) {
        throw InvalidArgument("offsets " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                              " coincide modulo the translation group");
      }
    }
  }

  scale_ = 1;
  for (const auto& r : a_.data) scale_ = lcm64(scale_, r.den());
  for (const auto& a : data_.offsets) {
    for (const auto& r : a) scale_ = lcm64(scale_, r.den());
  }
  a_scaled_.fill(0);
  for (int k = 0; k < d; ++k) {
    for (int m = 0; m < d; ++m) a_scaled_[k * kMaxDim + m] = (a_.at(k, m) * Rational(scale_)).num();
  }
  offset_scaled_.assign(J, ScaledPoint{});
  for (int i = 0; i < J; ++i) {
    for (int k = 0; k < d; ++k) offset_scaled_[i][k] = (data_.offsets[i][k] * Rational(scale_)).num();
  }

  std::vector<BondGenerator> bonds;
  for (const auto& g : data_.bonds) {
    if (g.i < 0 || g.i >= J || g.j < 0 || g.j >= J) throw InvalidArgument("bond generator offset out of range");
    for (int k = d; k < kMaxDim; ++k) {
      if (g.u[k] != 0) throw InvalidArgument("bond generator cell has too many coordinates");
    }
    if (g.i == g.j && is_zero(g.u)) throw InvalidArgument("bond generator is a self-loop");
    bonds.push_back(normalize_bond_generator(g));
  }
  std::sort(bonds.begin(), bonds.end());
  bonds.erase(std::unique(bonds.begin(), bonds.end()), bonds.end());
  data_.bonds = bonds;

  direction_scaled_.fill(0);
  if (data_.direction) {
    const RatVector& v = *data_.direction;
    if (static_cast<int>(v.size()) != d) throw InvalidArgument("direction has wrong length");
    std::int64_t den = 1;
    for (const auto& r : v) den = lcm64(den, r.den());
    for (int k = 0; k < d; ++k) direction_scaled_[k] = (v[k] * Rational(den)).num();
  }

  incidences_.assign(J, {});
  for (const auto& g : data_.bonds) {
    incidences_[g.i].push_back(Incidence{g.u, g.j, false});
    incidences_[g.j].push_back(Incidence{-g.u, g.i, false});
  }
  max_degree_ = 0;
  for (int i = 0; i < J; ++i) {
    auto& list = incidences_[i];
    SiteRef origin{Cell{}, i};
    for (auto& inc : list) {
      SiteRef far{inc.delta, inc.other};
      if (data_.direction) {
        std::int64_t hn = height(origin);
        std::int64_t hf = height(far);
        if (hn == hf) throw InvalidArgument("direction is orthogonal to a bond");
        inc.up = hf > hn;
      }
    }
    std::sort(list.begin(), list.end(), [&](const Incidence& x, const Incidence& y) {
      return compare_lex(SiteRef{x.delta, x.other}, SiteRef{y.delta, y.other}) < 0;
    });
    max_degree_ = std::max(max_degree_, static_cast<int>(list.size()));
  }
}

std::vector<std::pair<SiteRef, BondRef>> LatticeSpec::neighbors(const SiteRef& s) const {
  std::vector<std::pair<SiteRef, BondRef>> out;
  const auto& list = incidences_.at(s.offset);
  out.reserve(list.size());
  for (const auto& inc : list) {
    SiteRef far{s.cell + inc.delta, inc.other};
    out.emplace_back(far, BondRef::between(s, far));
  }
  return out;
}

void LatticeSpec::for_each_neighbor(const SiteRef& s, const std::function<void(const SiteRef&, bool)>& fn) const {
  for (const auto& inc : incidences_.at(s.offset)) fn(SiteRef{s.cell + inc.delta, inc.other}, inc.up);
}

bool LatticeSpec::adjacent(const SiteRef& x, const SiteRef& y) const {
  Cell delta = y.cell - x.cell;
  for (const auto& inc : incidences_.at(x.offset)) {
    if (inc.other == y.offset && inc.delta == delta) return true;
  }
  return false;
}

RatVector LatticeSpec::embed(const SiteRef& s) const {
  const int d = dimension();
  RatVector x = data_.offsets.at(s.offset);
  for (int k = 0; k < d; ++k) {
    for (int m = 0; m < d; ++m) {
      if (s.cell[m] != 0) x[k] += a_.at(k, m) * Rational(s.cell[m]);
    }
  }
  return x;
}

ScaledPoint LatticeSpec::scaled(const SiteRef& s) const {
  const int d = dimension();
  ScaledPoint p = offset_scaled_[s.offset];
  for (int k = 0; k < d; ++k) {
    std::int64_t acc = p[k];
    for (int m = 0; m < d; ++m) acc += a_scaled_[k * kMaxDim + m] * s.cell[m];
    p[k] = acc;
  }
  return p;
}

std::int64_t LatticeSpec::height(const SiteRef& s) const {
  ScaledPoint p = scaled(s);
  std::int64_t h = 0;
  for (int k = 0; k < dimension(); ++k) h += direction_scaled_[k] * p[k];
  return h;
}

std::strong_ordering LatticeSpec::compare_lex(const SiteRef& x, const SiteRef& y) const {
  if (x == y) return std::strong_ordering::equal;
  ScaledPoint px = scaled(x);
  ScaledPoint py = scaled(y);
  for (int k = 0; k < dimension(); ++k) {
    if (px[k] != py[k]) return px[k] <=> py[k];
  }
  return std::strong_ordering::equal;
}

Rational LatticeSpec::sup_norm(const SiteRef& s) const {
  ScaledPoint p = scaled(s);
  std::int64_t m = 0;
  for (int k = 0; k < dimension(); ++k) m = std::max(m, p[k] < 0 ? -p[k] : p[k]);
  return Rational(m, scale_);
}

std::optional<SiteRef> LatticeSpec::locate(const RatVector& x) const {
  if (static_cast<int>(x.size()) != dimension()) throw InvalidArgument("point has wrong dimension");
  for (int j = 0; j < num_offsets(); ++j) {
    RatVector c = a_inv_.apply(x - data_.offsets[j]);
    if (!integral(c)) continue;
    SiteRef s;
    s.offset = j;
    for (int k = 0; k < dimension(); ++k) s.cell[k] = static_cast<std::int32_t>(c[k].num());
    return s;
  }
  return std::nullopt;
}

std::vector<SiteRef> LatticeSpec::sites_within(const Rational& radius) const {
  const int d = dimension();
  Rational reach = radius;
  Rational far_offset = 0;
  for (const auto& a : data_.offsets) far_offset = std::max(far_offset, clusterlab::sup_norm(a));
  reach += far_offset;
  std::vector<std::int64_t> bound(d, 0);
  for (int k = 0; k < d; ++k) {
    Rational row = 0;
    for (int m = 0; m < d; ++m) row += a_inv_.at(k, m).abs();
    bound[k] = (row * reach).ceil();
  }
  std::vector<SiteRef> out;
  const std::int64_t lim_num = radius.num();
  const std::int64_t lim_den = radius.den();
  Cell c{};
  for (int k = 0; k < d; ++k) c[k] = static_cast<std::int32_t>(-bound[k]);
  while (true) {
    for (int j = 0; j < num_offsets(); ++j) {
      SiteRef s{c, j};
      ScaledPoint p = scaled(s);
      bool inside = true;
      for (int k = 0; k < d && inside; ++k) {
        Int128 lhs = static_cast<Int128>(p[k] < 0 ? -p[k] : p[k]) * lim_den;
        Int128 rhs = static_cast<Int128>(lim_num) * scale_;
        inside = lhs <= rhs;
      }
      if (inside) out.push_back(s);
    }
    int k = 0;
    while (k < d) {
      if (c[k] < bound[k]) {
        ++c[k];
        break;
      }
      c[k] = static_cast<std::int32_t>(-bound[k]);
      ++k;
    }
    if (k == d) break;
  }
  std::sort(out.begin(), out.end(), [&](const SiteRef& x, const SiteRef& y) { return compare_lex(x, y) < 0; });
  return out;
}

Rational LatticeSpec::generator_norm() const {
  Rational m = 0;
  for (const auto& g : data_.generators) m = std::max(m, clusterlab::sup_norm(g));
  return m;
}

Rational LatticeSpec::bond_length() const {
  Rational m = 0;
  for (const auto& g : data_.bonds) {
    RatVector x = embed(SiteRef{Cell{}, g.i});
    RatVector y = embed(SiteRef{g.u, g.j});
    m = std::max(m, clusterlab::sup_norm(y - x));
  }
  return m;
}

std::string LatticeSpec::canonical_text() const {
  std::ostringstream os;
  os << "d=" << dimension() << ";A=";
  for (const auto& g : data_.generators) os << "[" << vec_text(g) << "]";
  os << ";offsets=";
  for (const auto& a : data_.offsets) os << "[" << vec_text(a) << "]";
  os << ";bonds=";
  for (const auto& g : data_.bonds) {
    os << "[" << g.i + 1 << "," << g.j + 1 << ",";
    for (int k = 0; k < dimension(); ++k) os << (k ? " " : "") << g.u[k];
    os << "]";
  }
  if (data_.direction) os << ";direction=[" << vec_text(*data_.direction) << "]";
  return os.str();
}

std::uint64_t LatticeSpec::digest() const { return fnv1a64(canonical_text()); }

void LatticeSpec::check_connectivity(const Rational& outer, const Rational& inner) const {
  if (data_.bonds.empty()) throw InvalidArgument("lattice has no bonds");
  std::vector<SiteRef> window = sites_within(outer);
  std::unordered_set<SiteRef, SiteHash> allowed(window.begin(), window.end());
  std::unordered_set<SiteRef, SiteHash> seen;
  std::deque<SiteRef> queue{SiteRef{}};
  seen.insert(SiteRef{});
  while (!queue.empty()) {
    SiteRef s = queue.front();
    queue.pop_front();
    for (const auto& inc : incidences_[s.offset]) {
      SiteRef far{s.cell + inc.delta, inc.other};
      if (allowed.count(far) && seen.insert(far).second) queue.push_back(far);
    }
  }
  Rational core = outer - inner;
  for (const auto& s : window) {
    if (sup_norm(s) <= core && !seen.count(s)) {
      throw InvalidArgument("lattice is not connected: site at [" + vec_text(embed(s)) +
                            "] is not reached from the origin within radius " + outer.to_string());
    }
  }
}

std::vector<BondGenerator> bonds_from_displacements(
    const LatticeData& partial, const std::vector<RatVector>& displacements,
    const std::function<bool(const RatVector&, const RatVector&)>& keep) {
  RatMatrix inv = RatMatrix::from_columns(partial.generators).inverse();
  std::vector<BondGenerator> out;
  const int J = static_cast<int>(partial.offsets.size());
  for (int i = 0; i < J; ++i) {
    const RatVector& x = partial.offsets[i];
    for (const auto& delta : displacements) {
      RatVector y = x + delta;
      for (int j = 0; j < J; ++j) {
        RatVector c = inv.apply(y - partial.offsets[j]);
        if (!integral(c)) continue;
        if (keep(x, y)) {
          BondGenerator g;
          g.i = i;
          g.j = j;
          for (std::size_t k = 0; k < c.size(); ++k) g.u[k] = static_cast<std::int32_t>(c[k].num());
          out.push_back(normalize_bond_generator(g));
        }
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RatVector parse_rat_vector(std::string_view text) {
  RatVector out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(Rational::parse(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

RatVector default_direction(const LatticeSpec& lattice) {
  RatVector v(lattice.dimension(), Rational(1));
  for (const auto& g : lattice.bond_generators()) {
    RatVector diff = lattice.embed(SiteRef{g.u, g.j}) - lattice.embed(SiteRef{Cell{}, g.i});
    if (dot(v, diff).is_zero()) {
      throw InvalidArgument("the all-ones direction is orthogonal to a bond of " + lattice.name() +
                            "; pass an explicit direction");
    }
  }
  return v;
}

}  // namespace clusterlab
