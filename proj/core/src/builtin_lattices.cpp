#include <algorithm>
#include <charconv>
#include <cmath>

#include "clusterlab/errors.hpp"
#include "clusterlab/lattice.hpp"

namespace clusterlab {
namespace {

RatVector unit(int d, int k) {
  RatVector v(d, Rational(0));
  v[k] = 1;
  return v;
}

RatVector ints(std::initializer_list<std::int64_t> xs) {
  RatVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

std::vector<RatVector> identity_columns(int d, std::int64_t scale = 1) {
  std::vector<RatVector> cols;
  for (int k = 0; k < d; ++k) {
    RatVector c = unit(d, k);
    c[k] = scale;
    cols.push_back(c);
  }
  return cols;
}

std::vector<RatVector> axis_steps(int d) {
  std::vector<RatVector> out;
  for (int k = 0; k < d; ++k) {
    RatVector v = unit(d, k);
    out.push_back(v);
    v[k] = -1;
    out.push_back(v);
  }
  return out;
}

bool keep_all(const RatVector&, const RatVector&) { return true; }

int parse_int_param(std::string_view s, const char* what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw InvalidArgument(std::string("bad ") + what + ": '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

LatticePtr hypercubic(int d) {
  if (d < 1 || d > kMaxDim) throw InvalidArgument("hypercubic dimension out of range");
  LatticeData data;
  data.name = d == 2 ? "z2" : d == 3 ? "z3" : "hyp:" + std::to_string(d);
  data.dimension = d;
  data.generators = identity_columns(d);
  data.offsets = {RatVector(d, Rational(0))};
  for (int k = 0; k < d; ++k) {
    BondGenerator g;
    g.u[k] = 1;
    data.bonds.push_back(g);
  }
  return LatticeSpec::create(std::move(data));
}

LatticePtr triangular() {
  LatticeData data;
  data.name = "tri";
  data.dimension = 2;
  data.generators = identity_columns(2);
  data.offsets = {ints({0, 0})};
  data.bonds = {BondGenerator{0, 0, make_cell({1, 0})}, BondGenerator{0, 0, make_cell({0, 1})},
                BondGenerator{0, 0, make_cell({1, 1})}};
  return LatticeSpec::create(std::move(data));
}

LatticePtr hexagonal() {
  LatticeData data;
  data.name = "hex";
  data.dimension = 2;
  data.generators = {ints({1, 1}), ints({1, -1})};
  data.offsets = {ints({0, 0}), ints({1, 0})};
  data.bonds = bonds_from_displacements(data, axis_steps(2), [](const RatVector& x, const RatVector& y) {
    if (x[1] == y[1]) return true;
    const RatVector& low = x[1] < y[1] ? x : y;
    return (low[0] + low[1]).num() % 2 == 0;
  });
  return LatticeSpec::create(std::move(data));
}

LatticePtr kagome() {
  LatticeData data;
  data.name = "kagome";
  data.dimension = 2;
  data.generators = identity_columns(2, 2);
  data.offsets = {ints({0, 0}), ints({1, 0}), ints({0, 1})};
  data.bonds = {BondGenerator{0, 1, Cell{}},           BondGenerator{0, 2, Cell{}},
                BondGenerator{1, 2, Cell{}},           BondGenerator{1, 0, make_cell({1, 0})},
                BondGenerator{2, 0, make_cell({0, 1})}, BondGenerator{2, 1, make_cell({-1, 1})}};
  return LatticeSpec::create(std::move(data));
}

LatticePtr rectangular(int r1, int r2) {
  if (r1 < 1 || r2 < 1) throw InvalidArgument("rectangular lattice needs r1, r2 >= 1");
  LatticeData data;
  data.name = "rect:" + std::to_string(r1) + "," + std::to_string(r2);
  data.dimension = 2;
  data.generators = {ints({r1, 0}), ints({0, r2})};
  data.offsets.push_back(ints({0, 0}));
  for (int b = 1; b < r2; ++b) data.offsets.push_back(ints({0, b}));
  for (int a = 1; a < r1; ++a) data.offsets.push_back(ints({a, 0}));
  data.bonds = bonds_from_displacements(data, axis_steps(2), [r1, r2](const RatVector& x, const RatVector& y) {
    if (x[1] == y[1]) return x[1].num() % r2 == 0;
    return x[0].num() % r1 == 0;
  });
  return LatticeSpec::create(std::move(data));
}

LatticePtr spread_out(int d, int range, SpreadNorm norm) {
  if (d < 1 || d > kMaxDim) throw InvalidArgument("spread-out dimension out of range");
  if (range <= 0) throw InvalidArgument("spread-out range must be positive");
  LatticeData data;
  const char* norm_name = norm == SpreadNorm::kSup ? "sup" : norm == SpreadNorm::kL1 ? "l1" : "l2";
  data.name = "spread:" + std::to_string(d) + "," + std::to_string(range) + "," + norm_name;
  data.dimension = d;
  data.generators = identity_columns(d);
  data.offsets = {RatVector(d, Rational(0))};
  Cell c{};
  for (int k = 0; k < d; ++k) c[k] = -range;
  while (true) {
    long l1 = 0, l2 = 0, sup = 0;
    for (int k = 0; k < d; ++k) {
      long a = std::abs(c[k]);
      l1 += a;
      l2 += a * a;
      sup = std::max(sup, a);
    }
    bool inside = norm == SpreadNorm::kSup ? sup <= range
                  : norm == SpreadNorm::kL1 ? l1 <= range
                                            : l2 <= static_cast<long>(range) * range;
    if (inside && sup > 0) data.bonds.push_back(normalize_bond_generator(BondGenerator{0, 0, c}));
    int k = 0;
    while (k < d) {
      if (c[k] < range) {
        ++c[k];
        break;
      }
      c[k] = -range;
      ++k;
    }
    if (k == d) break;
  }
  return LatticeSpec::create(std::move(data));
}

LatticePtr dead_end() {
  LatticeData data;
  data.name = "dead_end";
  data.dimension = 2;
  data.generators = identity_columns(2);
  data.offsets = {ints({0, 0}), RatVector{Rational(1, 2), Rational(1, 2)}};
  data.bonds = {BondGenerator{0, 0, make_cell({1, 0})}, BondGenerator{0, 0, make_cell({0, 1})},
                BondGenerator{0, 1, Cell{}}};
  return LatticeSpec::create(std::move(data));
}

namespace {

std::vector<RatVector> diagonal_steps() {
  std::vector<RatVector> out;
  for (int a : {-1, 1}) {
    for (int b : {-1, 1}) {
      for (int c : {-1, 1}) out.push_back(ints({a, b, c}));
    }
  }
  return out;
}

}  // namespace

LatticePtr bcc() {
  LatticeData data;
  data.name = "bcc";
  data.dimension = 3;
  data.generators = {ints({2, 0, 0}), ints({0, 2, 0}), ints({1, 1, 1})};
  data.offsets = {ints({0, 0, 0})};
  data.bonds = bonds_from_displacements(data, diagonal_steps(), keep_all);
  return LatticeSpec::create(std::move(data));
}

LatticePtr bcc_literal() {
  LatticeData data;
  data.name = "bcc_literal";
  data.dimension = 3;
  data.generators = {ints({3, 0, 0}), ints({-1, 1, 0}), ints({-1, 0, 1})};
  data.offsets = {ints({0, 0, 0})};
  data.bonds = bonds_from_displacements(data, diagonal_steps(), keep_all);
  ValidationOptions options;
  options.check_connectivity = false;
  return LatticeSpec::create(std::move(data), options);
}

LatticePtr fcc() {
  LatticeData data;
  data.name = "fcc";
  data.dimension = 3;
  data.generators = {ints({1, 1, 0}), ints({1, 0, 1}), ints({0, 1, 1})};
  data.offsets = {ints({0, 0, 0})};
  std::vector<RatVector> steps;
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      for (int c = -1; c <= 1; ++c) {
        if (a * a + b * b + c * c == 2) steps.push_back(ints({a, b, c}));
      }
    }
  }
  data.bonds = bonds_from_displacements(data, steps, keep_all);
  return LatticeSpec::create(std::move(data));
}

LatticePtr slab(int d, const std::vector<int>& bounds) {
  const int m = static_cast<int>(bounds.size());
  if (m < 1 || m >= d) throw InvalidArgument("slab needs 1 <= number of bounds < d");
  if (d - m > kMaxDim) throw InvalidArgument("slab dimension out of range");
  for (int b : bounds) {
    if (b < 1) throw InvalidArgument("slab bounds must be positive");
  }
  const int k = d - m;
  std::vector<int> radix(m);
  std::int64_t J = 1;
  for (int i = m - 1; i >= 0; --i) {
    radix[i] = static_cast<int>(J);
    J *= bounds[i] + 1;
  }
  if (J > 4096) throw InvalidArgument("slab cross-section too large");

  LatticeData data;
  data.name = "slab:" + std::to_string(d);
  for (int b : bounds) data.name += "," + std::to_string(b);
  data.dimension = k;
  data.generators = identity_columns(k);
  for (std::int64_t c = 0; c < J; ++c) {
    RatVector a(k, Rational(0));
    a[0] = Rational(c, J);
    data.offsets.push_back(a);
  }
  for (std::int64_t c = 0; c < J; ++c) {
    for (int axis = 0; axis < k; ++axis) {
      BondGenerator g;
      g.i = g.j = static_cast<int>(c);
      g.u[axis] = 1;
      data.bonds.push_back(g);
    }
    for (int i = 0; i < m; ++i) {
      int coord = static_cast<int>(c / radix[i]) % (bounds[i] + 1);
      if (coord < bounds[i]) data.bonds.push_back(BondGenerator{static_cast<int>(c), static_cast<int>(c + radix[i]), Cell{}});
    }
  }
  return LatticeSpec::create(std::move(data));
}

std::vector<std::string> builtin_lattice_names() {
  return {"z2", "z3", "hyp:D", "tri", "hex", "kagome", "rect:R1,R2", "spread:D,M[,sup|l1|l2]",
          "dead_end", "bcc", "bcc_literal", "fcc", "slab:D,B1[,B2...]"};
}

LatticePtr builtin_lattice(std::string_view spec) {
  std::string_view name = spec;
  std::vector<std::string> params;
  if (auto colon = spec.find(':'); colon != std::string_view::npos) {
    name = spec.substr(0, colon);
    params = split(spec.substr(colon + 1), ',');
  }
  auto expect = [&](std::size_t lo, std::size_t hi) {
    if (params.size() < lo || params.size() > hi) {
      throw InvalidArgument("wrong number of parameters for lattice '" + std::string(name) + "'");
    }
  };
  if (name == "z2" || name == "square") {
    expect(0, 0);
    return hypercubic(2);
  }
  if (name == "z3" || name == "cubic") {
    expect(0, 0);
    return hypercubic(3);
  }
  if (name == "hyp" || name == "hypercubic") {
    expect(1, 1);
    return hypercubic(parse_int_param(params[0], "dimension"));
  }
  if (name == "tri" || name == "triangular") {
    expect(0, 0);
    return triangular();
  }
  if (name == "hex" || name == "hexagonal") {
    expect(0, 0);
    return hexagonal();
  }
  if (name == "kagome" || name == "kag") {
    expect(0, 0);
    return kagome();
  }
  if (name == "rect" || name == "rectangular") {
    expect(2, 2);
    return rectangular(parse_int_param(params[0], "r1"), parse_int_param(params[1], "r2"));
  }
  if (name == "spread" || name == "spread_out") {
    expect(2, 3);
    SpreadNorm norm = SpreadNorm::kSup;
    if (params.size() == 3) {
      if (params[2] == "sup") norm = SpreadNorm::kSup;
      else if (params[2] == "l1") norm = SpreadNorm::kL1;
      else if (params[2] == "l2") norm = SpreadNorm::kL2;
      else throw InvalidArgument("unknown norm '" + params[2] + "'");
    }
    return spread_out(parse_int_param(params[0], "dimension"), parse_int_param(params[1], "range"), norm);
  }
  if (name == "dead_end" || name == "de") {
    expect(0, 0);
    return dead_end();
  }
  if (name == "bcc") {
    expect(0, 0);
    return bcc();
  }
  if (name == "bcc_literal") {
    expect(0, 0);
    return bcc_literal();
  }
  if (name == "fcc") {
    expect(0, 0);
    return fcc();
  }
  if (name == "slab") {
    if (params.size() < 2) throw InvalidArgument("slab needs D and at least one bound");
    std::vector<int> bounds;
    for (std::size_t i = 1; i < params.size(); ++i) bounds.push_back(parse_int_param(params[i], "bound"));
    return slab(parse_int_param(params[0], "dimension"), bounds);
  }
  throw InvalidArgument("unknown lattice '" + std::string(spec) + "'");
}

}  // namespace clusterlab
