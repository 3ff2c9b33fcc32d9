#include "clusterlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

#include "clusterlab/errors.hpp"

namespace clusterlab {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Rational to_rational(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError("bad rational '" + v.get<std::string>() + "'");
    }
  }
  if (v.is_number_float()) throw ParseError("write non-integer coordinates as \"p/q\" strings");
  throw ParseError("expected a rational");
}

RatVector to_vector(const json& v, int d) {
  if (!v.is_array() || static_cast<int>(v.size()) != d) throw ParseError("expected a vector of length " + std::to_string(d));
  RatVector out;
  for (const auto& x : v) out.push_back(to_rational(x));
  return out;
}

json from_rational(const Rational& r) { return r.to_string(); }

json from_vector(const RatVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(from_rational(x));
  return a;
}

Cell to_cell(const json& v, std::size_t first, int d) {
  Cell c{};
  for (int i = 0; i < d; ++i) c[i] = v.at(first + i).get<std::int32_t>();
  return c;
}

SiteRef to_site(const json& v, const LatticeSpec& L) {
  const int d = L.dimension();
  if (!v.is_array() || static_cast<int>(v.size()) != d + 1) throw ParseError("site needs an offset and " + std::to_string(d) + " coordinates");
  int i = v.at(0).get<int>();
  if (i < 1 || i > L.num_offsets()) throw ParseError("offset index out of range");
  return SiteRef{to_cell(v, 1, d), i - 1};
}

json from_site(const SiteRef& s, int d) {
  json a = json::array();
  a.push_back(s.offset + 1);
  for (int i = 0; i < d; ++i) a.push_back(s.cell[i]);
  return a;
}

ElementSet to_elements(const json& list, const LatticeSpec& L) {
  ElementSet e;
  if (list.is_null()) return e;
  if (!list.is_array()) throw ParseError("pattern parts must be arrays");
  for (const auto& item : list) {
    if (item.contains("site")) {
      e.insert(to_site(item.at("site"), L));
    } else if (item.contains("bond")) {
      const auto& b = item.at("bond");
      if (!b.is_array() || b.size() != 2) throw ParseError("bond needs two sites");
      SiteRef x = to_site(b.at(0), L), y = to_site(b.at(1), L);
      if (!L.adjacent(x, y)) throw ParseError("bond endpoints are not adjacent");
      e.insert(BondRef::between(x, y));
    } else {
      throw ParseError("pattern element must be a site or a bond");
    }
  }
  return e;
}

json from_elements(const ElementSet& e, int d) {
  json a = json::array();
  for (const auto& s : e.sites) a.push_back({{"site", from_site(s, d)}});
  for (const auto& b : e.bonds) a.push_back({{"bond", json::array({from_site(b.a, d), from_site(b.b, d)})}});
  return a;
}

}  // namespace

LatticePtr parse_lattice_json(std::string_view text, const ValidationOptions& options) {
  json j = parse_json(text);
  try {
    LatticeData data;
    data.name = j.value("name", std::string("custom"));
    data.dimension = j.at("dimension").get<int>();
    if (data.dimension < 1 || data.dimension > kMaxDim) throw ParseError("dimension out of range");
    for (const auto& g : j.at("generators")) data.generators.push_back(to_vector(g, data.dimension));
    for (const auto& o : j.at("offsets")) data.offsets.push_back(to_vector(o, data.dimension));
    const bool compact = j.contains("bond_generators");
    for (const auto& b : j.at(compact ? "bond_generators" : "bonds")) {
      BondGenerator g;
      if (compact && (!b.is_array() || b.size() != 3)) throw ParseError("bond generator must be [i, j, [u..]]");
      g.i = (compact ? b.at(0) : b.at("from")).get<int>() - 1;
      g.j = (compact ? b.at(1) : b.at("to")).get<int>() - 1;
      const auto& cell = compact ? b.at(2) : b.at("cell");
      if (!cell.is_array() || static_cast<int>(cell.size()) != data.dimension) throw ParseError("bond cell has wrong length");
      g.u = to_cell(cell, 0, data.dimension);
      data.bonds.push_back(g);
    }
    if (j.contains("direction") && !j.at("direction").is_null()) {
      data.direction = to_vector(j.at("direction"), data.dimension);
    }
    return LatticeSpec::create(std::move(data), options);
  } catch (const json::exception& e) {
    throw ParseError(std::string("lattice JSON: ") + e.what());
  }
}

std::string lattice_to_json(const LatticeSpec& L) {
  json j;
  j["name"] = L.name();
  j["dimension"] = L.dimension();
  json gens = json::array();
  for (int c = 0; c < L.dimension(); ++c) gens.push_back(from_vector(L.generator_matrix().column(c)));
  j["generators"] = gens;
  json offs = json::array();
  for (const auto& o : L.offsets()) offs.push_back(from_vector(o));
  j["offsets"] = offs;
  json bonds = json::array();
  for (const auto& b : L.bond_generators()) {
    json cell = json::array();
    for (int i = 0; i < L.dimension(); ++i) cell.push_back(b.u[i]);
    bonds.push_back(json::array({b.i + 1, b.j + 1, cell}));
  }
  j["bond_generators"] = bonds;
  if (L.direction()) j["direction"] = from_vector(*L.direction());
  return j.dump(2);
}

Pattern parse_pattern_json(const LatticeSpec& lattice, std::string_view text) {
  json j = parse_json(text);
  try {
    ElementSet p1 = to_elements(j.at("P1"), lattice);
    ElementSet p2 = j.contains("P2") ? to_elements(j.at("P2"), lattice) : ElementSet{};
    return Pattern(std::move(p1), std::move(p2));
  } catch (const json::exception& e) {
    throw ParseError(std::string("pattern JSON: ") + e.what());
  }
}

std::string pattern_to_json(const Pattern& p, int dimension) {
  json j;
  j["P1"] = from_elements(p.p1, dimension);
  j["P2"] = from_elements(p.p2, dimension);
  return j.dump(2);
}

SeriesTable parse_series_csv(std::string_view text) {
  SeriesTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string tag = "#manifest:";
      if (line.compare(0, tag.size(), tag) == 0) {
        json m = parse_json(std::string_view(line).substr(tag.size()));
        auto field = [&](const char* k) { return m.contains(k) && m[k].is_string() ? m[k].get<std::string>() : std::string(); };
        t.lattice = field("lattice");
        t.cls = field("class");
        t.measure = field("measure");
        t.weights = field("weights");
      }
      continue;
    }
    if (line.rfind("n,", 0) == 0) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected n,value");
    auto end = line.find(',', comma + 1);
    SeriesRow row;
    try {
      std::size_t used = 0;
      row.n = std::stoi(line.substr(0, comma), &used);
      if (used != comma) throw ParseError("bad n");
      std::string field = line.substr(comma + 1, end == std::string::npos ? std::string::npos : end - comma - 1);
      if (field.empty() && end != std::string::npos) {
        auto next = line.find(',', end + 1);
        field = line.substr(end + 1, next == std::string::npos ? std::string::npos : next - end - 1);
      }
      row.value = Scalar::parse(field);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": cannot parse '" + line + "'");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_file_atomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp + " failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot move " + tmp + " to " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace clusterlab
