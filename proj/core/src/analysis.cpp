#include "clusterlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "clusterlab/errors.hpp"

namespace clusterlab {

void SeriesTable::check() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].n <= rows[i - 1].n) throw InvalidArgument("series n must increase strictly");
    if (rows[i].value.sign() <= 0) throw InvalidArgument("series values must be positive");
  }
}

std::vector<GrowthRow> growth_report(const SeriesTable& s) {
  s.check();
  if (s.rows.size() < 2) throw InvalidArgument("growth report needs at least two rows");
  std::vector<GrowthRow> out;
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const auto& r = s.rows[i];
    GrowthRow g;
    g.n = r.n;
    const double v = r.value.to_double();
    g.root = std::pow(v, 1.0 / r.n);
    g.free_energy = std::log(v) / r.n;
    if (i + 1 < s.rows.size()) {
      g.has_ratio = true;
      g.ratio = s.rows[i + 1].value / r.value;
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<DiagnosticRow> ratio_diagnostic(const SeriesTable& s) {
  s.check();
  if (s.rows.size() < 3) throw InvalidArgument("ratio diagnostic needs at least three rows");
  std::vector<DiagnosticRow> out;
  double running = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 2 < s.rows.size(); ++i) {
    const auto& r0 = s.rows[i];
    if (s.rows[i + 1].n != r0.n + 1 || s.rows[i + 2].n != r0.n + 2) continue;
    Scalar q = s.rows[i + 1].value / r0.value;
    Scalar n = r0.value.is_exact() ? Scalar(static_cast<long>(r0.n)) : Scalar::from_double(r0.n);
    DiagnosticRow d;
    d.n = r0.n;
    d.r = n * (q * q - s.rows[i + 2].value / r0.value);
    running = std::max(running, d.r.to_double());
    d.running_max = running;
    out.push_back(std::move(d));
  }
  if (out.empty()) throw InvalidArgument("ratio diagnostic needs three consecutive n");
  return out;
}

std::vector<ComparisonRow> compare_classes(const SeriesTable& a, const SeriesTable& b) {
  a.check();
  b.check();
  if (a.rows.size() != b.rows.size()) throw InvalidArgument("series have different n ranges");
  std::vector<ComparisonRow> out;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].n != b.rows[i].n) throw InvalidArgument("series have different n ranges");
    ComparisonRow c;
    c.n = a.rows[i].n;
    c.a = a.rows[i].value;
    c.b = b.rows[i].value;
    c.strict_less = (c.b - c.a).sign() > 0;
    c.ratio = c.a / c.b;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace clusterlab
