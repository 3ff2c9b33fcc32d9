#pragma once

#include <string>
#include <vector>

#include "clusterlab/scalar.hpp"

namespace clusterlab {

struct SeriesRow {
  int n = 0;
  Scalar value;
};

/// Positive values indexed by strictly increasing n.
struct SeriesTable {
  std::string lattice;
  std::string cls;
  std::string measure;
  std::string weights;
  std::vector<SeriesRow> rows;

  /// Throws InvalidArgument unless n increases strictly and values are positive.
  void check() const;
};

struct GrowthRow {
  int n = 0;
  double root = 0.0;          // value(n)^(1/n)
  bool has_ratio = false;
  Scalar ratio;               // value(n+1)/value(n), exact when values are
  double free_energy = 0.0;   // log(value(n)) / n
};

/// One row per table row; the last row has no ratio. Needs at least two rows.
std::vector<GrowthRow> growth_report(const SeriesTable& s);

struct DiagnosticRow {
  int n = 0;
  Scalar r;                 // n * ((v(n+1)/v(n))^2 - v(n+2)/v(n))
  double running_max = 0.0;
};

/// Needs at least three rows with consecutive n.
std::vector<DiagnosticRow> ratio_diagnostic(const SeriesTable& s);

struct ComparisonRow {
  int n = 0;
  Scalar a;
  Scalar b;
  bool strict_less = false;
  Scalar ratio;  // a / b
};

/// Throws InvalidArgument when the n ranges differ.
std::vector<ComparisonRow> compare_classes(const SeriesTable& a, const SeriesTable& b);

}  // namespace clusterlab
