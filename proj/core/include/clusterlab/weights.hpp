#pragma once

#include <functional>
#include <string>
#include <vector>

#include "clusterlab/enumerate.hpp"
#include "clusterlab/scalar.hpp"

namespace clusterlab {

/// Translation-invariant cluster weight.
struct WeightModel {
  enum class Kind { kUnit, kCollapse, kCycle, kPercolation };

  Kind kind = Kind::kUnit;
  mpq_class zm = 1;
  mpq_class zs = 1;
  mpq_class z = 1;
  mpq_class p = 0;
  ArithmeticMode mode = ArithmeticMode::kExact;

  static WeightModel unit();
  static WeightModel collapse(const mpq_class& zm, const mpq_class& zs);
  static WeightModel cycle(const mpq_class& z);
  /// Same as collapse((1-p)/p, (1-p)/sqrt(p)) with sqrt(p) kept exact.
  static WeightModel percolation(const mpq_class& p);

  /// Monomer-contact fugacity (1 for unit and cycle).
  Scalar monomer() const;
  /// Solvent-contact fugacity (1 for unit and cycle).
  Scalar solvent() const;
  /// Cycle fugacity (1 unless kind is cycle).
  Scalar cycle_fugacity() const;

  /// "unit", "collapse(zm=2,zs=1/2)", "cycle(z=3)", "percolation(p=1/2)".
  std::string describe() const;
  /// Copy evaluating in double precision.
  WeightModel as_float() const;
};

/// kind: unit | collapse | cycle | percolation. Unused parameters are ignored;
/// missing required ones throw InvalidArgument.
WeightModel make_weight_model(const std::string& kind, const std::string& zm, const std::string& zs,
                              const std::string& z, const std::string& p);

Scalar weight(const Cluster& g, const WeightModel& w);
/// Weight of any connected cluster with these statistics.
Scalar weight_of(const StatKey& stats, const WeightModel& w);

using ClusterFilter = std::function<bool(const Cluster&)>;

/// Weighted sum over canonical clusters of size n, optionally filtered.
Scalar partition_sum(const EnumTask& task, int n, const WeightModel& w, const ClusterFilter& filter = {},
                     const EnumOptions& options = {});

/// Weighted sums for n = 1..task.n_max (index 0 holds n = 1), from one
/// statistics pass.
std::vector<Scalar> partition_series(const EnumTask& task, const WeightModel& w, const EnumOptions& options = {});

/// Weighted sum of a statistics histogram.
Scalar weighted_sum(const StatHistogram& histogram, const WeightModel& w);

/// Largest single-element weight ratio bound: max(z_m, 1/z_m, z_s, 1/z_s, z, 1/z)^c,
/// c = twice the lattice max degree (bonds touching one bond and its endpoints).
double perturbation_bound(const WeightModel& w, const LatticeSpec& lattice);

}  // namespace clusterlab
