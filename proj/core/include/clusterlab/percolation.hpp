#pragma once

#include <cstdint>
#include <vector>

#include "clusterlab/enumerate.hpp"
#include "clusterlab/scalar.hpp"

namespace clusterlab {

struct PercolationOptions {
  EnumOptions enumeration;
  /// Fault injection: adds one to a histogram entry used by the
  /// weight-based form so the two forms disagree.
  bool corrupt_weight_table = false;
};

/// Both forms of the origin-cluster size probability for bond percolation.
struct ExactSizeProbability {
  int n = 0;
  Scalar direct;        // n * sum p^bonds (1-p)^(mono+solv)
  Scalar via_weights;   // n * p^(d n) * G_n with percolation weights; hypercubic only
  bool compared = false;
};

/// True when the lattice is Z^d with its nearest-neighbour bonds.
bool is_hypercubic(const LatticeSpec& lattice);

/// Exact P_p(n) for n = 1..n_max. On hypercubic lattices both forms are
/// computed and must agree exactly (InternalMismatch otherwise).
std::vector<ExactSizeProbability> exact_size_distribution(LatticePtr lattice, const mpq_class& p, int n_max,
                                                          const PercolationOptions& options = {});
Scalar exact_size_probability(LatticePtr lattice, const mpq_class& p, int n, const PercolationOptions& options = {});

struct MCEstimate {
  int n = 0;
  double p_hat = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  double truncated_mass = 0.0;
  std::uint64_t seed = 0;
};

struct MCResult {
  std::vector<MCEstimate> estimates;  // n = 1..n_cap
  std::vector<std::uint64_t> tallies; // tallies[n], n = 1..n_cap
  std::uint64_t truncated = 0;
  std::uint64_t samples = 0;
};

/// Grows the open cluster of the origin on Z^d for each sample; bond states
/// are a pure function of (seed, sample, bond), so results do not depend on
/// the number of threads.
MCResult mc_size_distribution(int d, double p, std::uint64_t samples, int n_cap, std::uint64_t seed,
                              int threads = 1);

struct SizeRatioRow {
  int n = 0;
  Scalar ratio;       // P_p(n+1) / P_p(n)
  double root = 0.0;  // P_p(n)^(1/n)
};

/// Rows for n = 1..n_max.
std::vector<SizeRatioRow> size_ratio_series(LatticePtr lattice, const mpq_class& p, int n_max,
                                            const PercolationOptions& options = {});

}  // namespace clusterlab
