#include "clusterlab/percolation.hpp"

#include <atomic>
#include <cmath>
#include <deque>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "clusterlab/errors.hpp"
#include "clusterlab/weights.hpp"

namespace clusterlab {

namespace {

mpq_class power(const mpq_class& base, long e) {
  mpq_class r = 1;
  mpq_class b = base;
  if (e < 0) {
    b = 1 / b;
    e = -e;
  }
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

bool is_hypercubic(const LatticeSpec& lattice) {
  const int d = lattice.dimension();
  if (lattice.num_offsets() != 1 || lattice.degree(0) != 2 * d) return false;
  const RatMatrix& a = lattice.generator_matrix();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (a.at(i, j) != Rational(i == j ? 1 : 0)) return false;
    }
  }
  for (const auto& b : lattice.bond_generators()) {
    int nonzero = 0;
    for (int i = 0; i < d; ++i) nonzero += b.u[i] != 0 ? (std::abs(b.u[i]) == 1 ? 1 : 2) : 0;
    if (nonzero != 1) return false;
  }
  return true;
}

std::vector<ExactSizeProbability> exact_size_distribution(LatticePtr lattice, const mpq_class& p, int n_max,
                                                          const PercolationOptions& options) {
  if (sgn(p) <= 0 || p >= 1) throw InvalidArgument("p must lie in (0,1)");
  EnumTask task{lattice, ClusterClass::kBondAnimal, SizeMeasure::kSites, n_max};
  auto hist = statistics_histograms(task, options.enumeration);
  const bool hyper = is_hypercubic(*lattice);
  const int d = lattice->dimension();
  const WeightModel w = WeightModel::percolation(p);
  const mpq_class q = 1 - p;

  std::vector<ExactSizeProbability> out;
  for (int n = 1; n <= n_max; ++n) {
    ExactSizeProbability row;
    row.n = n;
    mpq_class direct = 0;
    for (const auto& [key, count] : hist[n]) {
      direct += mpq_class(std::to_string(count)) * power(p, key.bonds) * power(q, key.mono + key.solv);
    }
    row.direct = Scalar(mpq_class(direct * n));
    if (hyper) {
      StatHistogram h = hist[n];
      if (options.corrupt_weight_table && !h.empty()) h.begin()->second += 1;
      Scalar g = weighted_sum(h, w);
      Scalar via = Scalar(mpq_class(n)) * Scalar(power(p, static_cast<long>(d) * n)) * g;
      if (!via.is_rational()) throw InternalMismatch("weight-based size probability is not rational");
      row.via_weights = via;
      row.compared = true;
      if (!(row.via_weights == row.direct)) {
        throw InternalMismatch("size probability forms disagree at n=" + std::to_string(n) + ": " +
                               row.direct.to_string() + " vs " + row.via_weights.to_string());
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

Scalar exact_size_probability(LatticePtr lattice, const mpq_class& p, int n, const PercolationOptions& options) {
  return exact_size_distribution(std::move(lattice), p, n, options).back().direct;
}

MCResult mc_size_distribution(int d, double p, std::uint64_t samples, int n_cap, std::uint64_t seed, int threads) {
  if (d < 1 || d > kMaxDim) throw InvalidArgument("dimension out of range");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("p must lie in [0,1]");
  if (samples < 1) throw InvalidArgument("samples must be at least 1");
  if (n_cap < 1) throw InvalidArgument("cap must be at least 1");

  const std::uint64_t chunk = 4096;
  const std::uint64_t chunks = (samples + chunk - 1) / chunk;
  std::vector<std::vector<std::uint64_t>> tallies(chunks);
  std::atomic<std::uint64_t> next{0};
  const std::uint64_t seed_mix = splitmix(seed);

  auto open = [&](std::uint64_t sample, const Cell& lo, int axis) {
    std::uint64_t h = splitmix(seed_mix ^ splitmix(sample));
    for (int i = 0; i < d; ++i) h = splitmix(h ^ static_cast<std::uint32_t>(lo[i]));
    h = splitmix(h ^ static_cast<std::uint64_t>(axis));
    return static_cast<double>(h >> 11) * 0x1.0p-53 < p;
  };

  auto worker = [&]() {
    std::unordered_set<Cell, CellHash> seen;
    std::deque<Cell> queue;
    for (;;) {
      std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) break;
      std::vector<std::uint64_t> t(n_cap + 2, 0);  // index n_cap + 1 = truncated
      const std::uint64_t end = std::min(samples, (c + 1) * chunk);
      for (std::uint64_t s = c * chunk; s < end; ++s) {
        seen.clear();
        queue.clear();
        seen.insert(Cell{});
        queue.push_back(Cell{});
        bool truncated = false;
        while (!queue.empty() && !truncated) {
          Cell x = queue.front();
          queue.pop_front();
          for (int axis = 0; axis < d && !truncated; ++axis) {
            for (int sign : {1, -1}) {
              Cell y = x;
              y[axis] += sign;
              const Cell& lo = sign > 0 ? x : y;
              if (seen.count(y) || !open(s, lo, axis)) continue;
              seen.insert(y);
              queue.push_back(y);
              if (static_cast<int>(seen.size()) > n_cap) {
                truncated = true;
                break;
              }
            }
          }
        }
        ++t[truncated ? n_cap + 1 : seen.size()];
      }
      tallies[c] = std::move(t);
    }
  };
  const int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(chunks)));
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  MCResult r;
  r.samples = samples;
  r.tallies.assign(n_cap + 1, 0);
  for (const auto& t : tallies) {
    for (int n = 1; n <= n_cap; ++n) r.tallies[n] += t[n];
    r.truncated += t[n_cap + 1];
  }
  for (int n = 1; n <= n_cap; ++n) {
    MCEstimate e;
    e.n = n;
    e.samples = samples;
    e.seed = seed;
    e.p_hat = static_cast<double>(r.tallies[n]) / static_cast<double>(samples);
    e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(samples));
    e.truncated_mass = static_cast<double>(r.truncated) / static_cast<double>(samples);
    r.estimates.push_back(e);
  }
  return r;
}

std::vector<SizeRatioRow> size_ratio_series(LatticePtr lattice, const mpq_class& p, int n_max,
                                            const PercolationOptions& options) {
  auto exact = exact_size_distribution(std::move(lattice), p, n_max + 1, options);
  std::vector<SizeRatioRow> out;
  for (int n = 1; n <= n_max; ++n) {
    SizeRatioRow row;
    row.n = n;
    row.ratio = exact[n].direct / exact[n - 1].direct;
    row.root = std::pow(exact[n - 1].direct.to_double(), 1.0 / n);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace clusterlab
