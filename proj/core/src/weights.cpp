#include "clusterlab/weights.hpp"

#include <algorithm>
#include <cmath>

#include "clusterlab/errors.hpp"

namespace clusterlab {

namespace {

void require_positive(const mpq_class& q, const char* name) {
  if (sgn(q) <= 0) throw InvalidArgument(std::string(name) + " must be positive");
}

Scalar lift(const mpq_class& q, ArithmeticMode mode) {
  return mode == ArithmeticMode::kExact ? Scalar(q) : Scalar::from_double(q.get_d());
}

}  // namespace

WeightModel WeightModel::unit() { return WeightModel{}; }

WeightModel WeightModel::collapse(const mpq_class& zm, const mpq_class& zs) {
  require_positive(zm, "z_m");
  require_positive(zs, "z_s");
  WeightModel w;
  w.kind = Kind::kCollapse;
  w.zm = zm;
  w.zs = zs;
  return w;
}

WeightModel WeightModel::cycle(const mpq_class& z) {
  require_positive(z, "z");
  WeightModel w;
  w.kind = Kind::kCycle;
  w.z = z;
  return w;
}

WeightModel WeightModel::percolation(const mpq_class& p) {
  if (sgn(p) <= 0 || p >= 1) throw InvalidArgument("p must lie in (0,1)");
  WeightModel w;
  w.kind = Kind::kPercolation;
  w.p = p;
  w.zm = (1 - p) / p;
  return w;
}

Scalar WeightModel::monomer() const {
  if (kind == Kind::kCollapse || kind == Kind::kPercolation) return lift(zm, mode);
  return lift(1, mode);
}

Scalar WeightModel::solvent() const {
  switch (kind) {
    case Kind::kCollapse:
      return lift(zs, mode);
    case Kind::kPercolation: {
      mpq_class q = 1 - p;
      if (mode == ArithmeticMode::kFloat) return Scalar::from_double(q.get_d() / std::sqrt(p.get_d()));
      mpq_class coeff = q / p;
      return Scalar::with_surd(0, coeff, p);
    }
    default:
      return lift(1, mode);
  }
}

Scalar WeightModel::cycle_fugacity() const { return lift(kind == Kind::kCycle ? z : mpq_class(1), mode); }

std::string WeightModel::describe() const {
  std::string s;
  switch (kind) {
    case Kind::kUnit:
      s = "unit";
      break;
    case Kind::kCollapse:
      s = "collapse(zm=" + mpq_to_string(zm) + ",zs=" + mpq_to_string(zs) + ")";
      break;
    case Kind::kCycle:
      s = "cycle(z=" + mpq_to_string(z) + ")";
      break;
    case Kind::kPercolation:
      s = "percolation(p=" + mpq_to_string(p) + ")";
      break;
  }
  if (mode == ArithmeticMode::kFloat) s += "[float]";
  return s;
}

WeightModel WeightModel::as_float() const {
  WeightModel w = *this;
  w.mode = ArithmeticMode::kFloat;
  return w;
}

WeightModel make_weight_model(const std::string& kind, const std::string& zm, const std::string& zs,
                              const std::string& z, const std::string& p) {
  auto need = [&](const std::string& v, const char* name) {
    if (v.empty()) throw InvalidArgument(kind + " weights need --" + name);
    return parse_mpq(v);
  };
  if (kind == "unit") return WeightModel::unit();
  if (kind == "collapse") return WeightModel::collapse(need(zm, "zm"), need(zs, "zs"));
  if (kind == "cycle") return WeightModel::cycle(need(z, "z"));
  if (kind == "percolation") return WeightModel::percolation(need(p, "p"));
  throw InvalidArgument("unknown weight model '" + kind + "'");
}

Scalar weight_of(const StatKey& stats, const WeightModel& w) {
  switch (w.kind) {
    case WeightModel::Kind::kUnit:
      return lift(1, w.mode);
    case WeightModel::Kind::kCycle:
      return w.cycle_fugacity().pow(stats.bonds - stats.sites + 1);
    default:
      return w.monomer().pow(stats.mono) * w.solvent().pow(stats.solv);
  }
}

Scalar weight(const Cluster& g, const WeightModel& w) {
  LocalStatistics s = local_statistics(g);
  StatKey key;
  key.sites = static_cast<std::int32_t>(s.n_sites);
  key.bonds = static_cast<std::int32_t>(s.n_bonds);
  key.mono = static_cast<std::int32_t>(s.mono);
  key.solv = static_cast<std::int32_t>(s.solv);
  return weight_of(key, w);
}

Scalar weighted_sum(const StatHistogram& histogram, const WeightModel& w) {
  Scalar total = lift(0, w.mode);
  for (const auto& [key, count] : histogram) {
    total += weight_of(key, w) * lift(mpq_class(std::to_string(count)), w.mode);
  }
  return total;
}

Scalar partition_sum(const EnumTask& task, int n, const WeightModel& w, const ClusterFilter& filter,
                     const EnumOptions& options) {
  if (n > task.n_max) throw InvalidArgument("n exceeds the task's n_max");
  if (!filter) {
    EnumTask t = task;
    t.n_max = n;
    return weighted_sum(statistics_histograms(t, options)[n], w);
  }
  Scalar total = lift(0, w.mode);
  enumerate_clusters(
      task, n,
      [&](const Cluster& g) {
        if (filter(g)) total += weight(g, w);
      },
      options);
  return total;
}

std::vector<Scalar> partition_series(const EnumTask& task, const WeightModel& w, const EnumOptions& options) {
  auto hist = statistics_histograms(task, options);
  std::vector<Scalar> out;
  for (int n = 1; n <= task.n_max; ++n) out.push_back(weighted_sum(hist[n], w));
  return out;
}

double perturbation_bound(const WeightModel& w, const LatticeSpec& lattice) {
  double m = 1.0;
  for (const Scalar& f : {w.monomer(), w.solvent(), w.cycle_fugacity()}) {
    double v = f.to_double();
    m = std::max({m, v, 1.0 / v});
  }
  return std::pow(m, 2 * lattice.max_degree());
}

}  // namespace clusterlab
