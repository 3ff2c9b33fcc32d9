#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "clusterlab/analysis.hpp"
#include "clusterlab/enumerate.hpp"
#include "clusterlab/errors.hpp"
#include "clusterlab/io.hpp"
#include "clusterlab/pattern.hpp"
#include "clusterlab/percolation.hpp"
#include "clusterlab/weights.hpp"
#include "json.hpp"

namespace clusterlab::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

int default_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct Common {
  std::string lattice = "z2";
  std::string lattice_file;
  std::string direction;
  std::string cls = "site-animal";
  std::string measure = "sites";
  int n = 0;
  int threads = default_threads();
  std::string out;
  std::uint64_t budget = 0;
  bool quiet = false;
};

struct WeightArgs {
  std::string kind = "unit";
  std::string zm, zs, z, p;
  bool use_float = false;

  WeightModel model() const {
    WeightModel w = make_weight_model(kind, zm, zs, z, p);
    return use_float ? w.as_float() : w;
  }
};

void add_output(CLI::App* app, Common& c) {
  app->add_option("--out", c.out, "Output file (written atomically); stdout when omitted");
  app->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--budget", c.budget, "Node budget (default: CLUSTERLAB_BUDGET or 1e9)");
  app->add_flag("--quiet", c.quiet, "No progress messages");
}

void add_lattice(CLI::App* app, Common& c) {
  auto* name = app->add_option("--lattice", c.lattice, "Builtin lattice name");
  auto* file = app->add_option("--lattice-file", c.lattice_file, "Lattice JSON file");
  name->excludes(file);
  app->add_option("--direction", c.direction, "Direction vector for directed classes, e.g. 1,1");
}

void add_class(CLI::App* app, Common& c) {
  app->add_option("--class", c.cls, "Cluster class");
  app->add_option("--measure", c.measure, "Size measure: sites or bonds");
}

void add_weights(CLI::App* app, WeightArgs& w) {
  app->add_option("--weights", w.kind, "unit, collapse, cycle or percolation");
  app->add_option("--zm", w.zm, "Monomer-contact fugacity (collapse)");
  app->add_option("--zs", w.zs, "Solvent-contact fugacity (collapse)");
  app->add_option("--z", w.z, "Cycle fugacity (cycle)");
  app->add_option("--p", w.p, "Bond probability (percolation weights)");
  app->add_flag("--float", w.use_float, "Double precision instead of exact arithmetic");
}

LatticePtr load_lattice(const Common& c, bool directed, std::ostream& err) {
  LatticePtr L = c.lattice_file.empty() ? builtin_lattice(c.lattice) : parse_lattice_json(read_file(c.lattice_file));
  if (!c.quiet && L->name() == "bcc_literal") {
    err << "note: bcc_literal is a disconnected graph; clusters stay in one component\n";
  }
  if (!c.direction.empty()) return L->with_direction(parse_rat_vector(c.direction));
  if (directed && !L->directed()) return L->with_direction(default_direction(*L));
  return L;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << v;
  return ss.str();
}

std::string fmt_double(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

std::string csv_scalar(const Scalar& s) {
  std::string t = s.to_string();
  if (t.find(',') != std::string::npos) return "\"" + t + "\"";
  return t;
}

class Report {
 public:
  Report(const std::vector<std::string>& args, std::string command) : start_(Clock::now()) {
    manifest_["command"] = std::move(command);
    manifest_["argv"] = args;
    manifest_["version"] = CLUSTERLAB_VERSION;
  }

  json& manifest() { return manifest_; }
  std::ostringstream& body() { return body_; }

  void lattice(const LatticeSpec& L) {
    manifest_["lattice"] = L.name();
    manifest_["lattice_digest"] = hex64(L.digest());
    if (L.direction()) {
      std::string v;
      for (const auto& x : *L.direction()) v += (v.empty() ? "" : ",") + x.to_string();
      manifest_["direction"] = v;
    }
  }

  void task(const EnumTask& t, const EnumOptions& o) {
    lattice(*t.lattice);
    manifest_["class"] = std::string(class_name(t.cls));
    manifest_["measure"] = std::string(measure_name(t.measure));
    manifest_["budget"] = o.node_budget;
  }

  void emit(const std::string& path, std::ostream& out) {
    double wall = std::chrono::duration<double>(Clock::now() - start_).count();
    manifest_["wall_time_s"] = std::round(wall * 1000.0) / 1000.0;
    std::string text = "#manifest: " + manifest_.dump() + "\n" + body_.str();
    if (path.empty()) out << text;
    else write_file_atomic(path, text);
  }

 private:
  Clock::time_point start_;
  json manifest_;
  std::ostringstream body_;
};

EnumOptions enum_options(const Common& c) {
  EnumOptions o;
  o.threads = c.threads;
  if (c.budget > 0) o.node_budget = c.budget;
  return o;
}

EnumTask make_task(const Common& c, std::ostream& err) {
  ClusterClass cls = parse_class(c.cls);
  SizeMeasure m = parse_measure(c.measure);
  EnumTask t{load_lattice(c, is_directed(cls), err), cls, m, c.n};
  check_task(t);
  return t;
}

void progress(const Common& c, std::ostream& err, const std::string& msg) {
  if (!c.quiet) err << msg << "\n";
}

Pattern load_pattern(const std::string& file, const std::string& motif, const LatticeSpec& L) {
  if (!file.empty()) return parse_pattern_json(L, read_file(file));
  if (motif == "missing-north") return missing_north_neighbor(L);
  if (motif == "single-site") return single_site_pattern(0);
  throw InvalidArgument("unknown motif '" + motif + "' (missing-north, single-site)");
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    if (ch == '\n') {
      out += "\\n";
      continue;
    }
    out += ch;
  }
  return out;
}

int fail(std::ostream& err, const std::string& kind, const std::string& reason, int code) {
  err << "error: kind=" << kind << " reason=\"" << escape(reason) << "\"\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact enumeration and pattern analysis of lattice clusters", "cluster-lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CLUSTERLAB_VERSION);

  Common c;
  WeightArgs wa;

  auto* enumerate = app.add_subcommand("enumerate", "Count canonical clusters by size");
  bool use_oracle = false;
  std::string emit_file;
  add_lattice(enumerate, c);
  add_class(enumerate, c);
  add_output(enumerate, c);
  enumerate->add_option("--n", c.n, "Largest size")->required()->check(CLI::PositiveNumber);
  enumerate->add_flag("--oracle", use_oracle, "Use the breadth-first oracle instead of the fast search");
  enumerate->add_option("--emit", emit_file, "Write the clusters of size n, one per line");

  auto* partition = app.add_subcommand("partition", "Weighted sums G_n");
  add_lattice(partition, c);
  add_class(partition, c);
  add_output(partition, c);
  add_weights(partition, wa);
  partition->add_option("--n", c.n, "Largest size")->required()->check(CLI::PositiveNumber);

  auto* pattern = app.add_subcommand("pattern", "Pattern occurrences, tails and the U/V flip identity");
  pattern->require_subcommand(1);
  std::string pattern_file, motif = "missing-north";
  int n_lo = 1, m_fixed = -1, window_side = 7;
  double epsilon = -1.0;
  bool strict = false;
  std::string cluster_text, cluster_file, site_text;

  auto* pcount = pattern->add_subcommand("count", "Histogram of occurrence counts");
  auto* ptail = pattern->add_subcommand("tail", "Weighted sums over clusters with few occurrences");
  auto* pflip = pattern->add_subcommand("flip-identity", "Residuals of the U/V flip identity");
  auto* pinsert = pattern->add_subcommand("insert", "Splice the builtin pattern into a cluster");
  for (auto* sub : {pcount, ptail, pflip, pinsert}) {
    add_lattice(sub, c);
    add_class(sub, c);
    add_output(sub, c);
  }
  for (auto* sub : {pcount, ptail, pflip}) {
    add_weights(sub, wa);
    sub->add_option("--n", c.n, "Largest size")->required()->check(CLI::PositiveNumber);
    sub->add_option("--n-lo", n_lo, "Smallest size")->check(CLI::PositiveNumber);
  }
  for (auto* sub : {pcount, ptail}) {
    sub->add_option("--pattern", pattern_file, "Pattern JSON file");
    sub->add_option("--motif", motif, "Builtin motif: missing-north or single-site");
  }
  auto* mopt = ptail->add_option("--m", m_fixed, "Occurrence bound")->check(CLI::NonNegativeNumber);
  auto* eopt = ptail->add_option("--epsilon", epsilon, "Bound floor(epsilon*n)")->check(CLI::NonNegativeNumber);
  mopt->excludes(eopt);
  pflip->add_option("--window", window_side, "Window side in cells (0: full ensemble)")->check(CLI::NonNegativeNumber);
  pflip->add_flag("--strict", strict, "Exit 1 when a residual is nonzero");
  auto* ctext = pinsert->add_option("--cluster", cluster_text, "Cluster in text form");
  auto* cfile = pinsert->add_option("--cluster-file", cluster_file, "File holding one cluster in text form");
  ctext->excludes(cfile);
  pinsert->add_option("--site", site_text, "Site i,c1,..,cd of the cluster, 1-based i")->required();

  auto* perc = app.add_subcommand("percolation", "Bond percolation cluster-size distribution on Z^d");
  perc->require_subcommand(1);
  int d = 2, cap = 20;
  std::string p_exact;
  double p_mc = 0.5;
  std::uint64_t samples = 1000000, seed = 1;
  bool ratios = false;
  auto* pexact = perc->add_subcommand("exact", "Exact P_p(n) by enumeration");
  auto* pmc = perc->add_subcommand("mc", "Monte Carlo estimate of P_p(n)");
  for (auto* sub : {pexact, pmc}) {
    add_output(sub, c);
    sub->add_option("--d", d, "Dimension")->check(CLI::Range(1, kMaxDim));
  }
  pexact->add_option("--p", p_exact, "Bond probability as p/q")->required();
  pexact->add_option("--n", c.n, "Largest size")->required()->check(CLI::PositiveNumber);
  pexact->add_flag("--ratios", ratios, "Emit n,ratio,root instead of n,value");
  pmc->add_option("--p", p_mc, "Bond probability")->required()->check(CLI::Range(0.0, 1.0));
  pmc->add_option("--samples", samples, "Number of samples")->check(CLI::PositiveNumber);
  pmc->add_option("--cap", cap, "Largest tallied size")->check(CLI::PositiveNumber);
  pmc->add_option("--seed", seed, "Seed");

  auto* analyze = app.add_subcommand("analyze", "Series post-processing");
  analyze->require_subcommand(1);
  std::string in1, in2;
  auto* areport = analyze->add_subcommand("report", "Roots, ratios and free energy");
  auto* adiag = analyze->add_subcommand("diagnostic", "Scaled ratio residual with running maximum");
  auto* acompare = analyze->add_subcommand("compare", "Per-n comparison of two series");
  for (auto* sub : {areport, adiag, acompare}) {
    add_output(sub, c);
    sub->add_option("--in", in1, "Series CSV")->required();
  }
  acompare->add_option("--in2", in2, "Second series CSV")->required();

  auto* self = app.add_subcommand("selftest", "Reduced-size consistency suites");
  std::string fault;
  self->add_option("--inject-fault", fault, "Fault to inject: percolation-forms")->check(CLI::IsMember({"percolation-forms"}));
  self->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << CLUSTERLAB_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail(err, "usage", e.what(), kExitUsage);
  }

  std::string command;
  for (std::size_t i = 1; i < args.size() && args[i].rfind("--", 0) != 0; ++i) command += (command.empty() ? "" : " ") + args[i];

  try {
    if (*enumerate) {
      EnumTask t = make_task(c, err);
      EnumOptions o = enum_options(c);
      Report r(args, command);
      r.task(t, o);
      r.manifest()["method"] = use_oracle ? "oracle" : "search";
      auto t0 = Clock::now();
      std::vector<std::uint64_t> counts(t.n_max + 1, 0);
      if (use_oracle) {
        for (int n = 1; n <= t.n_max; ++n) {
          counts[n] = oracle_enumerate(t, n).size();
          progress(c, err, "enumerate: oracle n=" + std::to_string(n) + " count=" + std::to_string(counts[n]));
        }
      } else {
        counts = count_clusters(t, o);
      }
      std::ostringstream took;
      took << std::fixed << std::setprecision(3) << std::chrono::duration<double>(Clock::now() - t0).count();
      progress(c, err, "enumerate: done in " + took.str() + " s");
      r.body() << "n,count\n";
      for (int n = 1; n <= t.n_max; ++n) r.body() << n << "," << counts[n] << "\n";
      if (!emit_file.empty()) {
        std::ostringstream lines;
        enumerate_clusters(t, t.n_max, [&](const Cluster& g) { lines << to_text(g) << "\n"; }, o);
        write_file_atomic(emit_file, lines.str());
      }
      r.emit(c.out, out);
      return kExitOk;
    }

    if (*partition) {
      EnumTask t = make_task(c, err);
      EnumOptions o = enum_options(c);
      WeightModel w = wa.model();
      Report r(args, command);
      r.task(t, o);
      r.manifest()["weights"] = w.describe();
      auto series = partition_series(t, w, o);
      r.body() << "n,G_n_exact,G_n_float\n";
      for (int n = 1; n <= t.n_max; ++n) {
        const Scalar& v = series[n - 1];
        r.body() << n << "," << (v.is_exact() ? csv_scalar(v) : std::string()) << "," << fmt_double(v.to_double()) << "\n";
      }
      r.emit(c.out, out);
      return kExitOk;
    }

    if (*pcount || *ptail) {
      EnumTask t = make_task(c, err);
      EnumOptions o = enum_options(c);
      WeightModel w = wa.model();
      Pattern p = load_pattern(pattern_file, motif, *t.lattice);
      Report r(args, command);
      r.task(t, o);
      r.manifest()["weights"] = w.describe();
      r.manifest()["pattern"] = json::parse(pattern_to_json(p, t.lattice->dimension()));
      auto hist = pattern_histograms(t, {p}, o);
      auto count_scalar = [&](std::uint64_t k) {
        return w.mode == ArithmeticMode::kExact ? Scalar(mpq_class(std::to_string(k))) : Scalar::from_double(static_cast<double>(k));
      };
      if (*pcount) {
        r.body() << "n,occurrences,count,weighted\n";
        for (int n = n_lo; n <= t.n_max; ++n) {
          std::map<int, std::pair<std::uint64_t, Scalar>> rows;
          for (const auto& [key, k] : hist[n]) {
            auto& row = rows.try_emplace(key.occurrences[0], 0, count_scalar(0)).first->second;
            row.first += k;
            row.second += weight_of(key.stats, w) * count_scalar(k);
          }
          for (const auto& [occ, row] : rows) r.body() << n << "," << occ << "," << row.first << "," << csv_scalar(row.second) << "\n";
        }
      } else {
        if (m_fixed < 0 && epsilon < 0) throw InvalidArgument("tail needs --m or --epsilon");
        r.manifest()["m"] = m_fixed >= 0 ? json(m_fixed) : json(nullptr);
        r.manifest()["epsilon"] = epsilon >= 0 ? json(epsilon) : json(nullptr);
        r.body() << "n,m,tail,total,fraction\n";
        for (int n = n_lo; n <= t.n_max; ++n) {
          int m = m_fixed >= 0 ? m_fixed : static_cast<int>(std::floor(epsilon * n + 1e-12));
          Scalar tail = count_scalar(0), total = count_scalar(0);
          for (const auto& [key, k] : hist[n]) {
            Scalar v = weight_of(key.stats, w) * count_scalar(k);
            total += v;
            if (key.occurrences[0] <= m) tail += v;
          }
          double frac = total.is_zero() ? 0.0 : (tail / total).to_double();
          r.body() << n << "," << m << "," << csv_scalar(tail) << "," << csv_scalar(total) << "," << fmt_double(frac) << "\n";
        }
      }
      r.emit(c.out, out);
      return kExitOk;
    }

    if (*pflip) {
      EnumTask t = make_task(c, err);
      EnumOptions o = enum_options(c);
      WeightModel w = wa.model();
      UVPair uv = builtin_uv(t.lattice, t.cls, w);
      Report r(args, command);
      r.task(t, o);
      r.manifest()["weights"] = w.describe();
      r.manifest()["uv"] = uv.description;
      r.manifest()["theta"] = uv.theta.to_string();
      OccupancyTable table;
      if (window_side > 0) {
        Window win;
        const int d = t.lattice->dimension();
        for (int i = 0; i < d; ++i) {
          win.lo[i] = -(window_side - 1) / 2;
          win.hi[i] = win.lo[i] + window_side - 1;
        }
        table = window_occupancy_table(t, uv, w, win, n_lo, t.n_max);
      } else {
        table = occupancy_table(t, uv, w, n_lo, t.n_max, o);
      }
      r.manifest()["ensemble"] = table.ensemble;
      auto res = verify_flip_identity(table, uv.theta, n_lo, t.n_max);
      int nonzero = 0;
      r.body() << "n,a,b,lhs,rhs,residual\n";
      for (const auto& x : res) {
        if (!x.residual.is_zero()) ++nonzero;
        r.body() << x.n << "," << x.a << "," << x.b << "," << csv_scalar(x.lhs) << "," << csv_scalar(x.rhs) << ","
                 << csv_scalar(x.residual) << "\n";
      }
      r.manifest()["nonzero_residuals"] = nonzero;
      r.emit(c.out, out);
      progress(c, err, "flip-identity: " + std::to_string(res.size()) + " residuals, " + std::to_string(nonzero) + " nonzero");
      return strict && nonzero > 0 ? kExitFailure : kExitOk;
    }

    if (*pinsert) {
      Common cc = c;
      cc.n = 1;
      EnumTask t = make_task(cc, err);
      std::string text = cluster_file.empty() ? cluster_text : read_file(cluster_file);
      while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
      if (text.empty()) throw InvalidArgument("insert needs --cluster or --cluster-file");
      Cluster g = parse_cluster_text(t.lattice, text);
      if (g.cluster_class() != t.cls) g = g.with_class(t.cls);
      if (auto rep = validate(g); !rep) throw InvalidArgument("input cluster is invalid: " + rep.to_string());
      std::string body = site_text;
      if (!body.empty() && body.front() == '(') body.erase(0, 1);
      if (!body.empty() && body.back() == ')') body.pop_back();
      Cluster probe = parse_cluster_text(t.lattice, "site-animal;site(" + body + ")");
      TransformSpec spec = builtin_transform(t.lattice, t.cls);
      InsertResult res = insert_pattern(g, probe.sites().front(), spec);
      Report r(args, command);
      r.lattice(*t.lattice);
      r.manifest()["class"] = std::string(class_name(t.cls));
      r.manifest()["kappa"] = spec.kappa;
      std::string shift;
      for (int i = 0; i < t.lattice->dimension(); ++i) shift += (i ? "," : "") + std::to_string(res.shift[i]);
      r.body() << "shift,(" << shift << ")\n" << to_text(res.cluster) << "\n";
      r.emit(c.out, out);
      return kExitOk;
    }

    if (*pexact) {
      LatticePtr L = hypercubic(d);
      mpq_class p = parse_mpq(p_exact);
      Report r(args, command);
      r.lattice(*L);
      r.manifest()["p"] = mpq_to_string(p);
      PercolationOptions po;
      po.enumeration = enum_options(c);
      r.manifest()["budget"] = po.enumeration.node_budget;
      if (ratios) {
        r.body() << "n,ratio,root\n";
        for (const auto& row : size_ratio_series(L, p, c.n, po)) {
          r.body() << row.n << "," << csv_scalar(row.ratio) << "," << fmt_double(row.root) << "\n";
        }
      } else {
        r.body() << "n,value\n";
        for (const auto& row : exact_size_distribution(L, p, c.n, po)) r.body() << row.n << "," << csv_scalar(row.direct) << "\n";
      }
      r.emit(c.out, out);
      return kExitOk;
    }

    if (*pmc) {
      Report r(args, command);
      r.lattice(*hypercubic(d));
      MCResult mc = mc_size_distribution(d, p_mc, samples, cap, seed, c.threads);
      r.manifest()["p"] = p_mc;
      r.manifest()["samples"] = samples;
      r.manifest()["seeds"] = json::array({seed});
      r.manifest()["cap"] = cap;
      r.manifest()["truncated_mass"] = static_cast<double>(mc.truncated) / static_cast<double>(mc.samples);
      r.body() << "n,value,stderr\n";
      for (const auto& e : mc.estimates) r.body() << e.n << "," << fmt_double(e.p_hat) << "," << fmt_double(e.std_error) << "\n";
      r.emit(c.out, out);
      return kExitOk;
    }

    if (*areport || *adiag || *acompare) {
      SeriesTable s = parse_series_csv(read_file(in1));
      Report r(args, command);
      r.manifest()["lattice"] = s.lattice;
      r.manifest()["class"] = s.cls;
      r.manifest()["measure"] = s.measure;
      r.manifest()["weights"] = s.weights;
      r.manifest()["input"] = in1;
      if (*areport) {
        r.body() << "n,value,root,ratio,ratio_float,free_energy\n";
        auto rows = growth_report(s);
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const auto& g = rows[i];
          r.body() << g.n << "," << csv_scalar(s.rows[i].value) << "," << fmt_double(g.root) << ","
                   << (g.has_ratio ? csv_scalar(g.ratio) : "") << "," << (g.has_ratio ? fmt_double(g.ratio.to_double()) : "")
                   << "," << fmt_double(g.free_energy) << "\n";
        }
      } else if (*adiag) {
        r.body() << "n,R,R_float,running_max\n";
        for (const auto& x : ratio_diagnostic(s)) {
          r.body() << x.n << "," << csv_scalar(x.r) << "," << fmt_double(x.r.to_double()) << "," << fmt_double(x.running_max) << "\n";
        }
      } else {
        SeriesTable s2 = parse_series_csv(read_file(in2));
        r.manifest()["input2"] = in2;
        r.body() << "n,a,b,strict_less,ratio,ratio_float\n";
        for (const auto& x : compare_classes(s, s2)) {
          r.body() << x.n << "," << csv_scalar(x.a) << "," << csv_scalar(x.b) << "," << (x.strict_less ? "true" : "false") << ","
                   << csv_scalar(x.ratio) << "," << fmt_double(x.ratio.to_double()) << "\n";
        }
      }
      r.emit(c.out, out);
      return kExitOk;
    }

    if (*self) {
      SelftestOptions so;
      so.inject_percolation_fault = fault == "percolation-forms";
      so.threads = c.threads;
      int failed = selftest(so, out);
      return failed == 0 ? kExitOk : kExitFailure;
    }
  } catch (const InvalidArgument& e) {
    return fail(err, "invalid-argument", e.what(), kExitUsage);
  } catch (const clusterlab::ParseError& e) {
    return fail(err, "parse", e.what(), kExitUsage);
  } catch (const ResourceLimitError& e) {
    return fail(err, "budget", std::string(e.what()) + " (partial=" + std::to_string(e.partial()) + ")", kExitBudget);
  } catch (const AxiomViolation& e) {
    return fail(err, "axiom-violation", e.what(), kExitFailure);
  } catch (const InternalMismatch& e) {
    return fail(err, "internal-mismatch", e.what(), kExitFailure);
  } catch (const std::exception& e) {
    return fail(err, "runtime", e.what(), kExitFailure);
  }
  return fail(err, "usage", "no subcommand", kExitUsage);
}

}  // namespace clusterlab::cli
